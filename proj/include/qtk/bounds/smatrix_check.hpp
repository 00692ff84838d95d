#pragma once

#include "qtk/bounds/constants.hpp"

namespace qtk::bounds {

struct SMatrixCheckRow {
  int order;        // derivative order 1..3
  double grid_max;  // max |S^{(n)}(k)| over the grid
  double bound;     // C_{n,K}/s_K^n (or C_n/s^n for the global rows)
  bool pass;
  double arg_max;   // k at which the max was attained
};

struct SMatrixCheckReport {
  std::vector<SMatrixCheckRow> rows;
  bool pass = true;
};

/// max over a k-grid of |S^{(n)}(k)| against C_{n,K}/s_K^n on [0, K); the grid
/// is augmented with the known resonance peaks inside the range.
SMatrixCheckReport smatrix_bound_check_k(const StepPotential& pot,
                                         const StructuralConstants& sc,
                                         const SBoundConstants& cs,
                                         const SpectralData& spectral, int grid_n = 400);

/// Global variant on [0, k_max] against C_n/s^n.
SMatrixCheckReport smatrix_bound_check_global(const StepPotential& pot,
                                              const StructuralConstants& sc,
                                              const SBoundConstants& cs,
                                              const SpectralData& spectral, double k_max,
                                              int grid_n = 400);

}  // namespace qtk::bounds
