#pragma once

#include <string>
#include <vector>

#include "qtk/jost/jost.hpp"
#include "qtk/numerics/zeros.hpp"

namespace qtk::jost {

using numerics::PrecisionPolicy;
using numerics::Rect;

/// Classified zeros of the Jost function. Mirror partners -conj(k_n) are
/// implied, not stored; resonances are sorted by modulus.
struct SpectralData {
  std::vector<double> bound;              // eta_m > 0 (zeros at i eta)
  std::vector<double> virtual_states;     // kappa_l > 0 (zeros at -i kappa)
  std::vector<std::pair<double, double>> resonances;  // (alpha_n, beta_n), both > 0
  int lambda = 0;                         // zero-resonance flag
  Rect search_region{};
  long certified_count = 0;               // argument-principle count over search_region
  bool counts_match = false;

  std::string to_json() const;
  static SpectralData from_json(const std::string& json_text);
};

struct SpectralSearchOptions {
  PrecisionPolicy policy{};
  double bound_scan_max = 0.0;    // 0: derived from the potential depth
  double virtual_scan_max = 0.0;  // 0: derived
  double axis_margin = 1e-6;      // rectangle edges stay this far off the axes
  int scan_points = 2000;
  double f0_threshold = 1e-8;     // |F(0)| below this * scale => lambda = 1
};

/// Bound/virtual states by 1D scans on the imaginary axis, resonances by
/// argument-principle subdivision + Newton refinement inside `region`
/// (Re in [max(0,re_lo), re_hi], Im in [im_lo, 0]).
SpectralData find_spectral_data(const StepPotential& pot, Rect region,
                                const SpectralSearchOptions& opt = {});

/// Default resonance stripe [0, 2K] x [-sqrt(||V||_1), 0].
Rect default_search_region(const StepPotential& pot, double K);

/// Refine a single resonance of `pot` near z0 at escalating precision.
numerics::RefinedZero refine_resonance(const StepPotential& pot, std::complex<double> z0,
                                       const PrecisionPolicy& policy = {});

}  // namespace qtk::jost
