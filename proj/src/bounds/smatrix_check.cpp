#include "qtk/bounds/smatrix_check.hpp"

#include <cmath>

namespace qtk::bounds {

namespace {

std::vector<double> build_grid(double lo, double hi, int n, const SpectralData& spectral) {
  std::vector<double> ks;
  ks.reserve(n + 8 * spectral.resonances.size());
  for (int i = 0; i <= n; ++i) ks.push_back(lo + (hi - lo) * i / n);
  // resonance peaks are only beta-wide; a uniform grid would sail past them
  for (const auto& [al, be] : spectral.resonances) {
    for (double off : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
      const double k = al + off * be;
      if (k > lo && k < hi) ks.push_back(k);
    }
  }
  std::sort(ks.begin(), ks.end());
  return ks;
}

SMatrixCheckReport run_check(const StepPotential& pot, const std::vector<double>& ks,
                             const double bounds[3]) {
  SMatrixCheckReport rep;
  double mx[3] = {0, 0, 0};
  double arg[3] = {0, 0, 0};
  for (double k : ks) {
    if (k <= 0) continue;
    const auto S = jost::s_matrix_derivs(pot, std::complex<double>(k, 0.0));
    for (int n = 1; n <= 3; ++n) {
      const double v = std::abs(S[n]);
      if (v > mx[n - 1]) {
        mx[n - 1] = v;
        arg[n - 1] = k;
      }
    }
  }
  for (int n = 1; n <= 3; ++n) {
    SMatrixCheckRow row{n, mx[n - 1], bounds[n - 1], mx[n - 1] <= bounds[n - 1], arg[n - 1]};
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace

SMatrixCheckReport smatrix_bound_check_k(const StepPotential& pot, const StructuralConstants& sc,
                                         const SBoundConstants& cs, const SpectralData& spectral,
                                         int grid_n) {
  const auto ks = build_grid(1e-9, sc.K * (1.0 - 1e-12), grid_n, spectral);
  const double b[3] = {cs.c1k / sc.s_K, cs.c2k / (sc.s_K * sc.s_K),
                       cs.c3k / std::pow(sc.s_K, 3)};
  return run_check(pot, ks, b);
}

SMatrixCheckReport smatrix_bound_check_global(const StepPotential& pot,
                                              const StructuralConstants& sc,
                                              const SBoundConstants& cs,
                                              const SpectralData& spectral, double k_max,
                                              int grid_n) {
  const auto ks = build_grid(1e-9, k_max, grid_n, spectral);
  const double b[3] = {cs.c1 / sc.s, cs.c2 / (sc.s * sc.s), cs.c3 / std::pow(sc.s, 3)};
  return run_check(pot, ks, b);
}

}  // namespace qtk::bounds
