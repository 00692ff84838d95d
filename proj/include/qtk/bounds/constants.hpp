#pragma once

#include <optional>

#include "qtk/jost/scattering.hpp"

namespace qtk::bounds {

using jost::SpectralData;
using jost::StepPotential;

enum class StripeMode {
  enumerate,   // nu_Kt from the enumerated resonances (stripe must be covered)
  bound_mode,  // nu_Kt <= n(2^{3/2} Kt) after re-certifying the stripe tail
};

struct StructuralConstants {
  double K = 0.0;
  int nu_K = 0;
  double s_K = 1.0;
  double K_tilde = 0.0;        // 6 ||V||_1
  double nu_K_tilde = 0.0;     // exact count or certified upper bound
  bool nu_tilde_is_bound = false;
  double inv_s = 0.0;          // 1/s (upper bound in bound mode)
  double s = 0.0;
  double inv_eta = 0.0;
  double inv_kappa = 0.0;
  double q = 0.0;              // 1/(2||V||_1) + 6 R_V
  double alpha = 0.0;          // min alpha_n (over the enumerated prefix)
  double beta0 = 0.0;          // min beta_n  (assumption checked on the prefix)
  bool beta0_min_on_prefix = false;
  double r0 = 0.0;
  double R_V = 0.0;
};

/// Spectral + derivative-route constants; in bound mode the stripe tail is
/// re-certified by argument-principle counts before the zero-count bound is
/// used for nu_{K~}.
StructuralConstants structural(const SpectralData& spectral, const StepPotential& pot, double K,
                               StripeMode mode = StripeMode::bound_mode);

struct SBoundConstants {
  double c1k, c2k, c3k;  // C_{n,K}
  double c1, c2, c3;     // global C_n
};
SBoundConstants smatrix_constants(const StructuralConstants& sc);

struct ZTables {
  // z_ac_K(n,m): rows n = 0..2, m = 0..n+1
  double ac_k[3][4] = {};
  double ac[3][4] = {};
  double ac_k_sum[3] = {};
  double ac_sum[3] = {};
  double e_k[3] = {};
  double e[3] = {};
  double R = 0.0;
};
/// Requires R >= R_V; eta0 enters the z_e rows (0 allowed when no bound states).
ZTables z_tables(const StructuralConstants& sc, const SBoundConstants& cs, double R,
                 double eta0 = 0.0);

}  // namespace qtk::bounds
