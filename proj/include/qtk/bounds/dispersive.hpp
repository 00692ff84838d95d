#pragma once

#include <array>

#include "qtk/bounds/constants.hpp"
#include "qtk/numerics/log_magnitude.hpp"

namespace qtk::bounds {

using numerics::LogMag;

/// Norm bounds of the truncated Gamow state f_R = 1_R f(k0,.) and its first
/// two momentum-space derivatives, for K < alpha/2.
struct GamowNormBounds {
  double inf0, inf1, inf2;  // ||1_K fhat^(n)||_inf
  double w0, w1, w2;        // ||fhat^(n) w||_1
  double f0_abs;            // |fhat_R(0)| (meaningful when lambda = 1)
};
GamowNormBounds gamow_norm_bounds(double alpha, double beta, double R, double K,
                                  const SBoundConstants& cs, double s, double s_K);

struct PsiHatNorms {
  double psi0_abs = 0.0;    // |psihat(0)|, used by the lambda terms
  double inf0 = 0.0, inf1 = 0.0, inf2 = 0.0;
  double w0 = 0.0, w1 = 0.0, w2 = 0.0;
};

struct DispersiveConstants {
  std::array<LogMag, 4> c_ac_simplified{};  // c1..c4 (valid if simplified_ok)
  bool simplified_ok = false;
  std::array<LogMag, 4> c_ac_pure{};
  std::array<LogMag, 4> c_e{};
  int lambda = 0;
};

/// Dispersive-decay constants. Pure form always; the simplified form
/// additionally requires s, s_K, K <= 1. K > s is a hard precondition.
DispersiveConstants dispersive_constants(const PsiHatNorms& norms,
                                         const StructuralConstants& sc, const ZTables& z,
                                         double K, int lambda, double eta0 = 0.0,
                                         int n_bound = 0);

/// lambda (c1/t + c2/t^2) + c3/t^3 + c4/t^4 in the log domain.
LogMag bound_curve(const std::array<LogMag, 4>& c, int lambda, double t);

struct Crossover {
  double t_scale;    // (4 alpha beta)^{-4/3}
  double t_useful;   // bound / norm2 < 1 beyond this time (bisection in log t)
};
Crossover crossover_time(const std::array<LogMag, 4>& c, int lambda, double gamma,
                         const LogMag& norm2);

}  // namespace qtk::bounds
