#pragma once

#include <complex>

#include "qtk/bounds/dispersive.hpp"
#include "qtk/jost/spectral.hpp"

namespace qtk::decay {

using jost::SpectralData;
using jost::StepPotential;

/// Gamow-state alpha-decay configuration; units hbar = 1, m = 1/2.
struct DecayModel {
  StepPotential pot;
  double alpha, beta;  // k0 = alpha - i beta, certified zero of F
  double R;            // cutoff radius >= R_V
  double sigma;        // Gaussian tail width
  SpectralData spectral;

  double gamma() const { return 4.0 * alpha * beta; }

  /// Finds the first resonance, certifies it, and validates the
  /// no-bound/no-virtual/no-zero-resonance assumptions.
  static DecayModel build(const StepPotential& pot, double R, double sigma,
                          double resonance_re_max = 0.0,
                          const numerics::PrecisionPolicy& policy = {});
};

/// E_{beta,sigma} = sqrt(pi) e^{beta^2 sigma^2} (1 + erf(beta sigma)).
double e_factor(double beta, double sigma);

struct Norms {
  double f_r;   // ||f_R||^2 = e^{2 beta R}/(2 beta)
  double g_r;   // ||g_R||^2 = (sigma/2) e^{2 beta R} E_{beta,sigma}
  double psi;   // ||psi||^2 = ||f_R||^2 (1 + beta sigma E)
};
Norms norms(const DecayModel& m);

/// Closed-form Var E of the Gaussian-tailed Gamow state.
double var_energy(const DecayModel& m);
double var_energy_formula(double alpha, double beta, double sigma);

struct Time0Stats {
  double mean;  // 1/gamma
  double var;   // 1/gamma^2
};
Time0Stats time0_stats(const DecayModel& m);

/// Skibsted's propagation-error factor K(alpha, beta, t).
double skibsted_error(double alpha, double beta, double t);

/// Generalized Fourier transform of psi = f_R + g_R at real k >= 0.
/// bits = 0 selects double except near the resonance peak, where the
/// S-matrix needs extended precision.
std::complex<double> psi_hat(const DecayModel& m, double k, int bits = 0);

/// Closed-form ghat_R alone (Gaussian tail against the generalized
/// eigenfunctions; used by tests as well).
std::complex<double> g_hat(const DecayModel& m, double k, int bits = 0);

}  // namespace qtk::decay
