#pragma once

#include <complex>
#include <optional>

#include "qtk/jost/spectral.hpp"

namespace qtk::jost {

/// n(radius) <= (1/log 2) [4 R_V radius + log(4||rV||_1 e^{4||rV||_1} + 1)],
/// log term evaluated in the log domain.
double zero_count_bound(const StepPotential& pot, double radius);

struct ScatteringQuantities {
  double a;   // scattering length, dS/dk(0) / (2 i S(0))
  double r0;  // (5/2)(R_V + sum 1/eta - sum 1/kappa - Im F'(0)/F(0))
};

/// Derivative-route scattering length and r0. Bound/virtual corrections come
/// from `spectral` when present; a zero resonance is rejected.
ScatteringQuantities scattering_quantities(const StepPotential& pot,
                                           const SpectralData* spectral = nullptr);

/// Partial sum sum_{n<N} 5 beta_n / |k_n|^2; approaches r0 from below.
double r0_partial_sum(const SpectralData& spectral, std::size_t N);

struct LogDerivSplit {
  std::complex<double> direct;    // d^q/dk^q (F'/F); for q = 0 only Im is set
  std::complex<double> hadamard;  // spectral-sum route truncated at N resonances
  double tail_bound;              // rigorous bound on the truncation error
};

/// Order q in {0,1,2}: q = 0 compares Im F'/F with the Hadamard expansion;
/// q >= 1 compares the full complex derivative of F'/F.
LogDerivSplit log_deriv_im(const StepPotential& pot, const SpectralData& spectral, double k,
                           int order, std::size_t N);

/// gamma_hat = (sqrt(E)/R_N) exp(-2 sum_i sqrt(V_i - E) len_i) over the
/// classically forbidden band {V > E}.
double gamow_rate_estimate(const StepPotential& pot, double E, double R_N);

/// Large-V0 resonance location of the 1D table potential V0 1_{[-a,a]}.
std::complex<double> table_resonance_1d(int n, double v0, double a);

/// Residual of the 1D table resonance condition
/// exp(i 4 a sqrt(k^2-V0)) = ((k + sqrt(k^2-V0))/(k - sqrt(k^2-V0)))^2.
std::complex<double> table_resonance_residual_1d(double v0, double a, std::complex<double> k);

/// Residual of the 3D ball condition
/// exp(i 2 a sqrt(k^2-V0)) = (k + sqrt(k^2-V0))/(k - sqrt(k^2-V0)).
std::complex<double> ball_resonance_residual(double v0, double a, std::complex<double> k);

struct StripeTailCheck {
  long count_band1 = -1;       // zeros in [0,2Kt] x [-2 rho, -2 Kt]
  long count_band2 = -1;       // zeros in [0,2Kt] x [-4 rho, -2 rho]
  double min_log10_f_bottom;   // min of log10|F| along the deepest edge
  bool ok = false;
};

/// Re-certifies that the part of the stripe Re <= 2 Kt, Im <= 0 outside the
/// ball of radius 2^{3/2} Kt holds no zeros, by argument-principle counts on
/// covering rectangles (so nu_{Kt} <= n(2^{3/2} Kt) may be used).
StripeTailCheck verify_stripe_tail(const StepPotential& pot, double k_tilde);

}  // namespace qtk::jost
