#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace qtk::packets {

using cplx = std::complex<double>;

/// Freely evolving Gaussian, hbar = 1. Stored unnormalized conventions:
/// the single packet itself is L2-normalized; superpositions carry whatever
/// coefficients the caller supplies and are not renormalized.
struct FreeGaussian1D {
  double x0 = 0.0;      // initial mean position
  double v = 0.0;       // mean velocity
  double sigma0 = 1.0;  // initial position std-dev
  double mass = 1.0;

  FreeGaussian1D() = default;
  FreeGaussian1D(double x0_, double v_, double sigma0_, double mass_ = 1.0)
      : x0(x0_), v(v_), sigma0(sigma0_), mass(mass_) {
    if (sigma0 <= 0 || mass <= 0) throw std::invalid_argument("FreeGaussian1D: sigma0, mass > 0");
  }

  /// Complex width A_t = sigma0 (1 + i t / (2 m sigma0^2)).
  cplx width_at(double t) const { return sigma0 * cplx(1.0, t / (2.0 * mass * sigma0 * sigma0)); }
  /// |psi(.,t)| position std-dev.
  double sigma_at(double t) const { return std::abs(width_at(t)); }

  cplx amplitude(double x, double t) const;
  cplx damplitude_dx(double x, double t) const;
  /// Unitary-convention momentum amplitude at time t (free phase included).
  cplx momentum_amplitude(double k, double t = 0.0) const;
};

struct WavePacketSum {
  std::vector<std::pair<cplx, FreeGaussian1D>> terms;

  WavePacketSum() = default;
  WavePacketSum(std::initializer_list<std::pair<cplx, FreeGaussian1D>> t);
  static WavePacketSum single(const FreeGaussian1D& g) { return WavePacketSum{{cplx(1.0), g}}; }

  double mass() const;
  void validate() const;  // at least one term, shared mass

  cplx amplitude(double x, double t) const;
  cplx damplitude_dx(double x, double t) const;
  cplx momentum_amplitude(double k, double t = 0.0) const;

  /// |amplitude|^2
  double density(double x, double t) const;
  /// j = (1/m) Im[psi* dpsi/dx], analytic derivative.
  double current(double x, double t) const;

  /// Sum_i |c_i|^2 + cross terms: exact L2 norm^2 via analytic overlaps.
  double norm_squared() const;

  /// Upper-bound scale of the density at time t (used for node thresholds).
  double density_scale(double t) const;

  /// [min, max] window covering all packet centers +- n_sigmas at time t.
  std::pair<double, double> support_window(double t, double n_sigmas = 8.0) const;

  WavePacketSum translated(double dx) const;  // x0 -> x0 + dx for every term
};

/// |d/dt |psi|^2 + d/dx j| estimated with central differences of spacing h.
double continuity_residual(const WavePacketSum& s, double x, double t, double h);

}  // namespace qtk::packets
