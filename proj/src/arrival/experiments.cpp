#include "qtk/arrival/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "qtk/numerics/quadrature.hpp"

namespace qtk::arrival {

using packets::cplx;
using packets::FreeGaussian1D;
using packets::Packet2D;
using packets::Packet2DSum;

packets::Packet2DSum DoubleSlitSetup::state() const {
  Packet2D arm1;
  arm1.longitudinal = FreeGaussian1D(0.0, v, sigma_l, mass);
  arm1.transverse = FreeGaussian1D(0.0, 0.0, sigma_t, mass);
  arm1.rotation = 0.0;
  arm1.x_offset = d;
  arm1.z_offset = 0.0;
  arm1.start_time = delta / v;

  Packet2D arm2;
  arm2.longitudinal = FreeGaussian1D(0.0, v, sigma_l, mass);
  arm2.transverse = FreeGaussian1D(0.0, 0.0, sigma_t, mass);
  arm2.rotation = theta;
  arm2.start_time = 0.0;

  Packet2DSum s;
  s.terms.push_back({cplx(1.0), arm1});
  s.terms.push_back({std::exp(cplx(0.0, phase)), arm2});
  return s;
}

double double_slit_flux(const packets::Packet2DSum& s, double L, double t) {
  double lo = 1e300, hi = -1e300;
  for (const auto& [c, p] : s.terms) {
    const double tt = t - p.start_time;
    const double w = 8.0 * (p.transverse.sigma_at(tt) + p.longitudinal.sigma_at(tt));
    // crude lab-frame x center of the arm at the screen
    const double xc = p.x_offset * std::cos(p.rotation) -
                      std::sin(p.rotation) * (p.z_offset + p.longitudinal.v * tt);
    lo = std::min(lo, xc - w);
    hi = std::max(hi, xc + w);
  }
  auto res = numerics::integrate(
      [&](double x) { return s.current(x, L, t).second; }, lo, hi, {1e-9, 4000});
  return res.value;
}

double double_slit_joint_far(const packets::Packet2DSum& s, double L, double x, double t) {
  if (t <= 0) throw std::domain_error("double_slit_joint_far: t > 0 required");
  const double m = s.mass();
  const double kx = m * x / t, kz = m * L / t;
  const double jac = (m * L / (t * t)) * (m / t);
  return std::norm(s.momentum_amplitude(kx, kz, 0.0)) * jac;
}

double double_slit_joint_mixed(const packets::Packet2DSum& s, double L, double x, double t) {
  if (t <= 0) throw std::domain_error("double_slit_joint_mixed: t > 0 required");
  const double m = s.mass();
  const double kz = m * L / t;
  return std::norm(s.partial_fourier_z(x, kz, t)) * (m * L / (t * t));
}

PauliArrival pauli_arrival(const packets::SpinorState& state, double L, double t) {
  if (t <= 0) throw std::domain_error("pauli_arrival: t > 0 required");
  PauliArrival out{};
  const double m = state.up.mass();
  const double k = m * L / t;
  const double dens_up = std::norm(state.up.momentum_amplitude(k, 0.0));
  const double dens_dn = std::norm(state.down.momentum_amplitude(k, 0.0));
  out.semiclassical = m * L / (2.0 * t * t) * (dens_up + dens_dn);
  out.flux = state.xplus_current(L, t);

  // warn when the channel k-supports overlap within 3 sigma
  out.separation_warning = false;
  for (const auto& [cu, gu] : state.up.terms)
    for (const auto& [cd, gd] : state.down.terms) {
      const double pu = gu.mass * gu.v, pd = gd.mass * gd.v;
      const double w = 3.0 * (0.5 / gu.sigma0 + 0.5 / gd.sigma0);
      if (std::abs(pu - pd) < w) out.separation_warning = true;
    }
  return out;
}

}  // namespace qtk::arrival
