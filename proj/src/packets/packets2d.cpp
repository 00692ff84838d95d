#include "qtk/packets/packets2d.hpp"

#include <cmath>

#include "qtk/numerics/quadrature.hpp"

namespace qtk::packets {

namespace {
inline std::pair<double, double> rotate(double x, double z, double th) {
  const double c = std::cos(th), s = std::sin(th);
  return {c * x - s * z, c * z + s * x};
}
}  // namespace

cplx Packet2D::amplitude(double x, double z, double t) const {
  const auto [xp, zp] = rotate(x, z, rotation);
  const double tt = t - start_time;
  return transverse.amplitude(xp - x_offset, tt) * longitudinal.amplitude(zp - z_offset, tt);
}

std::pair<cplx, cplx> Packet2D::gradient(double x, double z, double t) const {
  const auto [xp, zp] = rotate(x, z, rotation);
  const double tt = t - start_time;
  const double xa = xp - x_offset, za = zp - z_offset;
  const cplx gt = transverse.amplitude(xa, tt);
  const cplx gl = longitudinal.amplitude(za, tt);
  const cplx dgt = transverse.damplitude_dx(xa, tt);
  const cplx dgl = longitudinal.damplitude_dx(za, tt);
  const double c = std::cos(rotation), s = std::sin(rotation);
  // d/dx = c d/dx' + s d/dz',  d/dz = -s d/dx' + c d/dz'
  return {c * dgt * gl + s * gt * dgl, -s * dgt * gl + c * gt * dgl};
}

cplx Packet2D::momentum_amplitude(double kx, double kz, double t) const {
  // Psi(r) = f(R(th) r - o)  =>  Psi~(k) = e^{-i (Rk).o} f~(Rk)
  const auto [kxp, kzp] = rotate(kx, kz, rotation);
  const double tt = t - start_time;
  const cplx offset_phase = std::exp(cplx(0.0, -(kxp * x_offset + kzp * z_offset)));
  return offset_phase * transverse.momentum_amplitude(kxp, tt) *
         longitudinal.momentum_amplitude(kzp, tt);
}

/// Lab-frame center of the packet at lab time t.
static std::pair<double, double> lab_center(const Packet2D& p, double t) {
  const double tt = t - p.start_time;
  const double ux = p.x_offset + p.transverse.x0 + p.transverse.v * tt;
  const double uz = p.z_offset + p.longitudinal.x0 + p.longitudinal.v * tt;
  // r = R^T u for u in the rotated frame
  const double c = std::cos(p.rotation), s = std::sin(p.rotation);
  return {c * ux + s * uz, c * uz - s * ux};
}

cplx Packet2DSum::amplitude(double x, double z, double t) const {
  cplx a = 0.0;
  for (const auto& [c, p] : terms) a += c * p.amplitude(x, z, t);
  return a;
}

cplx Packet2DSum::momentum_amplitude(double kx, double kz, double t) const {
  cplx a = 0.0;
  for (const auto& [c, p] : terms) a += c * p.momentum_amplitude(kx, kz, t);
  return a;
}

double Packet2DSum::density(double x, double z, double t) const {
  return std::norm(amplitude(x, z, t));
}

double Packet2DSum::mass() const { return terms.front().second.longitudinal.mass; }

std::pair<double, double> Packet2DSum::current(double x, double z, double t) const {
  cplx psi = 0.0, dx = 0.0, dz = 0.0;
  for (const auto& [c, p] : terms) {
    psi += c * p.amplitude(x, z, t);
    const auto [gx, gz] = p.gradient(x, z, t);
    dx += c * gx;
    dz += c * gz;
  }
  const double m = mass();
  return {std::imag(std::conj(psi) * dx) / m, std::imag(std::conj(psi) * dz) / m};
}

cplx Packet2DSum::partial_fourier_z(double x, double kz, double t) const {
  double lo = 1e300, hi = -1e300;
  for (const auto& [c, p] : terms) {
    const double tt = t - p.start_time;
    const double zc = lab_center(p, t).second;
    const double spread = p.longitudinal.sigma_at(tt) + p.transverse.sigma_at(tt);
    const double w = 12.0 * spread / std::max(0.2, std::abs(std::cos(p.rotation)));
    lo = std::min(lo, zc - w);
    hi = std::max(hi, zc + w);
  }
  const double inv_sqrt_2pi = 0.3989422804014327;
  auto res = numerics::integrate_c(
      [&](double z) { return amplitude(x, z, t) * std::exp(cplx(0.0, -kz * z)); }, lo, hi,
      {1e-9, 4000});
  return res.value * inv_sqrt_2pi;
}

cplx SpinorState::channel_amplitude(int s, double z, double t) const {
  const WavePacketSum& ch = (s > 0) ? up : down;
  const cplx phase = std::exp(cplx(0.0, -static_cast<double>(s) * field * t));
  return phase * ch.amplitude(z, t);
}

cplx SpinorState::xplus_amplitude(double z, double t) const {
  return (channel_amplitude(+1, z, t) + channel_amplitude(-1, z, t)) / std::sqrt(2.0);
}

cplx SpinorState::xplus_damplitude_dz(double z, double t) const {
  const cplx pu = std::exp(cplx(0.0, -field * t)) * up.damplitude_dx(z, t);
  const cplx pd = std::exp(cplx(0.0, +field * t)) * down.damplitude_dx(z, t);
  return (pu + pd) / std::sqrt(2.0);
}

double SpinorState::xplus_current(double z, double t) const {
  const cplx psi = xplus_amplitude(z, t);
  const cplx dpsi = xplus_damplitude_dz(z, t);
  return std::imag(std::conj(psi) * dpsi) / up.mass();
}

}  // namespace qtk::packets
