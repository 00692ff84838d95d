#include "qtk/packets/packets.hpp"

#include <cmath>

namespace qtk::packets {

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kQuarterRoot2Pi = std::pow(2.0 * kPi, -0.25);
}  // namespace

cplx FreeGaussian1D::amplitude(double x, double t) const {
  const cplx At = width_at(t);
  const double y = x - x0;
  const double yc = y - v * t;
  // exp[i m v (2y - v t)/2] * (2pi)^{-1/4} A_t^{-1/2} exp[-yc^2/(4 sigma0 A_t)]
  const cplx phase(0.0, 0.5 * mass * v * (2.0 * y - v * t));
  const cplx arg = -yc * yc / (4.0 * sigma0 * At) + phase;
  return kQuarterRoot2Pi / std::sqrt(At) * std::exp(arg);
}

cplx FreeGaussian1D::damplitude_dx(double x, double t) const {
  const cplx At = width_at(t);
  const double yc = x - x0 - v * t;
  const cplx logslope = cplx(0.0, mass * v) - yc / (2.0 * sigma0 * At);
  return amplitude(x, t) * logslope;
}

cplx FreeGaussian1D::momentum_amplitude(double k, double t) const {
  // (2/pi)^{1/4} sqrt(sigma0) exp[-sigma0^2 (k - m v)^2] e^{-i k x0} e^{-i k^2 t/(2m)}
  const double kc = k - mass * v;
  const double mag = std::pow(2.0 / kPi, 0.25) * std::sqrt(sigma0) *
                     std::exp(-sigma0 * sigma0 * kc * kc);
  const double ph = -k * x0 - k * k * t / (2.0 * mass);
  return mag * std::exp(cplx(0.0, ph));
}

WavePacketSum::WavePacketSum(std::initializer_list<std::pair<cplx, FreeGaussian1D>> t)
    : terms(t) {
  validate();
}

void WavePacketSum::validate() const {
  if (terms.empty()) throw std::invalid_argument("WavePacketSum: needs at least one term");
  const double m = terms.front().second.mass;
  for (const auto& [c, g] : terms)
    if (g.mass != m) throw std::invalid_argument("WavePacketSum: terms must share mass");
}

double WavePacketSum::mass() const { return terms.front().second.mass; }

cplx WavePacketSum::amplitude(double x, double t) const {
  cplx a = 0.0;
  for (const auto& [c, g] : terms) a += c * g.amplitude(x, t);
  return a;
}

cplx WavePacketSum::damplitude_dx(double x, double t) const {
  cplx a = 0.0;
  for (const auto& [c, g] : terms) a += c * g.damplitude_dx(x, t);
  return a;
}

cplx WavePacketSum::momentum_amplitude(double k, double t) const {
  cplx a = 0.0;
  for (const auto& [c, g] : terms) a += c * g.momentum_amplitude(k, t);
  return a;
}

double WavePacketSum::density(double x, double t) const { return std::norm(amplitude(x, t)); }

double WavePacketSum::current(double x, double t) const {
  const cplx psi = amplitude(x, t);
  const cplx dpsi = damplitude_dx(x, t);
  return std::imag(std::conj(psi) * dpsi) / mass();
}

double WavePacketSum::norm_squared() const {
  // <g_i|g_j> at t=0 in momentum space: Gaussian overlap integral, exact.
  // g~_i(k) = (2/pi)^{1/4} sqrt(s_i) exp[-s_i^2(k-p_i)^2] e^{-i k x_i}
  cplx total = 0.0;
  for (const auto& [ci, gi] : terms) {
    for (const auto& [cj, gj] : terms) {
      const double si = gi.sigma0, sj = gj.sigma0;
      const double pi_ = gi.mass * gi.v, pj = gj.mass * gj.v;
      const double a = si * si + sj * sj;
      const cplx b = 2.0 * (si * si * pi_ + sj * sj * pj) + cplx(0.0, gi.x0 - gj.x0);
      const cplx c =
          -si * si * pi_ * pi_ - sj * sj * pj * pj + b * b / (4.0 * a);
      const double pref = std::sqrt(2.0 / kPi) * std::sqrt(si * sj);
      total += std::conj(ci) * cj * pref * std::sqrt(kPi / a) * std::exp(c);
    }
  }
  return total.real();
}

double WavePacketSum::density_scale(double t) const {
  double s = 0.0;
  for (const auto& [c, g] : terms)
    s += std::norm(c) / (std::sqrt(2.0 * kPi) * g.sigma_at(t));
  return s;
}

std::pair<double, double> WavePacketSum::support_window(double t, double n_sigmas) const {
  double lo = 1e300, hi = -1e300;
  for (const auto& [c, g] : terms) {
    const double ctr = g.x0 + g.v * t;
    const double w = n_sigmas * g.sigma_at(t);
    lo = std::min(lo, ctr - w);
    hi = std::max(hi, ctr + w);
  }
  return {lo, hi};
}

WavePacketSum WavePacketSum::translated(double dx) const {
  WavePacketSum out = *this;
  for (auto& [c, g] : out.terms) g.x0 += dx;
  return out;
}

double continuity_residual(const WavePacketSum& s, double x, double t, double h) {
  if (h <= 0) throw std::invalid_argument("continuity_residual: h > 0");
  const double drho_dt = (s.density(x, t + h) - s.density(x, t - h)) / (2.0 * h);
  const double dj_dx = (s.current(x + h, t) - s.current(x - h, t)) / (2.0 * h);
  return std::abs(drho_dt + dj_dx);
}

}  // namespace qtk::packets
