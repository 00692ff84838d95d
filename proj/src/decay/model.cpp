#include "qtk/decay/model.hpp"

#include <cmath>

namespace qtk::decay {

namespace {
using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

DecayModel DecayModel::build(const StepPotential& pot, double R, double sigma,
                             double resonance_re_max, const numerics::PrecisionPolicy& policy) {
  if (R < pot.r_v()) throw std::invalid_argument("DecayModel: R >= R_V required");
  if (sigma <= 0) throw std::invalid_argument("DecayModel: sigma > 0 required");
  const double re_max =
      resonance_re_max > 0 ? resonance_re_max : 1.2 * std::sqrt(pot.max_abs()) + 5.0;
  jost::SpectralSearchOptions opt;
  opt.policy = policy;
  SpectralData sd =
      jost::find_spectral_data(pot, numerics::Rect{0.0, re_max, -3.0, 0.0}, opt);
  if (!sd.bound.empty() || !sd.virtual_states.empty() || sd.lambda != 0)
    throw std::invalid_argument(
        "DecayModel: potential must have no bound states, virtual states, or zero resonance");
  if (sd.resonances.empty()) throw std::invalid_argument("DecayModel: no resonance found");
  DecayModel m{pot, sd.resonances.front().first, sd.resonances.front().second, R, sigma, sd};
  return m;
}

double e_factor(double beta, double sigma) {
  if (beta <= 0 || sigma <= 0) throw std::invalid_argument("e_factor: beta, sigma > 0");
  const double bs = beta * sigma;
  if (bs * bs > 700.0)
    throw std::overflow_error("e_factor: overflow; use the log-domain budget path");
  return std::sqrt(kPi) * std::exp(bs * bs) * (1.0 + std::erf(bs));
}

Norms norms(const DecayModel& m) {
  Norms n{};
  const double e2br = std::exp(2.0 * m.beta * m.R);
  const double E = e_factor(m.beta, m.sigma);
  n.f_r = e2br / (2.0 * m.beta);
  n.g_r = 0.5 * m.sigma * e2br * E;
  n.psi = n.f_r * (1.0 + m.beta * m.sigma * E);
  return n;
}

double var_energy_formula(double alpha, double beta, double sigma) {
  const double E = e_factor(beta, sigma);
  const double num = 2.0 * alpha * alpha * beta * beta * E * E +
                     beta * beta / (2.0 * sigma * sigma) * (1.0 + E * E) +
                     beta / (2.0 * sigma) *
                         (beta * beta + 4.0 * alpha * alpha + 1.5 / (sigma * sigma)) * E;
  const double den = 1.0 + beta * sigma * E;
  return num / (den * den);
}

double var_energy(const DecayModel& m) { return var_energy_formula(m.alpha, m.beta, m.sigma); }

Time0Stats time0_stats(const DecayModel& m) {
  const double g = m.gamma();
  return {1.0 / g, 1.0 / (g * g)};
}

double skibsted_error(double alpha, double beta, double t) {
  if (t < 0) throw std::domain_error("skibsted_error: t >= 0");
  const double ba = beta / alpha;
  const double gt = 4.0 * alpha * beta * t;
  const double frac = (1.0 + 20.0 * std::sqrt(ba)) / (1.0 + 10.0 * std::sqrt(ba));
  const double inner = 3.0 * kPi / 16.0 * std::sqrt(gt) * frac * frac + 3.0 / 40.0;
  return 4.0 / std::sqrt(kPi) * (std::sqrt(ba) + std::pow(ba, 0.25) * std::sqrt(inner));
}

namespace {

cplx s_matrix_at(const DecayModel& m, double k, int bits) {
  if (bits <= 53) return jost::s_matrix(m.pot, cplx(k, 0.0));
  numerics::ScopedPrecision scope(bits);
  numerics::BigComplex fp, dfp, fm, dfm;
  jost::jost_f_big(m.pot, numerics::BigComplex(cplx(k, 0.0)), fp, dfp);
  jost::jost_f_big(m.pot, numerics::BigComplex(cplx(-k, 0.0)), fm, dfm);
  return (fm / fp).to_double();
}

int auto_bits(const DecayModel& m, double k) {
  // near the resonance peak F(k) ~ |F'| |k - k0|; double noise swamps it once
  // |k - alpha| is small, so escalate based on the distance to the peak
  const double dist = std::abs(k - m.alpha);
  if (dist > 1e-4 && dist > 1e4 * m.beta) return 53;
  const double need = -std::log2(std::max(m.beta, 1e-300)) + 80.0;
  return static_cast<int>(std::min(4096.0, std::max(128.0, need)));
}

// integral_R^inf e^{iqr} e^{-(r-R)^2/(2 sigma^2)} dr
//   = e^{iqR} sigma sqrt(pi/2) w(q sigma / sqrt 2),  w = Faddeeva
cplx tail_integral(double R, double sigma, cplx q) {
  const cplx arg = q * sigma / std::sqrt(2.0);
  return std::exp(cplx(0, 1) * q * R) * sigma * std::sqrt(kPi / 2.0) *
         numerics::faddeeva_w(arg);
}

}  // namespace

cplx g_hat(const DecayModel& m, double k, int bits) {
  if (k < 0) throw std::domain_error("g_hat: k >= 0");
  if (bits == 0) bits = auto_bits(m, k);
  const cplx k0(m.alpha, -m.beta);
  const cplx S = s_matrix_at(m, k, bits);
  const cplx s_minus = std::conj(S);  // S(-k) = conj(S(k)) on the real axis
  const cplx i(0, 1);
  return (tail_integral(m.R, m.sigma, k0 + k) - s_minus * tail_integral(m.R, m.sigma, k0 - k)) /
         (2.0 * i);
}

cplx psi_hat(const DecayModel& m, double k, int bits) {
  if (k < 0) throw std::domain_error("psi_hat: k >= 0");
  if (bits == 0) bits = auto_bits(m, k);
  const cplx k0(m.alpha, -m.beta);
  const cplx i(0, 1);
  const cplx S = s_matrix_at(m, k, bits);
  const cplx f_hat = -0.5 * (std::exp(i * (k0 - k) * m.R) / (k - k0) * std::conj(S) +
                             std::exp(i * (k0 + k) * m.R) / (k + k0));
  const cplx s_minus = std::conj(S);
  const cplx gh =
      (tail_integral(m.R, m.sigma, k0 + k) - s_minus * tail_integral(m.R, m.sigma, k0 - k)) /
      (2.0 * i);
  return f_hat + gh;
}

}  // namespace qtk::decay
