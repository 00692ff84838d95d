#include "qtk/jost/scattering.hpp"

#include <cmath>

namespace qtk::jost {

namespace {
constexpr double kLog2 = 0.6931471805599453;
}

double zero_count_bound(const StepPotential& pot, double radius) {
  if (radius < 0) throw std::invalid_argument("zero_count_bound: radius >= 0");
  const double a = pot.norm_rv_l1();
  // log(4a e^{4a} + 1), safe for 4a beyond exp range
  const double fa = 4.0 * a;
  const double log_term =
      (fa > 500.0) ? std::log(fa) + fa : std::log(fa * std::exp(fa) + 1.0);
  return std::ceil((4.0 * pot.r_v() * radius + log_term) / kLog2);
}

ScatteringQuantities scattering_quantities(const StepPotential& pot,
                                           const SpectralData* spectral) {
  const auto F = jost_f_derivs<cplx>(pot, cplx(0.0, 0.0), 1);
  const double scale = std::abs(F[1]) + 1.0;
  if (std::abs(F[0]) < 1e-12 * scale)
    throw std::domain_error("scattering_quantities: zero resonance (F(0) = 0)");
  const cplx logderiv = F[1] / F[0];

  double inv_eta = 0.0, inv_kappa = 0.0;
  if (spectral) {
    for (double e : spectral->bound) inv_eta += 1.0 / e;
    for (double ka : spectral->virtual_states) inv_kappa += 1.0 / ka;
  }
  ScatteringQuantities out{};
  out.r0 = 2.5 * (pot.r_v() + inv_eta - inv_kappa - logderiv.imag());
  // a = S'(0)/(2 i S(0)) = i F'(0)/F(0) on the real axis
  out.a = (cplx(0.0, 1.0) * logderiv).real();
  return out;
}

double r0_partial_sum(const SpectralData& spectral, std::size_t N) {
  double s = 0.0;
  for (std::size_t n = 0; n < std::min(N, spectral.resonances.size()); ++n) {
    const auto& [al, be] = spectral.resonances[n];
    s += 5.0 * be / (al * al + be * be);
  }
  return s;
}

LogDerivSplit log_deriv_im(const StepPotential& pot, const SpectralData& spectral, double k,
                           int order, std::size_t N) {
  if (order < 0 || order > 2) throw std::invalid_argument("log_deriv_im: order in {0,1,2}");
  if (N > spectral.resonances.size())
    throw std::invalid_argument("log_deriv_im: N exceeds found resonances; needs more data");
  const auto F = jost_f_derivs<cplx>(pot, cplx(k, 0.0), 3);
  if (std::abs(F[0]) == 0.0) throw std::domain_error("log_deriv_im: F(k) = 0");

  LogDerivSplit out{};
  const cplx g = F[1] / F[0];
  const cplx g1 = F[2] / F[0] - g * g;
  const cplx g2 = F[3] / F[0] - 3.0 * (F[2] / F[0]) * g + 2.0 * g * g * g;
  out.direct = (order == 0) ? cplx(0.0, g.imag()) : (order == 1 ? g1 : g2);

  const double rho_N =
      (N < spectral.resonances.size())
          ? std::hypot(spectral.resonances[N].first, spectral.resonances[N].second)
          : (spectral.resonances.empty()
                 ? 1.0
                 : std::hypot(spectral.resonances.back().first,
                              spectral.resonances.back().second));
  if (k >= rho_N)
    throw std::invalid_argument("log_deriv_im: k beyond |k_N|; needs more spectral data");

  if (order == 0) {
    double L = pot.r_v();
    for (double e : spectral.bound) L += e / (k * k + e * e);
    for (double ka : spectral.virtual_states) L -= ka / (k * k + ka * ka);
    for (std::size_t n = 0; n < N; ++n) {
      const auto& [al, be] = spectral.resonances[n];
      L -= be / (std::norm(cplx(k - al, be)) ) + be / (std::norm(cplx(k + al, -be)));
    }
    out.hadamard = cplx(0.0, L);
    // tail: sum_{n>=N} beta_n (...) <= (r0_total - r0_partial)/5 * 2 (|k_N|/(|k_N|-k))^2
    const double r0_total = scattering_quantities(pot, &spectral).r0;
    const double r0_part = r0_partial_sum(spectral, N);
    const double fac = rho_N / (rho_N - k);
    out.tail_bound = std::max(0.0, r0_total - r0_part) / 5.0 * 2.0 * fac * fac;
    return out;
  }

  const int q = order;
  const double qfact = (q == 1) ? 1.0 : 2.0;
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  cplx sum = 0.0;
  if (spectral.lambda) sum += 1.0 / std::pow(cplx(k, 0.0), q + 1);
  for (std::size_t n = 0; n < N; ++n) {
    const auto& [al, be] = spectral.resonances[n];
    const cplx kn(al, -be);
    sum += 1.0 / std::pow(k - kn, q + 1) + 1.0 / std::pow(k + std::conj(kn), q + 1);
  }
  for (double e : spectral.bound) sum += 1.0 / std::pow(cplx(k, -e), q + 1);
  for (double ka : spectral.virtual_states) sum += 1.0 / std::pow(cplx(k, ka), q + 1);
  out.hadamard = sign * qfact * sum;

  // dyadic-shell tail from the zero-count bound
  double tail = 0.0;
  for (int j = 0; j < 200; ++j) {
    const double lo = std::ldexp(rho_N, j);
    const double hi = std::ldexp(rho_N, j + 1);
    const double inc = zero_count_bound(pot, hi) / std::pow(lo - k, q + 1);
    tail += inc;
    if (inc < 1e-16 * tail) break;
  }
  out.tail_bound = qfact * tail;
  return out;
}

double gamow_rate_estimate(const StepPotential& pot, double E, double R_N) {
  double integral = 0.0;
  bool any = false;
  const auto& edges = pot.edges();
  const auto& vals = pot.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] > E) {
      any = true;
      integral += std::sqrt(vals[i] - E) * (edges[i + 1] - edges[i]);
    }
  }
  if (!any) throw std::domain_error("gamow_rate_estimate: energy above the barrier");
  return std::sqrt(E) / R_N * std::exp(-2.0 * integral);
}

std::complex<double> table_resonance_1d(int n, double v0, double a) {
  const double np = n + 1.0;
  const double c = np * np * M_PI * M_PI / (4.0 * a * a);
  const double re = std::sqrt(v0 + c);
  const double im = c / (a * std::sqrt(v0 * v0 + v0 * c));
  return {re, -im};
}

std::complex<double> table_resonance_residual_1d(double v0, double a, std::complex<double> k) {
  const cplx kap = std::sqrt(k * k - v0);
  const cplx lhs = std::exp(cplx(0, 1) * 4.0 * a * kap);
  const cplx r = (k + kap) / (k - kap);
  return lhs - r * r;
}

std::complex<double> ball_resonance_residual(double v0, double a, std::complex<double> k) {
  const cplx kap = std::sqrt(k * k - v0);
  const cplx lhs = std::exp(cplx(0, 1) * 2.0 * a * kap);
  return lhs - (k + kap) / (k - kap);
}

StripeTailCheck verify_stripe_tail(const StepPotential& pot, double k_tilde) {
  StripeTailCheck out{};
  const double rho = 2.0 * std::sqrt(2.0) * k_tilde;
  const numerics::ScaledFn F = [&pot](cplx k) { return jost_f_scaled(pot, k); };
  numerics::CountOptions copt;
  copt.min_steps_per_edge = 32;

  // covering rectangles of the stripe part outside the ball (see docs):
  // the region is contained in [0, 2Kt] x (-inf, -2Kt]
  const numerics::Rect band1{-1e-6, 2.0 * k_tilde + 1e-6, -2.0 * rho, -2.0 * k_tilde};
  const numerics::Rect band2{-1e-6, 2.0 * k_tilde + 1e-6, -4.0 * rho, -2.0 * rho};
  out.count_band1 = numerics::count_zeros_argument_principle(F, band1, copt).count;
  out.count_band2 = numerics::count_zeros_argument_principle(F, band2, copt).count;

  // below -4 rho: |F| ~ e^{2 R_V |Im k|}; record the observed floor
  double mn = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 64; ++i) {
    const cplx k(2.0 * k_tilde * i / 64.0, -4.0 * rho);
    mn = std::min(mn, jost_f_scaled(pot, k).log10_scale);
  }
  out.min_log10_f_bottom = mn;
  out.ok = (out.count_band1 == 0 && out.count_band2 == 0 && mn > 10.0);
  return out;
}

}  // namespace qtk::jost
