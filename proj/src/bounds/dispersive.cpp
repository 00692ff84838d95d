#include "qtk/bounds/dispersive.hpp"

#include <cmath>
#include <stdexcept>

namespace qtk::bounds {

namespace {
constexpr double kPi = 3.14159265358979323846;
LogMag lm(double v) { return LogMag::from_double(v); }
LogMag sq(const LogMag& v) { return v * v; }
}  // namespace

GamowNormBounds gamow_norm_bounds(double alpha, double beta, double R, double K,
                                  const SBoundConstants& cs, double s, double s_K) {
  if (!(K >= 0.0 && K < 0.5 * alpha))
    throw std::invalid_argument("gamow_norm_bounds: K in [0, alpha/2) required");
  if (beta <= 0 || alpha <= 0) throw std::invalid_argument("gamow_norm_bounds: alpha, beta > 0");
  GamowNormBounds n{};
  const double ebr = std::exp(beta * R);  // ~1 in every long-lifetime case
  const double c1k_sk = cs.c1k / s_K;
  const double c2k_sk2 = cs.c2k / (2.0 * s_K * s_K);
  n.inf0 = ebr * 2.0 / alpha;
  n.inf1 = ebr * (4.0 / (alpha * alpha) + (2.0 * R + c1k_sk) / alpha);
  n.inf2 = ebr * (16.0 / std::pow(alpha, 3) + (2.0 * R + c1k_sk) * 4.0 / (alpha * alpha) +
                  (R * R + R * c1k_sk + c2k_sk2) * 2.0 / alpha);
  const double logt = 2.0 * std::log(2.0 / beta) + kPi / 2.0;
  const double c1_s = cs.c1 / s;
  const double c2_s2 = cs.c2 / (2.0 * s * s);
  n.w0 = ebr * logt;
  n.w1 = ebr * (logt * (R + 0.5 * c1_s) + kPi / beta);
  n.w2 = ebr * (logt * (R * R + c1_s * R + c2_s2) + (kPi / beta) * (2.0 * R + c1_s) +
                4.0 / (beta * beta));
  n.f0_abs = ebr / std::hypot(alpha, beta);
  return n;
}

DispersiveConstants dispersive_constants(const PsiHatNorms& nm, const StructuralConstants& sc,
                                         const ZTables& z, double K, int lambda, double eta0,
                                         int n_bound) {
  if (!(K > sc.s)) throw std::invalid_argument("dispersive_constants: K > s required");
  DispersiveConstants out;
  out.lambda = lambda;
  const LogMag sk = lm(sc.s_K), s = lm(sc.s);
  const LogMag Kl = lm(K);
  const LogMag pi2 = lm(kPi * kPi);
  const LogMag one = lm(1.0);

  const LogMag psi0 = (nm.psi0_abs > 0) ? lm(nm.psi0_abs) : LogMag{};
  const LogMag i0 = lm(nm.inf0), i1 = lm(nm.inf1), i2 = lm(nm.inf2);
  const LogMag w0 = lm(nm.w0), w1 = lm(nm.w1), w2 = lm(nm.w2);

  auto zk = [&](int n, int m) { return lm(z.ac_k[n][m]); };
  auto za = [&](int n, int m) { return lm(z.ac[n][m]); };
  const LogMag zk0 = lm(z.ac_k_sum[0]), zk1 = lm(z.ac_k_sum[1]), zk2 = lm(z.ac_k_sum[2]);
  const LogMag za0 = lm(z.ac_sum[0]), za1 = lm(z.ac_sum[1]), za2 = lm(z.ac_sum[2]);

  const LogMag kfac = one + one / sq(Kl);  // (1 + 1/K^2)

  // ---- simplified form (Th. main_ac), needs s, s_K, K <= 1
  out.simplified_ok = (sc.s <= 1.0 && sc.s_K <= 1.0 && K <= 1.0);
  if (out.simplified_ok) {
    auto& c = out.c_ac_simplified;
    c[0] = lm(81.0) * pi2 / Kl * sq(psi0) / sq(sk) * sq(zk0);
    c[1] = lm(53.0) * pi2 / Kl.pow(3) * sq(psi0) / sk.pow(4) * sq(zk1) +
           lm(53.0) * pi2 / Kl * sq(i1) / sq(sk) * sq(zk0);
    c[2] = lm(27.0) / Kl.pow(5) * sq(i0) / sk.pow(6) * sq(zk2) +
           lm(23.0) * pi2 / Kl.pow(3) * sq(i1) / sk.pow(4) * sq(zk1) +
           lm(27.0) / Kl * sq(i2) / sq(sk) * sq(zk0);
    c[3] = lm(276.0) * sq(w0) / s.pow(5) * kfac.pow(4) *
               (sq(za2) + sq(s) * sq(za1) + s.pow(4) * sq(za0)) +
           lm(304.0) * sq(w1) / s.pow(3) * kfac.pow(3) * (sq(za1) + sq(s) * sq(za0)) +
           lm(14.0) * sq(w2) / s * kfac.pow(2) * sq(za0);
  }

  // ---- pure form (no smallness assumptions)
  {
    auto& c = out.c_ac_pure;
    c[0] = lm(81.0) * pi2 * sq(psi0) / sq(sk) *
           (Kl * sq(zk(0, 0)) + sq(sk) / (lm(2.0) * Kl) * sq(zk(0, 1)));
    c[1] = lm(53.0) * pi2 * sq(psi0) / sk.pow(4) *
               (Kl * sq(zk(1, 0)) + sq(sk) / Kl * sq(zk(1, 1)) +
                sk.pow(4) / (lm(6.0) * Kl.pow(3)) * sq(zk(1, 2))) +
           lm(53.0) * pi2 * sq(i1) / sq(sk) *
               (Kl * sq(zk(0, 0)) + sq(sk) / Kl * sq(zk(0, 1)));
    c[2] = lm(9.0) * sq(i2) / sq(sk) *
               (lm(2.0) * Kl * sq(zk(0, 0)) + lm(3.0) * sq(sk) / Kl * sq(zk(0, 1))) +
           lm(23.0) * pi2 * sq(i1) / sk.pow(4) *
               (Kl * sq(zk(1, 0)) + sq(sk) / Kl * sq(zk(1, 1)) +
                sk.pow(4) / (lm(3.0) * Kl.pow(3)) * sq(zk(1, 2))) +
           lm(9.0) * sq(i0) / sk.pow(6) *
               (lm(2.0) * Kl * sq(zk(2, 0)) + lm(3.0) * sq(sk) / Kl * sq(zk(2, 1)) +
                lm(2.0 / 3.0) * sk.pow(4) / Kl.pow(3) * sq(zk(2, 2)) +
                sk.pow(6) / (lm(5.0) * Kl.pow(5)) * sq(zk(2, 3)));
    c[3] = lm(13.5) * sq(w2) / s * kfac.pow(2) * (sq(za(0, 0)) + sq(za(0, 1))) +
           lm(38.0) * sq(w1) / s.pow(3) * kfac.pow(3) *
               (sq(za(1, 0)) + lm(8.0) * sq(za(1, 1)) + lm(8.0 / 3.0) * sq(za(1, 2)) +
                sq(s) * (sq(za(0, 0)) + lm(2.0) * sq(za(0, 1)))) +
           lm(92.0) * sq(w0) / s.pow(5) * kfac.pow(4) *
               (sq(za(2, 0)) + lm(3.0) * sq(za(2, 1)) + sq(za(2, 2)) +
                lm(0.6) * sq(za(2, 3)) +
                sq(s) * (sq(za(1, 0)) + lm(4.0) * sq(za(1, 1)) + lm(4.0 / 3.0) * sq(za(1, 2))) +
                s.pow(4) * (sq(za(0, 0)) + sq(za(0, 1))));
  }

  // ---- bound-state projection constants (Th. main_e); zero when N = 0
  if (n_bound > 0) {
    if (eta0 <= 0) throw std::invalid_argument("dispersive_constants: eta0 > 0 for N > 0");
    const LogMag e0 = lm(eta0), N = lm(static_cast<double>(n_bound));
    const LogMag zek0 = lm(z.e_k[0]), zek1 = lm(z.e_k[1]), zek2 = lm(z.e_k[2]);
    const LogMag ze0 = lm(z.e[0]), ze1 = lm(z.e[1]), ze2 = lm(z.e[2]);
    auto& c = out.c_e;
    c[0] = lm(81.0 / 2.0) * pi2 * sq(psi0) / e0 * sq(zek0) * N;
    c[1] = lm(105.0 / 4.0) * pi2 *
           (sq(psi0) / (e0.pow(3) * sq(sk)) * sq(zek1) + sq(i1) / e0 * sq(zek0)) * N;
    c[2] = (lm(9.0) * sq(i0) / (e0.pow(5) * sk.pow(4)) * sq(zek2) +
            lm(166.0) * sq(i1) / (e0.pow(3) * sq(sk)) * sq(zek1) +
            lm(9.0) * sq(i2) * sq(zek0) / e0) *
           N;
    c[3] = (lm(13.5) * sq(w0) / (e0.pow(5) * s.pow(4)) * kfac.pow(4) *
                (sq(ze2) + sq(e0) * sq(s) * sq(ze1) + e0.pow(4) * s.pow(4) * sq(ze0)) +
            lm(12.0) * sq(w1) / (e0.pow(3) * sq(s)) * kfac.pow(3) *
                (sq(ze1) + sq(e0) * sq(s) * sq(ze0)) +
            lm(9.0 / 8.0) * sq(w2) / e0 * kfac.pow(2) * sq(ze0)) *
           N;
  }
  return out;
}

LogMag bound_curve(const std::array<LogMag, 4>& c, int lambda, double t) {
  if (t <= 0) throw std::domain_error("bound_curve: t > 0");
  const LogMag tl = lm(t);
  LogMag b = c[2] / tl.pow(3) + c[3] / tl.pow(4);
  if (lambda) b += c[0] / tl + c[1] / tl.pow(2);
  return b;
}

Crossover crossover_time(const std::array<LogMag, 4>& c, int lambda, double gamma,
                         const LogMag& norm2) {
  Crossover out{};
  out.t_scale = std::pow(gamma, -4.0 / 3.0);
  // bisection in log10 t on bound(t)/norm2 = 1; the curve is decreasing
  double lo = std::log10(out.t_scale) - 8.0, hi = std::log10(out.t_scale) + 30.0;
  auto above = [&](double l10) {
    return (bound_curve(c, lambda, std::pow(10.0, l10)) / norm2) > LogMag::from_double(1.0);
  };
  if (!above(lo)) {
    out.t_useful = std::pow(10.0, lo);
    return out;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? lo : hi) = mid;
  }
  out.t_useful = std::pow(10.0, 0.5 * (lo + hi));
  return out;
}

}  // namespace qtk::bounds
