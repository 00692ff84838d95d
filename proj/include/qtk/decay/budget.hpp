#pragma once

#include <cmath>
#include <string>
#include <type_traits>

#include "qtk/decay/model.hpp"
#include "qtk/numerics/log_magnitude.hpp"

namespace qtk::decay {

using numerics::LogMag;

namespace detail {

template <typename T>
T make(double v) {
  if constexpr (std::is_same_v<T, LogMag>)
    return LogMag::from_double(v);
  else
    return v;
}

template <typename T>
double as_double(const T& x) {
  if constexpr (std::is_same_v<T, LogMag>)
    return x.to_double();
  else
    return x;
}

template <typename T>
T tpow(const T& x, double p) {
  if constexpr (std::is_same_v<T, LogMag>)
    return x.pow(p);
  else
    return std::pow(x, p);
}

template <typename T>
T tsqrt(const T& x) {
  if constexpr (std::is_same_v<T, LogMag>)
    return x.sqrt();
  else
    return std::sqrt(x);
}

/// e^{-x} for x >= 0, possibly far beyond double exp range.
template <typename T>
T texp_neg(const T& x) {
  if constexpr (std::is_same_v<T, LogMag>) {
    if (x.is_zero()) return LogMag::from_double(1.0);
    if (x.sign() < 0) throw std::domain_error("texp_neg: negative argument");
    if (x.log10_mag() > 300.0) return LogMag{};  // e^{-huge} == 0 at any scale
    return LogMag::exp_of(-x.to_double());
  } else {
    return std::exp(-x);
  }
}

/// Natural log, x > 0.
template <typename T>
T tlog(const T& x) {
  if constexpr (std::is_same_v<T, LogMag>) {
    return LogMag::from_double(x.log10_mag() * 2.302585092994046);
  } else {
    return std::log(x);
  }
}

/// 1 + erf(x), monotone from 0 to 2.
template <typename T>
T erf1p(const T& x) {
  if constexpr (std::is_same_v<T, LogMag>) {
    if (x.sign() >= 0 && x.log10_mag() > 1.2) return LogMag::from_double(2.0);
    return LogMag::from_double(1.0 + std::erf(x.to_double()));
  } else {
    return 1.0 + std::erf(x);
  }
}

/// e^{x^2}.
template <typename T>
T exp_sq(const T& x) {
  if constexpr (std::is_same_v<T, LogMag>) {
    const LogMag x2 = x * x;
    if (x2.log10_mag() > 300.0) throw std::overflow_error("exp_sq: exponent out of range");
    return LogMag::exp_of(x2.to_double());
  } else {
    return std::exp(x * x);
  }
}

}  // namespace detail

/// sqrt(pi) e^{(beta sigma)^2} (1 + erf(beta sigma)), any magnitude regime.
template <typename T>
T e_factor_t(const T& beta, const T& sigma) {
  using namespace detail;
  const T bs = beta * sigma;
  return make<T>(std::sqrt(M_PI)) * exp_sq(bs) * erf1p(bs);
}

template <typename T>
T var_energy_t(const T& alpha, const T& beta, const T& sigma) {
  using namespace detail;
  const T E = e_factor_t(beta, sigma);
  const T half = make<T>(0.5);
  const T num = make<T>(2.0) * alpha * alpha * beta * beta * E * E +
                half * beta * beta / (sigma * sigma) * (make<T>(1.0) + E * E) +
                half * beta / sigma *
                    (beta * beta + make<T>(4.0) * alpha * alpha +
                     make<T>(1.5) / (sigma * sigma)) *
                    E;
  const T den = make<T>(1.0) + beta * sigma * E;
  return num / (den * den);
}

/// Inputs for the corollary constants (K = alpha/4, s_K = 1 regime).
template <typename T>
struct BudgetInputs {
  T alpha, beta, sigma, R;
  T c1k, c2k;        // C_{1,K}, C_{2,K}
  T c1, c2;          // global C_1, C_2
  T s;               // from 1/s = nu_{K~}/beta_0 (or the enumerated sum)
  T z_ack[3];        // z_{ac,K}(n) row sums
  T z_ac[3];         // z_ac(n) row sums
};

template <typename T>
struct CorollaryConstants {
  T mk_inf[3];  // M_{K,inf}(n)
  T m1[3];      // M_1(n)
  T c3_tilde, c4_tilde;
};

template <typename T>
CorollaryConstants<T> corollary_constants(const BudgetInputs<T>& in) {
  using namespace detail;
  CorollaryConstants<T> out;
  const T one = make<T>(1.0), two = make<T>(2.0), half = make<T>(0.5);
  const T pi = make<T>(M_PI);
  const T ebr = [&] {
    const T x = in.beta * in.R;
    if constexpr (std::is_same_v<T, LogMag>) {
      return (x.log10_mag() > 2.0) ? throw std::overflow_error("corollary: beta R too large")
                                   : LogMag::from_double(std::exp(x.to_double()));
    } else {
      return std::exp(x);
    }
  }();
  const T Ebs2 = e_factor_t(in.beta, in.sigma / tsqrt(two));  // E_{beta, sigma/sqrt2}
  const T sE = in.sigma / tsqrt(two) * Ebs2;                  // (sigma/sqrt2) E
  const T a = in.alpha, R = in.R, sg = in.sigma;
  const T bs2 = in.beta * sg * sg;  // beta sigma^2

  out.mk_inf[0] = ebr * (two / a + sE);
  out.mk_inf[1] =
      ebr * (make<T>(4.0) / (a * a) + (two * R + in.c1k) / a + sg * sg +
             (R + bs2 + half * in.c1k) * sE);
  out.mk_inf[2] =
      ebr * (make<T>(16.0) / (a * a * a) + (two * R + in.c1k) * make<T>(4.0) / (a * a) +
             (R * R + R * in.c1k + half * in.c2k) * two / a +
             sg * sg * (two * R + in.c1k + bs2) +
             (half * in.c2k + in.c1k * (R + bs2) + sg * sg + (R + bs2) * (R + bs2)) * sE);

  const T logt = two * tlog(two / in.beta) + half * pi;  // 2 log(2/beta) + pi/2
  const T pisE = pi / two * sE;                          // (pi sigma / 2^{3/2}) E
  const T c1s = in.c1 / in.s;
  out.m1[0] = ebr * (logt + pisE);
  out.m1[1] = ebr * (logt * (R + half * c1s) + pi / in.beta + half * pi * sg * sg +
                     (R + bs2 + half * c1s) * pisE);
  out.m1[2] = ebr * (logt * (R * R + c1s * R + half * in.c2 / (in.s * in.s)) +
                     pi / in.beta * (two * R + c1s) + make<T>(4.0) / (in.beta * in.beta) +
                     half * pi * sg * sg * (two * R + c1s + bs2) +
                     (half * in.c2 / (in.s * in.s) + c1s * (R + bs2) + sg * sg +
                      (R + bs2) * (R + bs2)) *
                         pisE);

  out.c3_tilde = make<T>(27.0 * 1024.0) / tpow(a, 5) * out.mk_inf[0] * out.mk_inf[0] *
                     in.z_ack[2] * in.z_ack[2] +
                 make<T>(23.0 * 64.0) * pi * pi / tpow(a, 3) * out.mk_inf[1] * out.mk_inf[1] *
                     in.z_ack[1] * in.z_ack[1] +
                 make<T>(27.0 * 4.0) / a * out.mk_inf[2] * out.mk_inf[2] * in.z_ack[0] *
                     in.z_ack[0];

  const T kfac = one + make<T>(16.0) / (a * a);  // 1 + 2^4 / alpha^2
  out.c4_tilde =
      make<T>(276.0) * out.m1[0] * out.m1[0] / tpow(in.s, 5) * tpow(kfac, 4) *
          (in.z_ac[2] * in.z_ac[2] + in.s * in.s * in.z_ac[1] * in.z_ac[1] +
           tpow(in.s, 4) * in.z_ac[0] * in.z_ac[0]) +
      make<T>(304.0) * out.m1[1] * out.m1[1] / tpow(in.s, 3) * tpow(kfac, 3) *
          (in.z_ac[1] * in.z_ac[1] + in.s * in.s * in.z_ac[0] * in.z_ac[0]) +
      make<T>(14.0) * out.m1[2] * out.m1[2] / in.s * tpow(kfac, 2) * in.z_ac[0] * in.z_ac[0];
  return out;
}

template <typename T>
struct ErrorBudget {
  T A;
  T omega_early, omega_late, omega;
  T zeta_early, zeta_late, zeta;
  T eps_t;  // 2 zeta + omega^2 + (2/gamma) omega
  CorollaryConstants<T> cc;
};

template <typename T>
T omega_of(const BudgetInputs<T>& in, const CorollaryConstants<T>& cc, const T& A,
           bool variance) {
  using namespace detail;
  const T two = make<T>(2.0), half = make<T>(0.5);
  const T gamma = make<T>(4.0) * in.alpha * in.beta;
  const T E = e_factor_t(in.beta, in.sigma);
  const T root_Ebs = tsqrt(E * in.beta * in.sigma);
  const T pref = two + root_Ebs;
  const T inner = tsqrt(make<T>(6.0 / (5.0 * M_PI))) * tpow(in.beta, 0.25) / tpow(in.alpha, 0.25) +
                  make<T>(4.0) * tsqrt(in.beta) / tsqrt(make<T>(M_PI) * in.alpha) + root_Ebs;
  const T e2br = [&] {
    const T x = two * in.beta * in.R;
    return texp_neg(x);
  }();
  if (!variance) {
    const T early = pref * (make<T>(4.0 / 5.0) * tsqrt(make<T>(54.0) * in.beta) * tpow(A, 1.25) +
                            inner * A);
    const T late = two * in.beta * e2br *
                       (half * cc.c3_tilde / (A * A) + make<T>(1.0 / 3.0) * cc.c4_tilde / tpow(A, 3)) +
                   texp_neg(gamma * A) / gamma;
    return early + late;
  }
  const T early = pref * (make<T>(4.0 / 9.0) * tsqrt(make<T>(54.0) * in.beta) * tpow(A, 2.25) +
                          half * inner * A * A);
  const T late = two * in.beta * e2br *
                     (cc.c3_tilde / A + half * cc.c4_tilde / (A * A)) +
                 texp_neg(gamma * A) / (gamma * gamma) * (make<T>(1.0) + gamma * A);
  return early + late;
}

/// Error budget with A optimized by golden section on log A (seeded at
/// beta^{-18/17}) unless a positive A is supplied.
template <typename T>
ErrorBudget<T> error_budget(const BudgetInputs<T>& in, double A_fixed = 0.0) {
  using namespace detail;
  ErrorBudget<T> out;
  out.cc = corollary_constants(in);
  const T gamma = make<T>(4.0) * in.alpha * in.beta;

  double lseed;
  if constexpr (std::is_same_v<T, LogMag>)
    lseed = -18.0 / 17.0 * in.beta.log10_mag();
  else
    lseed = -18.0 / 17.0 * std::log10(in.beta);

  double lA;
  if (A_fixed > 0.0) {
    lA = std::log10(A_fixed);
  } else {
    auto f = [&](double l) {
      const T A = [&] {
        if constexpr (std::is_same_v<T, LogMag>)
          return LogMag::from_log10(l);
        else
          return std::pow(10.0, l);
      }();
      const T om = omega_of(in, out.cc, A, false);
      if constexpr (std::is_same_v<T, LogMag>)
        return om.log10_mag();
      else
        return std::log10(om);
    };
    double lo = lseed - 12.0, hi = lseed + 12.0;
    const double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 90; ++it) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = f(x2);
      }
    }
    lA = 0.5 * (lo + hi);
  }
  if constexpr (std::is_same_v<T, LogMag>)
    out.A = LogMag::from_log10(lA);
  else
    out.A = std::pow(10.0, lA);

  // recompute the split pieces at the chosen A
  {
    const T A = out.A;
    const T two = make<T>(2.0), half = make<T>(0.5);
    const T E = e_factor_t(in.beta, in.sigma);
    const T root_Ebs = tsqrt(E * in.beta * in.sigma);
    const T pref = two + root_Ebs;
    const T inner =
        tsqrt(make<T>(6.0 / (5.0 * M_PI))) * tpow(in.beta, 0.25) / tpow(in.alpha, 0.25) +
        make<T>(4.0) * tsqrt(in.beta) / tsqrt(make<T>(M_PI) * in.alpha) + root_Ebs;
    const T e2br = texp_neg(two * in.beta * in.R);
    out.omega_early =
        pref * (make<T>(4.0 / 5.0) * tsqrt(make<T>(54.0) * in.beta) * tpow(A, 1.25) + inner * A);
    out.omega_late =
        two * in.beta * e2br *
            (half * out.cc.c3_tilde / (A * A) + make<T>(1.0 / 3.0) * out.cc.c4_tilde / tpow(A, 3)) +
        texp_neg(gamma * A) / gamma;
    out.zeta_early = pref * (make<T>(4.0 / 9.0) * tsqrt(make<T>(54.0) * in.beta) * tpow(A, 2.25) +
                             half * inner * A * A);
    out.zeta_late =
        two * in.beta * e2br * (out.cc.c3_tilde / A + half * out.cc.c4_tilde / (A * A)) +
        texp_neg(gamma * A) / (gamma * gamma) * (make<T>(1.0) + gamma * A);
  }
  out.omega = out.omega_early + out.omega_late;
  out.zeta = out.zeta_early + out.zeta_late;
  out.eps_t = make<T>(2.0) * out.zeta + out.omega * out.omega +
              make<T>(2.0) / gamma * out.omega;
  return out;
}

enum class Verdict { holds, violated, inconclusive };

template <typename T>
struct UncertaintyResult {
  T p0;     // Var E * Var_0 T
  T eps_p;  // Var E * eps_T
  Verdict verdict;
};

template <typename T>
UncertaintyResult<T> uncertainty_verdict(const T& var_e, const T& gamma, const T& eps_t) {
  using namespace detail;
  UncertaintyResult<T> out;
  out.p0 = var_e / (gamma * gamma);
  out.eps_p = var_e * eps_t;
  const T quarter = make<T>(0.25);
  if (out.p0 - out.eps_p >= quarter)
    out.verdict = Verdict::holds;
  else if (out.p0 + out.eps_p < quarter)
    out.verdict = Verdict::violated;  // unexpected: flagged loudly by callers
  else
    out.verdict = Verdict::inconclusive;
  return out;
}

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    default: return "inconclusive";
  }
}

template <typename T>
struct LifetimeBracket {
  T xi;
  T tau_lo, tau_hi;
  bool degenerate;  // xi >= 1/(2e): bracket widens to [0, inf)
};

/// xi = xi_{(0,A)}(A) + xi_{[A,inf)}(A); bracket [(1-2e xi)/gamma, (1+2e xi)/gamma].
template <typename T>
LifetimeBracket<T> lifetime_bracket(const BudgetInputs<T>& in, const CorollaryConstants<T>& cc,
                                    const T& A) {
  using namespace detail;
  const T two = make<T>(2.0);
  const T gamma = make<T>(4.0) * in.alpha * in.beta;
  const T E = e_factor_t(in.beta, in.sigma);
  const T root_Ebs = tsqrt(E * in.beta * in.sigma);
  const T xi_early = (two + root_Ebs) *
                     (tsqrt(make<T>(54.0) * in.beta) * tpow(A, 0.25) +
                      tsqrt(make<T>(6.0 / (5.0 * M_PI))) * tpow(in.beta, 0.25) / tpow(in.alpha, 0.25) +
                      make<T>(4.0) * tsqrt(in.beta) / tsqrt(make<T>(M_PI) * in.alpha) + root_Ebs);
  const T e2br = texp_neg(two * in.beta * in.R);
  const T xi_late = two * in.beta * e2br *
                        (cc.c3_tilde / tpow(A, 3) + cc.c4_tilde / tpow(A, 4)) +
                    texp_neg(gamma * A);
  LifetimeBracket<T> out;
  out.xi = xi_early + xi_late;
  const T twoe = make<T>(2.0 * M_E);
  const T one = make<T>(1.0);
  if (!(out.xi < one / twoe)) {
    out.degenerate = true;
    out.tau_lo = make<T>(0.0);
    out.tau_hi = make<T>(0.0);
    return out;
  }
  out.degenerate = false;
  out.tau_lo = (one - twoe * out.xi) / gamma;
  out.tau_hi = (one + twoe * out.xi) / gamma;
  return out;
}

}  // namespace qtk::decay
