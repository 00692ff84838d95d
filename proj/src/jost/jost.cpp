#include "qtk/jost/jost.hpp"

#include <cmath>

namespace qtk::jost {

StepPotential::StepPotential(std::vector<double> inner_edges, std::vector<double> values)
    : edges_(std::move(inner_edges)), values_(std::move(values)) {
  if (edges_.empty() || edges_.front() != 0.0)
    edges_.insert(edges_.begin(), 0.0);
  if (edges_.size() != values_.size() + 1)
    throw std::invalid_argument("StepPotential: edges must be values+1 including 0");
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i] <= edges_[i - 1])
      throw std::invalid_argument("StepPotential: edges must be strictly increasing");
  if (norm_l1() <= 0.0) throw std::invalid_argument("StepPotential: ||V||_1 must be > 0");
}

StepPotential StepPotential::barrier(double r1, double r2, double v0) {
  if (r1 <= 0.0) return StepPotential({0.0, r2}, {v0});
  return StepPotential({0.0, r1, r2}, {0.0, v0});
}

double StepPotential::value_at(double r) const {
  if (r < 0 || r >= r_v()) return 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (r < edges_[i + 1]) return values_[i];
  return 0.0;
}

double StepPotential::norm_l1() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    s += std::abs(values_[i]) * (edges_[i + 1] - edges_[i]);
  return s;
}

double StepPotential::norm_rv_l1() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double a = edges_[i], b = edges_[i + 1];
    s += std::abs(values_[i]) * 0.5 * (b * b - a * a);
  }
  return s;
}

double StepPotential::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

template <typename C>
using real_t = typename complex_traits<C>::real_type;

template <typename C>
C make_c(double re, double im = 0.0) {
  return complex_traits<C>::make(re, im);
}

template <typename T>
T pow_int(const T& x, int n) {
  T r = x;
  for (int i = 1; i < n; ++i) r = r * x;
  return r;
}

// S^{(n)}(w) by power series; used where the closed forms divide by small w.
template <typename C>
C s_series(const C& w, const real_t<C>& d, int n) {
  using std::norm;
  const C u = w * (d * d);
  // leading term j = n: (-1)^n n! d^{2n+1} / (2n+1)!
  double lead = 1.0;
  for (int j = 1; j <= n; ++j) lead *= j;           // n!
  double fact = 1.0;
  for (int j = 1; j <= 2 * n + 1; ++j) fact *= j;   // (2n+1)!
  C term = make_c<C>((n % 2 == 0 ? 1.0 : -1.0) * lead / fact) * pow_int(d, 2 * n + 1);
  C sum = term;
  const auto eps2 = complex_traits<C>::eps() * complex_traits<C>::eps();
  for (int j = n; j < n + 90; ++j) {
    // ratio c_{j+1}/c_j = -u (j+1)/((j+1-n)(2j+2)(2j+3))
    const double denom = static_cast<double>(j + 1 - n) * (2 * j + 2) * (2 * j + 3);
    term = term * u * make_c<C>(-(j + 1) / denom);
    sum += term;
    if (norm(term) <= eps2 * norm(sum)) break;
  }
  return sum;
}

}  // namespace

template <typename C>
TrigPair<C> trig_pair(const C& w, const real_t<C>& d) {
  using std::abs;
  using std::cos;
  using std::sin;
  using std::sqrt;
  TrigPair<C> out;
  const real_t<C> half_d = d / 2;
  const double scale = static_cast<double>(abs(w)) * static_cast<double>(d) *
                       static_cast<double>(d);
  if (scale < 1.0) {
    out.s = s_series(w, d, 0);
    out.ds[0] = s_series(w, d, 1);
    out.ds[1] = s_series(w, d, 2);
    out.ds[2] = s_series(w, d, 3);
    // C = 1 - w d^2/2! + (w d^2)^2/4! - ...
    C csum = make_c<C>(1.0);
    C term = make_c<C>(1.0);
    const auto eps2 = complex_traits<C>::eps() * complex_traits<C>::eps();
    using std::norm;
    for (int j = 0; j < 90; ++j) {
      term = term * w * (d * d) * make_c<C>(-1.0 / ((2.0 * j + 1) * (2.0 * j + 2)));
      csum += term;
      if (norm(term) <= eps2 * norm(csum)) break;
    }
    out.c = csum;
  } else {
    const C kappa = sqrt(w);
    const C kd = kappa * d;
    out.c = cos(kd);
    out.s = sin(kd) / kappa;
    const C inv2w = make_c<C>(1.0) / (w + w);
    const C half_d2 = make_c<C>(-0.5) * C(d * d, real_t<C>(0));
    out.ds[0] = (out.c * d - out.s) * inv2w;
    out.ds[1] = (out.s * half_d2 - make_c<C>(3.0) * out.ds[0]) * inv2w;
    out.ds[2] = (out.ds[0] * half_d2 - make_c<C>(5.0) * out.ds[1]) * inv2w;
  }
  out.dc[0] = -(out.s * half_d);
  out.dc[1] = -(out.ds[0] * half_d);
  out.dc[2] = -(out.ds[1] * half_d);
  return out;
}

namespace {

// 2x2 transfer matrix for one region and its k-derivatives up to order 3.
// Entries: [[C, S], [-w S, C]]; w = k^2 - V, dw/dk = 2k.
template <typename C>
struct RegionMatrices {
  // m[j] = d^j M/dk^j, stored row-major
  std::array<std::array<C, 4>, 4> m;
};

template <typename C>
RegionMatrices<C> region_matrices(const C& k, double v, const real_t<C>& d, int order) {
  const C w = k * k - make_c<C>(v);
  const TrigPair<C> tp = trig_pair(w, d);

  // w-derivatives of entries
  const C& c0 = tp.c;
  const C& s0 = tp.s;
  const C m21 = -(w * s0);
  const C m21_w = -s0 - w * tp.ds[0];
  const C m21_ww = -(tp.ds[0] + tp.ds[0]) - w * tp.ds[1];
  const C m21_www = -make_c<C>(3.0) * tp.ds[1] - w * tp.ds[2];

  auto chain = [&k](const C& fw, const C& fww, const C& fwww, int n) -> C {
    const C two_k = k + k;
    switch (n) {
      case 1: return fw * two_k;
      case 2: return fw * make_c<C>(2.0) + fww * (two_k * two_k);
      case 3:
        return fww * (k * make_c<C>(12.0)) + fwww * (k * k * k * make_c<C>(8.0));
      default: return make_c<C>(0.0);
    }
  };

  RegionMatrices<C> rm;
  rm.m[0] = {c0, s0, m21, c0};
  for (int n = 1; n <= order; ++n) {
    const C cn = chain(tp.dc[0], tp.dc[1], tp.dc[2], n);
    const C sn = chain(tp.ds[0], tp.ds[1], tp.ds[2], n);
    const C m21n = chain(m21_w, m21_ww, m21_www, n);
    rm.m[n] = {cn, sn, m21n, cn};
  }
  return rm;
}

constexpr double kBinom[4][4] = {
    {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

}  // namespace

template <typename C>
std::array<C, 4> jost_f_derivs(const StepPotential& pot, const C& k, int order) {
  // state y[n] = d^n/dk^n (phi, phi'); start phi = 0, phi' = 1
  std::array<std::array<C, 2>, 4> y{};
  y[0][1] = make_c<C>(1.0);

  const auto& edges = pot.edges();
  const auto& vals = pot.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const real_t<C> d = real_t<C>(edges[i + 1]) - real_t<C>(edges[i]);
    const RegionMatrices<C> rm = region_matrices(k, vals[i], d, order);
    std::array<std::array<C, 2>, 4> yn{};
    for (int n = 0; n <= order; ++n) {
      C a{}, b{};
      for (int j = 0; j <= n; ++j) {
        const C bc = make_c<C>(kBinom[n][j]);
        const auto& M = rm.m[j];
        const auto& yy = y[n - j];
        a += bc * (M[0] * yy[0] + M[1] * yy[1]);
        b += bc * (M[2] * yy[0] + M[3] * yy[1]);
      }
      yn[n] = {a, b};
    }
    y = yn;
  }

  // F^{(n)} = sum_j binom(n,j) (iR)^j e^{ikR} G^{(n-j)}, G = phi' - i k phi
  const real_t<C> R = real_t<C>(pot.r_v());
  const C iR = make_c<C>(0.0, 1.0) * C(R, real_t<C>(0));
  const C E = exp(make_c<C>(0.0, 1.0) * k * R);

  std::array<C, 4> G{};
  for (int n = 0; n <= order; ++n) {
    C kphi = k * y[n][0];
    if (n >= 1) kphi += make_c<C>(static_cast<double>(n)) * y[n - 1][0];
    G[n] = y[n][1] - make_c<C>(0.0, 1.0) * kphi;
  }

  std::array<C, 4> F{};
  for (int n = 0; n <= order; ++n) {
    C acc{};
    C iRj = make_c<C>(1.0);
    for (int j = 0; j <= n; ++j) {
      acc += make_c<C>(kBinom[n][j]) * iRj * G[n - j];
      iRj = iRj * iR;
    }
    F[n] = E * acc;
  }
  return F;
}

// explicit instantiations
template TrigPair<cplx> trig_pair(const cplx&, const double&);
template TrigPair<BigComplex> trig_pair(const BigComplex&, const numerics::BigFloat&);
template std::array<cplx, 4> jost_f_derivs(const StepPotential&, const cplx&, int);
template std::array<BigComplex, 4> jost_f_derivs(const StepPotential&, const BigComplex&, int);

JostValue jost_f(const StepPotential& pot, cplx k) {
  const auto F = jost_f_derivs<cplx>(pot, k, 1);
  return {F[0], F[1]};
}

void jost_f_big(const StepPotential& pot, const BigComplex& k, BigComplex& f, BigComplex& df) {
  const auto F = jost_f_derivs<BigComplex>(pot, k, 1);
  f = F[0];
  df = F[1];
}

numerics::ScaledComplex jost_f_scaled(const StepPotential& pot, cplx k) {
  // propagate (phi, phi') with per-region log10 rescaling; no derivatives
  constexpr double kLog10E = 0.4342944819032518;
  cplx phi = 0.0, dphi = 1.0;
  double l10 = 0.0;

  const auto& edges = pot.edges();
  const auto& vals = pot.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double d = edges[i + 1] - edges[i];
    const cplx w = k * k - vals[i];
    const double b = std::imag(std::sqrt(w)) * d;  // Im(kappa d)
    cplx C, S;
    if (std::abs(w) * d * d < 1.0) {
      const auto tp = trig_pair<cplx>(w, d);
      C = tp.c;
      S = tp.s;
    } else if (std::abs(b) < 300.0) {
      const cplx kappa = std::sqrt(w);
      C = std::cos(kappa * d);
      S = std::sin(kappa * d) / kappa;
    } else {
      // scaled half-exponentials: cos x = (e^{ix} + e^{-ix})/2 etc.
      const cplx kappa = std::sqrt(w);
      const cplx ix = cplx(0, 1) * kappa * d;
      const double lmax = std::abs(ix.real());
      const cplx ep = std::exp(ix - lmax);   // e^{ix} / e^{lmax}
      const cplx em = std::exp(-ix - lmax);  // e^{-ix} / e^{lmax}
      C = 0.5 * (ep + em);
      S = (ep - em) / (2.0 * cplx(0, 1) * kappa);
      const cplx phi_new = C * phi + S * dphi;
      const cplx dphi_new = -w * S * phi + C * dphi;
      phi = phi_new;
      dphi = dphi_new;
      l10 += lmax * kLog10E;
      const double m = std::max(std::abs(phi), std::abs(dphi));
      if (m > 1e100 || (m > 0 && m < 1e-100)) {
        phi /= m;
        dphi /= m;
        l10 += std::log10(m);
      }
      continue;
    }
    const cplx phi_new = C * phi + S * dphi;
    const cplx dphi_new = -w * S * phi + C * dphi;
    phi = phi_new;
    dphi = dphi_new;
    const double m = std::max(std::abs(phi), std::abs(dphi));
    if (m > 1e100) {
      phi /= m;
      dphi /= m;
      l10 += std::log10(m);
    }
  }
  const double R = pot.r_v();
  const cplx G = dphi - cplx(0, 1) * k * phi;
  // e^{ikR}: magnitude e^{-R Im k}, phase R Re k
  const double lE = -R * k.imag() * kLog10E;
  const cplx phaseE = std::exp(cplx(0.0, R * k.real()));
  numerics::ScaledComplex out{phaseE * G, l10 + lE};
  // fold the mantissa magnitude into the scale to keep it O(1)
  const double m = std::abs(out.mantissa);
  if (m > 0) {
    out.log10_scale += std::log10(m);
    out.mantissa /= m;
  }
  return out;
}

cplx gamow_function(const StepPotential& pot, cplx k, double r) {
  const double R = pot.r_v();
  if (r >= R) return std::exp(cplx(0, 1) * k * r);
  cplx f = std::exp(cplx(0, 1) * k * R);
  cplx df = cplx(0, 1) * k * f;
  const auto& edges = pot.edges();
  const auto& vals = pot.values();
  for (int i = static_cast<int>(vals.size()) - 1; i >= 0; --i) {
    const double lo = edges[i], hi = edges[i + 1];
    if (r >= hi) break;
    const double d = hi - std::max(r, lo);
    const cplx w = k * k - vals[i];
    const auto tp = trig_pair<cplx>(w, d);
    // inverse transfer: [[C, -S], [w S, C]]
    const cplx f_new = tp.c * f - tp.s * df;
    const cplx df_new = w * tp.s * f + tp.c * df;
    f = f_new;
    df = df_new;
  }
  return f;
}

cplx s_matrix(const StepPotential& pot, cplx k) {
  const auto Fp = jost_f_derivs<cplx>(pot, k, 0);
  const auto Fm = jost_f_derivs<cplx>(pot, -k, 0);
  if (std::abs(Fp[0]) == 0.0) throw std::domain_error("s_matrix: pole (F(k) = 0)");
  return Fm[0] / Fp[0];
}

std::array<cplx, 4> s_matrix_derivs(const StepPotential& pot, cplx k) {
  const auto B = jost_f_derivs<cplx>(pot, k, 3);
  const auto Am = jost_f_derivs<cplx>(pot, -k, 3);
  // A(k) = F(-k): A^{(n)} = (-1)^n F^{(n)}(-k)
  const std::array<cplx, 4> A = {Am[0], -Am[1], Am[2], -Am[3]};
  if (std::abs(B[0]) == 0.0) throw std::domain_error("s_matrix_derivs: pole (F(k) = 0)");
  std::array<cplx, 4> S;
  S[0] = A[0] / B[0];
  S[1] = (A[1] - S[0] * B[1]) / B[0];
  S[2] = (A[2] - 2.0 * S[1] * B[1] - S[0] * B[2]) / B[0];
  S[3] = (A[3] - 3.0 * S[2] * B[1] - 3.0 * S[1] * B[2] - S[0] * B[3]) / B[0];
  return S;
}

}  // namespace qtk::jost
