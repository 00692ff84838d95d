#include "qtk/arrival/arrival.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qtk/numerics/quadrature.hpp"

namespace qtk::arrival {

namespace {
using numerics::integrate;
using numerics::integrate_c;
using numerics::QuadOptions;
using packets::cplx;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

ArrivalWindow ArrivalWindow::default_for(const WavePacketSum& s, double detector) {
  double dist = 0.0, k = 0.0, sigma = 1.0;
  for (const auto& [c, g] : s.terms) {
    const double d = std::abs(detector - g.x0);
    if (d > dist) {
      dist = d;
      k = g.mass * g.v;
      sigma = g.sigma0;
    }
  }
  const double T = (dist - 3.0 * sigma) / (std::abs(k) + 5.0 / 12.0);
  if (T <= 0) throw std::invalid_argument("ArrivalWindow: packet too close to the detector");
  return ArrivalWindow(detector, T);
}

double semiclassical_density(const WavePacketSum& state, double L, double t) {
  if (t <= 0) throw std::domain_error("semiclassical_density: t > 0 required");
  if (L <= 0) throw std::domain_error("semiclassical_density: L > 0 required");
  const double m = state.mass();
  const double k = m * L / t;
  return m * L / (t * t) * std::norm(state.momentum_amplitude(k, 0.0));
}

double flux_raw(const WavePacketSum& state, double D, double t) {
  return state.current(D, t);
}

NormalizedFlux flux_density(const WavePacketSum& state, const ArrivalWindow& window) {
  auto raw = [state, D = window.detector](double t) { return state.current(D, t); };
  const auto total = integrate(raw, window.t_start, window.t_end, {1e-10, 4000});
  if (std::abs(total.value) < 1e-14)
    throw std::domain_error("flux_density: vanishing total flux over the window");
  return {[state, D = window.detector, norm = total.value](double t) {
            return state.current(D, t) / norm;
          },
          total.value};
}

double kijowski_density(const WavePacketSum& state, double D, double t) {
  // Arrivals at the origin; detectors elsewhere via translation of the state.
  const WavePacketSum s = state.translated(-D);
  const double m = s.mass();
  // integration range: momentum support of the packets
  double klo = 1e300, khi = -1e300;
  for (const auto& [c, g] : s.terms) {
    const double p = g.mass * g.v, w = 10.0 / (2.0 * g.sigma0);
    klo = std::min(klo, p - w);
    khi = std::max(khi, p + w);
  }
  auto half_line = [&](double sign) -> double {
    const double lo = std::max(0.0, sign > 0 ? klo : -khi);
    const double hi = std::max(lo, sign > 0 ? khi : -klo);
    if (hi <= lo) return 0.0;
    auto res = integrate_c(
        [&](double p) {
          return std::sqrt(p) * s.momentum_amplitude(sign * p, t);
        },
        lo, hi, {1e-10, 4000});
    return std::norm(res.value);
  };
  return (half_line(+1.0) + half_line(-1.0)) / (2.0 * kPi * m);
}

namespace {

// Subdivide [a,b] by sign of f at n probe points; integrate |f| on negative
// stretches with the zero crossings refined by bisection.
double integral_of_negative_part(const std::function<double(double)>& f, double a, double b,
                                 int n_probe, double tol) {
  std::vector<double> ts(n_probe + 1);
  std::vector<double> fs(n_probe + 1);
  for (int i = 0; i <= n_probe; ++i) {
    ts[i] = a + (b - a) * i / n_probe;
    fs[i] = f(ts[i]);
  }
  auto bisect = [&](double lo, double hi, double flo) {
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
      if (hi - lo < 1e-13 * (b - a)) break;
    }
    return 0.5 * (lo + hi);
  };
  double total = 0.0;
  int i = 0;
  while (i <= n_probe) {
    if (fs[i] < 0) {
      // entering a negative stretch; refine its endpoints
      double start = ts[i];
      if (i > 0 && fs[i - 1] >= 0) start = bisect(ts[i - 1], ts[i], fs[i - 1]);
      int j = i;
      while (j + 1 <= n_probe && fs[j + 1] < 0) ++j;
      const double end = (j == n_probe) ? b : bisect(ts[j], ts[j + 1], fs[j]);
      if (end > start) total += -integrate(f, start, end, {tol, 2000}).value;
      i = j + 1;
    } else {
      ++i;
    }
  }
  return std::max(0.0, total);
}

}  // namespace

double negative_flux(const WavePacketSum& state, double D, const ArrivalWindow& window,
                     double tol) {
  auto j = [&](double t) { return state.current(D, t); };
  return integral_of_negative_part(j, window.t_start, window.t_end, 600, tol);
}

double interference_metric(const packets::FreeGaussian1D& g1, const packets::FreeGaussian1D& g2,
                           double D, double zero_tol) {
  WavePacketSum plus{{cplx(1.0), g1}, {cplx(1.0), g2}};
  WavePacketSum minus{{cplx(1.0), g1}, {cplx(-1.0), g2}};
  const ArrivalWindow wplus = ArrivalWindow::default_for(plus, D);
  const double np = negative_flux(plus, D, wplus);
  const double nm = negative_flux(minus, D, wplus);
  const bool zp = np <= zero_tol, zm = nm <= zero_tol;
  const double chi0 = (zp != zm) ? 0.0 : 1.0;
  return (np + nm) * chi0;
}

double backflow_threshold(double sigma, const ThresholdGeometry& geom, double k_tol) {
  auto backflow_free = [&](double k) {
    packets::FreeGaussian1D g1(geom.x1, k, sigma, 1.0);
    packets::FreeGaussian1D g2(geom.x2, k, sigma, 1.0);
    WavePacketSum plus{{cplx(1.0), g1}, {cplx(1.0), g2}};
    WavePacketSum minus{{cplx(1.0), g1}, {cplx(-1.0), g2}};
    const ArrivalWindow w = ArrivalWindow::default_for(plus, geom.D);
    const double tol = 1e-7;
    return negative_flux(plus, geom.D, w) <= tol && negative_flux(minus, geom.D, w) <= tol;
  };
  double lo = 0.0, hi = 0.5;
  while (!backflow_free(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0) throw std::runtime_error("backflow_threshold: no sign change in bracket");
  }
  if (lo == 0.0 && backflow_free(0.0))
    return 0.0;
  while (hi - lo > k_tol) {
    const double mid = 0.5 * (lo + hi);
    (backflow_free(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

FeasibilityReport overtaking_feasibility(double sigma1, double delta, double L, double v1,
                                         double mass, double tau_detector, double safety) {
  if (sigma1 <= 0 || delta <= 0 || L <= 0 || v1 <= 0 || mass <= 0)
    throw std::invalid_argument("overtaking_feasibility: positive inputs required");
  FeasibilityReport r;
  // sigma1 <= delta/6  (margin = allowed/actual)
  r.separation.margin = (delta / 6.0) / (sigma1 * safety);
  r.separation.satisfied = r.separation.margin >= 1.0;
  // m v1 >= 3 L / (delta sigma1)
  r.momentum.margin = (mass * v1) / (safety * 3.0 * L / (delta * sigma1));
  r.momentum.satisfied = r.momentum.margin >= 1.0;
  // m v1^2 / 2 <= pi L / (delta tau)
  if (tau_detector <= 0) {
    r.fringe_resolvable.margin = std::numeric_limits<double>::infinity();
    r.fringe_resolvable.satisfied = true;
  } else {
    r.fringe_resolvable.margin =
        (kPi * L / (delta * tau_detector)) / (safety * mass * v1 * v1 / 2.0);
    r.fringe_resolvable.satisfied = r.fringe_resolvable.margin >= 1.0;
  }
  return r;
}

int count_local_maxima(const std::function<double(double)>& f, double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = f(lo + (hi - lo) * i / (n - 1));
  int count = 0;
  for (int i = 1; i + 1 < n; ++i)
    if (v[i] > v[i - 1] && v[i] > v[i + 1]) ++count;
  return count;
}

}  // namespace qtk::arrival
