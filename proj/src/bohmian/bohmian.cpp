#include "qtk/bohmian/bohmian.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qtk/numerics/quadrature.hpp"

namespace qtk::bohmian {

double velocity_field(const WavePacketSum& state, double x, double t, double node_frac) {
  const double rho = state.density(x, t);
  const double scale = state.density_scale(t);
  if (rho < node_frac * scale)
    throw NodeError("velocity_field: node proximity at x=" + std::to_string(x) +
                    ", t=" + std::to_string(t));
  return state.current(x, t) / rho;
}

namespace {

// Velocity with node-aware capping; reports node hits instead of throwing.
struct GuidedField {
  const WavePacketSum& state;
  const TrajectoryControls& ctl;
  double v_scale;  // velocity scale for the cap

  double operator()(double x, double t, bool& node) const {
    const double rho = state.density(x, t);
    const double scale = state.density_scale(t);
    if (rho < ctl.node_frac * scale) {
      node = true;
      return 0.0;
    }
    node = false;
    double v = state.current(x, t) / rho;
    const double cap = ctl.v_cap_frac * v_scale;
    if (std::abs(v) > cap) v = std::copysign(cap, v);
    return v;
  }
};

double velocity_scale(const WavePacketSum& s) {
  double vs = 0.0;
  for (const auto& [c, g] : s.terms)
    vs = std::max(vs, std::abs(g.v) + 1.0 / (g.mass * g.sigma0));
  return vs;
}

// One adaptive Cash-Karp RK45 step; returns accepted step size actually taken
// and writes the new state. Node encounters abort with node=true.
struct StepResult {
  double t, q, h_next;
  bool node = false;
};

StepResult rk45_step(const GuidedField& f, double t, double q, double h, double rel_tol,
                     double abs_tol) {
  static constexpr double a2 = 0.2, a3 = 0.3, a4 = 0.6, a5 = 1.0, a6 = 0.875;
  static constexpr double b21 = 0.2;
  static constexpr double b31 = 3.0 / 40, b32 = 9.0 / 40;
  static constexpr double b41 = 0.3, b42 = -0.9, b43 = 1.2;
  static constexpr double b51 = -11.0 / 54, b52 = 2.5, b53 = -70.0 / 27, b54 = 35.0 / 27;
  static constexpr double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                          b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
  static constexpr double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594,
                          c6 = 512.0 / 1771;
  static constexpr double d1 = 2825.0 / 27648, d3 = 18575.0 / 48384, d4 = 13525.0 / 55296,
                          d5 = 277.0 / 14336, d6 = 0.25;

  for (int attempt = 0; attempt < 60; ++attempt) {
    bool node = false;
    const double k1 = f(q, t, node);
    if (node) return {t, q, h, true};
    bool n2, n3, n4, n5, n6;
    const double k2 = f(q + h * b21 * k1, t + a2 * h, n2);
    const double k3 = f(q + h * (b31 * k1 + b32 * k2), t + a3 * h, n3);
    const double k4 = f(q + h * (b41 * k1 + b42 * k2 + b43 * k3), t + a4 * h, n4);
    const double k5 = f(q + h * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4), t + a5 * h, n5);
    const double k6 =
        f(q + h * (b61 * k1 + b62 * k2 + b63 * k3 + b64 * k4 + b65 * k5), t + a6 * h, n6);
    if (n2 || n3 || n4 || n5 || n6) return {t, q, h, true};

    const double q5 = q + h * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
    const double q4 = q + h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);
    const double err = std::abs(q5 - q4);
    const double tol = abs_tol + rel_tol * std::max(std::abs(q), std::abs(q5));
    if (err <= tol || h <= 1e-14 * std::max(1.0, std::abs(t))) {
      const double grow = (err > 0) ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
      return {t + h, q5, h * std::clamp(grow, 0.2, 5.0), false};
    }
    h *= std::max(0.2, 0.9 * std::pow(tol / err, 0.25));
  }
  return {t, q, h, true};  // treat persistent rejection as a stall
}

}  // namespace

Trajectory trajectory(const WavePacketSum& state, double q0, const std::vector<double>& t_grid,
                      const TrajectoryControls& controls) {
  if (t_grid.size() < 2) throw std::invalid_argument("trajectory: need at least two times");
  Trajectory out;
  out.samples.reserve(t_grid.size());
  GuidedField f{state, controls, velocity_scale(state)};

  double t = t_grid.front(), q = q0;
  double h = controls.h_init;
  out.samples.push_back({t, q});
  int steps = 0;
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double t_target = t_grid[i];
    int node_strikes = 0;
    while (t < t_target) {
      const double h_try = std::min(h, t_target - t);
      const StepResult r = rk45_step(f, t, q, h_try, controls.rel_tol, controls.abs_tol);
      if (r.node) {
        if (++node_strikes > 25) {
          out.status = TrajectoryStatus::node_stalled;
          out.stalled_at = t;
          return out;
        }
        // creep forward at floored step; the node region is measure-zero
        t += std::max(1e-10, h_try * 1e-3);
        continue;
      }
      node_strikes = 0;
      t = r.t;
      q = r.q;
      h = std::min(r.h_next, 0.1 * (t_grid.back() - t_grid.front()));
      if (++steps > controls.max_steps)
        throw std::runtime_error("trajectory: step budget exhausted");
    }
    out.samples.push_back({t_target, q});
  }
  return out;
}

std::optional<Crossing> first_crossing(const WavePacketSum& state, double q0, double D,
                                       double t_end, const TrajectoryControls& controls) {
  GuidedField f{state, controls, velocity_scale(state)};
  double t = 0.0, q = q0;
  double h = controls.h_init;
  if (q0 == D) return Crossing{0.0, 0};
  int steps = 0, node_strikes = 0;
  while (t < t_end) {
    const double h_try = std::min(h, t_end - t);
    const StepResult r = rk45_step(f, t, q, h_try, controls.rel_tol, controls.abs_tol);
    if (r.node) {
      if (++node_strikes > 25)
        throw NodeError("first_crossing: trajectory stalled at a node, t=" + std::to_string(t));
      t += std::max(1e-10, h_try * 1e-3);
      continue;
    }
    node_strikes = 0;
    if ((q - D) * (r.q - D) <= 0.0 && q != r.q) {
      // crossing inside the accepted step: cubic Hermite + bisection refinement
      bool n0, n1;
      const double v0 = f(q, t, n0), v1 = f(r.q, r.t, n1);
      const double dt = r.t - t;
      double lo = 0.0, hi = 1.0;
      auto hermite = [&](double s) {
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
        return h00 * q + h10 * dt * v0 + h01 * r.q + h11 * dt * v1 - D;
      };
      double flo = hermite(0.0);
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = hermite(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      const double tc = t + 0.5 * (lo + hi) * dt;
      const int dir = (r.q > q) ? +1 : -1;
      return Crossing{tc, dir};
    }
    t = r.t;
    q = r.q;
    h = r.h_next;
    if (++steps > controls.max_steps)
      throw std::runtime_error("first_crossing: step budget exhausted");
  }
  return std::nullopt;
}

std::vector<double> sample_initial_positions(const WavePacketSum& state,
                                             const SamplingOptions& opt) {
  const auto [lo, hi] = state.support_window(0.0, 9.0);
  const int n = opt.cdf_grid;
  std::vector<double> xs(n + 1), cdf(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) xs[i] = lo + (hi - lo) * i / n;
  for (int i = 1; i <= n; ++i) {
    const double a = state.density(xs[i - 1], 0.0), b = state.density(xs[i], 0.0);
    cdf[i] = cdf[i - 1] + 0.5 * (a + b) * (xs[i] - xs[i - 1]);
  }
  const double total = cdf[n];
  for (auto& c : cdf) c /= total;

  std::vector<double> out(opt.n_samples);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < opt.n_samples; ++i) {
    const double u = opt.stratified ? (i + 0.5) / opt.n_samples : uni(rng);
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const std::size_t j = std::min<std::size_t>(std::max<std::ptrdiff_t>(1, it - cdf.begin()),
                                                static_cast<std::size_t>(n));
    const double seg = cdf[j] - cdf[j - 1];
    const double frac = seg > 0 ? (u - cdf[j - 1]) / seg : 0.5;
    out[i] = xs[j - 1] + frac * (xs[j] - xs[j - 1]);
  }
  return out;
}

TruncatedCurrent truncated_current(const WavePacketSum& state, double D,
                                   const arrival::ArrivalWindow& window,
                                   const SamplingOptions& opt, CrossingConvention conv,
                                   const TrajectoryControls& controls) {
  if (opt.n_samples < 1) throw std::invalid_argument("truncated_current: n_samples >= 1");
  const std::vector<double> q0s = sample_initial_positions(state, opt);

  TruncatedCurrent tc;
  tc.bin_edges.resize(opt.n_bins + 1);
  tc.mass.assign(opt.n_bins, 0.0);
  for (int i = 0; i <= opt.n_bins; ++i)
    tc.bin_edges[i] = window.t_start + (window.t_end - window.t_start) * i / opt.n_bins;

  const double w = 1.0 / opt.n_samples;
  for (double q0 : q0s) {
    std::optional<Crossing> c;
    try {
      c = first_crossing(state, q0, D, window.t_end, controls);
    } catch (const NodeError&) {
      ++tc.stalled_count;  // flagged, folded into the no-arrival mass below
    }
    const bool arrived =
        c && (conv == CrossingConvention::first_any || c->direction > 0) && c->t >= window.t_start;
    if (!arrived) {
      tc.no_arrival_mass += w;
      continue;
    }
    tc.first_times.push_back(c->t);
    const int bin = std::min(opt.n_bins - 1,
                             static_cast<int>((c->t - window.t_start) /
                                              (window.t_end - window.t_start) * opt.n_bins));
    tc.mass[bin] += w;
  }
  std::sort(tc.first_times.begin(), tc.first_times.end());
  return tc;
}

double prob_negative_velocity(const WavePacketSum& state, double t) {
  const auto [lo, hi] = state.support_window(t, 9.0);
  auto j = [&](double x) { return state.current(x, t); };
  // reuse the sign-scanned negative-part integral on |psi|^2 weighted regions
  const int n_probe = 2000;
  std::vector<double> xs(n_probe + 1), js(n_probe + 1);
  for (int i = 0; i <= n_probe; ++i) {
    xs[i] = lo + (hi - lo) * i / n_probe;
    js[i] = j(xs[i]);
  }
  auto bisect = [&](double a, double b, double fa) {
    for (int it = 0; it < 80; ++it) {
      const double m = 0.5 * (a + b), fm = j(m);
      if ((fm < 0) == (fa < 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  };
  double mass = 0.0;
  int i = 0;
  while (i <= n_probe) {
    if (js[i] < 0) {
      double start = xs[i];
      if (i > 0 && js[i - 1] >= 0) start = bisect(xs[i - 1], xs[i], js[i - 1]);
      int k = i;
      while (k + 1 <= n_probe && js[k + 1] < 0) ++k;
      const double end = (k == n_probe) ? hi : bisect(xs[k], xs[k + 1], js[k]);
      if (end > start)
        mass += numerics::integrate([&](double x) { return state.density(x, t); }, start, end,
                                    {1e-10, 2000})
                    .value;
      i = k + 1;
    } else {
      ++i;
    }
  }
  return mass / state.norm_squared();
}

double prob_negative_momentum(const WavePacketSum& state) {
  // |psi~(-k)|^2 on k > 0 can be ~1e-33 while decaying on the momentum-width
  // scale; a fixed fine subdivision keeps the tiny result relatively accurate
  // where a single adaptive pass would accept it at absolute tolerance.
  double hi = 1.0;
  for (const auto& [c, g] : state.terms)
    hi = std::max(hi, std::abs(g.mass * g.v) + 14.0 / (2.0 * g.sigma0));
  auto f = [&](double k) { return std::norm(state.momentum_amplitude(-k, 0.0)); };
  const int n = 256;
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += numerics::integrate(f, hi * i / n, hi * (i + 1) / n, {1e-12, 60}).value;
  return sum / state.norm_squared();
}

std::string histogram_csv(const TruncatedCurrent& tc) {
  std::ostringstream os;
  os.precision(14);
  os << std::scientific;
  os << "t_lo,t_hi,mass\n";
  for (std::size_t i = 0; i + 1 < tc.bin_edges.size(); ++i)
    os << tc.bin_edges[i] << "," << tc.bin_edges[i + 1] << "," << tc.mass[i] << "\n";
  os << "no_arrival,," << tc.no_arrival_mass << "\n";
  return os.str();
}

}  // namespace qtk::bohmian
