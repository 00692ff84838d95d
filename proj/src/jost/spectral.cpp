#include "qtk/jost/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <json.hpp>

namespace qtk::jost {

namespace {

using numerics::CountOptions;
using numerics::CountResult;
using numerics::ScaledFn;

ScaledFn scaled_jost(const StepPotential& pot) {
  return [&pot](cplx k) { return jost_f_scaled(pot, k); };
}

// F restricted to the imaginary axis is real: F(i y) for y real.
double f_on_imag_axis(const StepPotential& pot, double y) {
  const auto v = jost_f_derivs<cplx>(pot, cplx(0.0, y), 0);
  return v[0].real();
}

// Simple scan + bisection for sign changes of a real function on [lo, hi].
std::vector<double> scan_real_roots(const std::function<double(double)>& f, double lo, double hi,
                                    int n) {
  std::vector<double> roots;
  double xp = lo, fp = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double fx = f(x);
    if (fp == 0.0) roots.push_back(xp);
    if ((fp < 0 && fx > 0) || (fp > 0 && fx < 0)) {
      double a = xp, b = x, fa = fp;
      for (int it = 0; it < 100; ++it) {
        const double m = 0.5 * (a + b), fm = f(m);
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    xp = x;
    fp = fx;
  }
  return roots;
}

}  // namespace

Rect default_search_region(const StepPotential& pot, double K) {
  return Rect{0.0, 2.0 * K, -std::sqrt(pot.norm_l1()), 0.0};
}

numerics::RefinedZero refine_resonance(const StepPotential& pot, cplx z0,
                                       const PrecisionPolicy& policy) {
  numerics::BigFn fn = [&pot](const numerics::BigComplex& z, numerics::BigComplex& f,
                              numerics::BigComplex& df) { jost_f_big(pot, z, f, df); };
  return numerics::refine_zero_mp(fn, z0, policy);
}

SpectralData find_spectral_data(const StepPotential& pot, Rect region,
                                const SpectralSearchOptions& opt) {
  SpectralData sd;
  sd.search_region = region;
  const ScaledFn F = scaled_jost(pot);

  // ---- zero resonance: |F(0)| against the local scale |F'(0)| + 1
  {
    const auto v = jost_f_derivs<cplx>(pot, cplx(0.0, 0.0), 1);
    const double scale = std::abs(v[1]) + 1.0;
    sd.lambda = (std::abs(v[0]) < opt.f0_threshold * scale) ? 1 : 0;
  }

  // ---- bound and virtual states: 1D scans on the imaginary axis
  const double depth = std::sqrt(pot.max_abs()) + 2.0;
  const double bmax = opt.bound_scan_max > 0 ? opt.bound_scan_max : depth;
  const double vmax = opt.virtual_scan_max > 0 ? opt.virtual_scan_max : 2.0 * depth + 10.0;
  const double eps = opt.axis_margin;
  for (double y : scan_real_roots([&](double e) { return f_on_imag_axis(pot, e); }, eps, bmax,
                                  opt.scan_points))
    sd.bound.push_back(y);
  for (double y : scan_real_roots([&](double e) { return f_on_imag_axis(pot, -e); }, eps, vmax,
                                  opt.scan_points))
    sd.virtual_states.push_back(y);

  // ---- resonances: subdivision on the argument-principle count + Newton
  struct Cell {
    Rect r;
    long n;
  };
  // keep contour edges off the real and imaginary axes where zeros live
  Rect stripe{std::max(region.re_lo, 0.0) + eps, region.re_hi, region.im_lo,
              std::min(region.im_hi, 0.0) + eps};
  CountOptions copt;
  std::deque<Cell> work;
  {
    const CountResult cr = numerics::count_zeros_argument_principle(F, stripe, copt);
    sd.certified_count = cr.count;
    work.push_back({cr.rect_used, cr.count});
  }

  std::vector<numerics::RefinedZero> found;
  while (!work.empty()) {
    Cell cell = work.front();
    work.pop_front();
    if (cell.n == 0) continue;
    if (cell.n == 1) {
      const cplx center(0.5 * (cell.r.re_lo + cell.r.re_hi),
                        0.5 * (cell.r.im_lo + cell.r.im_hi));
      try {
        // double-precision Newton first; escalate only if the imaginary part
        // is not resolved at 53 bits
        auto plain = numerics::refine_zero(
            [&](cplx z) { return jost_f_derivs<cplx>(pot, z, 0)[0]; },
            [&](cplx z) { return jost_f_derivs<cplx>(pot, z, 1)[1]; }, center, 1e-12, 120);
        const bool im_unresolved =
            std::abs(plain.zero.imag()) < 1e-10 * std::abs(plain.zero.real());
        if (im_unresolved) {
          auto mp = refine_resonance(pot, cplx(plain.zero.real(), 0.0), opt.policy);
          found.push_back(mp);
        } else if (cell.r.contains(plain.zero)) {
          found.push_back(plain);
        } else {
          // Newton escaped the cell: bisect further
          throw numerics::ZeroSearchError("escaped cell");
        }
        continue;
      } catch (const numerics::ZeroSearchError&) {
        // fall through to subdivision
        if (cell.r.width() < 1e-8 && cell.r.height() < 1e-8)
          throw;  // cannot localize: give up loudly
      }
    }
    // split along the longer edge
    Rect a = cell.r, b = cell.r;
    if (cell.r.width() >= cell.r.height()) {
      const double m = 0.5 * (cell.r.re_lo + cell.r.re_hi);
      a.re_hi = m;
      b.re_lo = m;
    } else {
      const double m = 0.5 * (cell.r.im_lo + cell.r.im_hi);
      a.im_hi = m;
      b.im_lo = m;
    }
    const CountResult ca = numerics::count_zeros_argument_principle(F, a, copt);
    const CountResult cb = numerics::count_zeros_argument_principle(F, b, copt);
    work.push_back({ca.rect_used, ca.count});
    work.push_back({cb.rect_used, cb.count});
  }

  // classify: keep resonances (Re > margin, Im < 0); axis zeros were already
  // collected by the scans
  for (const auto& z : found) {
    const double re = z.zero.real(), im = z.zero.imag();
    if (re > 10 * eps && im < 0) sd.resonances.push_back({re, -im});
  }
  std::sort(sd.resonances.begin(), sd.resonances.end(), [](const auto& p, const auto& q) {
    return std::hypot(p.first, p.second) < std::hypot(q.first, q.second);
  });
  sd.counts_match =
      (static_cast<long>(sd.resonances.size()) == sd.certified_count);
  return sd;
}

std::string SpectralData::to_json() const {
  nlohmann::json j;
  j["bound"] = bound;
  j["virtual"] = virtual_states;
  auto& res = j["resonances"] = nlohmann::json::array();
  for (const auto& [a, b] : resonances) res.push_back({{"alpha", a}, {"beta", b}});
  j["lambda"] = lambda;
  j["search_region"] = {{"re_lo", search_region.re_lo},
                        {"re_hi", search_region.re_hi},
                        {"im_lo", search_region.im_lo},
                        {"im_hi", search_region.im_hi}};
  j["certified_count"] = certified_count;
  j["counts_match"] = counts_match;
  return j.dump(2);
}

SpectralData SpectralData::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SpectralData sd;
  sd.bound = j.at("bound").get<std::vector<double>>();
  sd.virtual_states = j.at("virtual").get<std::vector<double>>();
  for (const auto& r : j.at("resonances"))
    sd.resonances.push_back({r.at("alpha").get<double>(), r.at("beta").get<double>()});
  sd.lambda = j.at("lambda").get<int>();
  const auto& sr = j.at("search_region");
  sd.search_region = Rect{sr.at("re_lo"), sr.at("re_hi"), sr.at("im_lo"), sr.at("im_hi")};
  sd.certified_count = j.at("certified_count").get<long>();
  sd.counts_match = j.at("counts_match").get<bool>();
  return sd;
}

}  // namespace qtk::jost
