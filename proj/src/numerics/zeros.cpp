#include "qtk/numerics/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace qtk::numerics {

namespace {
using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

ScaledFn scaled_from_plain(std::function<cplx(cplx)> f) {
  return [f = std::move(f)](cplx z) -> ScaledComplex {
    const cplx v = f(z);
    return {v, 0.0};
  };
}

namespace {

double log10_abs(const ScaledComplex& s) {
  const double a = std::abs(s.mantissa);
  if (a == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log10(a) + s.log10_scale;
}

struct WalkAbort {};  // boundary-zero suspicion; restart with a perturbed rectangle

// Phase change accumulated along one edge, adaptive steps.
double walk_edge(const ScaledFn& f, cplx za, cplx zb, const CountOptions& opt, long& evals,
                 double diag_scale) {
  double total = 0.0;
  double t = 0.0;
  double dt = 1.0 / opt.min_steps_per_edge;
  ScaledComplex fc = f(za);
  ++evals;
  double ref = log10_abs(fc);  // running scale estimate (log10)
  if (!std::isfinite(ref)) throw WalkAbort{};
  const double h_min = opt.h_min_frac;
  (void)diag_scale;

  while (t < 1.0) {
    const double t2 = std::min(1.0, t + dt);
    const cplx z2 = za + (zb - za) * t2;
    const ScaledComplex f2 = f(z2);
    ++evals;
    const double l2 = log10_abs(f2);
    if (!std::isfinite(l2) || l2 < ref - opt.boundary_threshold) throw WalkAbort{};
    const double dphi = std::arg(f2.mantissa / fc.mantissa);
    if (std::abs(dphi) <= 0.5 * kPi && std::abs(l2 - log10_abs(fc)) <= 1.5) {
      total += dphi;
      t = t2;
      fc = f2;
      ref = 0.9 * ref + 0.1 * l2;
      dt = std::min(1.5 * dt, 0.25);
    } else {
      dt *= 0.5;
      if (dt < h_min) throw WalkAbort{};
    }
  }
  return total;
}

double walk_contour(const ScaledFn& f, const Rect& r, const CountOptions& opt, long& evals) {
  const cplx c0(r.re_lo, r.im_lo), c1(r.re_hi, r.im_lo), c2(r.re_hi, r.im_hi),
      c3(r.re_lo, r.im_hi);
  const double diag = std::hypot(r.width(), r.height());
  double w = 0.0;
  w += walk_edge(f, c0, c1, opt, evals, diag);
  w += walk_edge(f, c1, c2, opt, evals, diag);
  w += walk_edge(f, c2, c3, opt, evals, diag);
  w += walk_edge(f, c3, c0, opt, evals, diag);
  return w / (2.0 * kPi);
}

}  // namespace

CountResult count_zeros_argument_principle(const ScaledFn& f, Rect rect, CountOptions opt) {
  CountResult res;
  res.rect_used = rect;
  const double size = std::max(rect.width(), rect.height());
  for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
    try {
      const double w = walk_contour(f, res.rect_used, opt, res.evals);
      const long n = std::lround(w);
      if (std::abs(w - static_cast<double>(n)) > opt.tol) {
        // force a finer first pass once before giving up
        if (opt.min_steps_per_edge < 256) {
          opt.min_steps_per_edge *= 4;
          continue;
        }
        throw ZeroSearchError("argument principle: winding " + std::to_string(w) +
                              " not within tol of an integer");
      }
      if (n < 0)
        throw ZeroSearchError("argument principle: negative winding (pole inside contour?)");
      res.count = n;
      return res;
    } catch (const WalkAbort&) {
      // grow the rectangle slightly; zeros are generically off the boundary.
      const double d = opt.perturb_frac * size * (attempt + 1);
      res.rect_used = Rect{res.rect_used.re_lo - d, res.rect_used.re_hi + d,
                           res.rect_used.im_lo - d, res.rect_used.im_hi + d};
      res.perturbed = true;
    }
  }
  throw ZeroSearchError("argument principle: boundary zero persists after perturbation retries");
}

RefinedZero refine_zero(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& df,
                        cplx z0, double tol, int max_iter) {
  RefinedZero out;
  cplx z = z0;
  const double basin = 1.0 + std::abs(z0);
  for (int it = 0; it < max_iter; ++it) {
    const cplx fv = f(z);
    cplx dv;
    if (df) {
      dv = df(z);
    } else {
      const double h = 1e-6 * std::max(1.0, std::abs(z));
      dv = (f(z + cplx(h, 0)) - f(z - cplx(h, 0))) / (2.0 * h);
    }
    if (std::abs(dv) == 0.0) throw ZeroSearchError("refine_zero: vanishing derivative");
    const cplx step = fv / dv;
    z -= step;
    if (std::abs(z - z0) > 8.0 * basin) throw ZeroSearchError("refine_zero: basin escape");
    if (std::abs(step) <= tol * std::max(1.0, std::abs(z))) {
      out.zero = z;
      out.residual = std::abs(f(z));
      out.bits_used = 53;
      return out;
    }
  }
  throw ZeroSearchError("refine_zero: no convergence");
}

namespace {

// One Newton run at the current default BigFloat precision.
BigComplex newton_mp(const BigFn& f, const BigComplex& start, int bits, std::string& trace) {
  BigComplex z = start;
  BigFloat tol = pow(BigFloat(2), -(bits - 8));
  for (int it = 0; it < 200; ++it) {
    BigComplex fv, dv;
    f(z, fv, dv);
    if (norm(dv) == 0) throw ZeroSearchError("refine_zero_mp: vanishing derivative");
    const BigComplex step = fv / dv;
    z -= step;
    if (abs(step) <= tol * std::max(BigFloat(1), abs(z))) return z;
  }
  trace += "  [bits=" + std::to_string(bits) + "] max Newton iterations\n";
  throw ZeroSearchError("refine_zero_mp: no convergence at " + std::to_string(bits) + " bits");
}

}  // namespace

RefinedZero refine_zero_mp(const BigFn& f, cplx z0, const PrecisionPolicy& policy) {
  RefinedZero out;
  std::ostringstream trace;
  bool have_prev = false;
  double prev_re = 0, prev_im = 0;
  for (int bits = std::max(policy.bits, 53); bits <= policy.max_bits;
       bits *= policy.escalation_factor) {
    ScopedPrecision scope(bits);
    std::string tr;
    const BigComplex z = newton_mp(f, BigComplex(z0), bits, tr);
    trace << tr;
    const double re = static_cast<double>(z.re);
    const double im = static_cast<double>(z.im);
    trace << "bits=" << bits << " zero=(" << re << "," << im << ")\n";
    if (have_prev) {
      const bool re_ok = std::abs(re - prev_re) <=
                         policy.stabilize_rel * std::max(std::abs(re), 1e-300);
      const bool im_ok = std::abs(im - prev_im) <=
                         policy.stabilize_rel * std::max(std::abs(im), 1e-300);
      if (re_ok && im_ok) {
        BigComplex fv, dv;
        f(z, fv, dv);
        out.zero = cplx(re, im);
        out.residual = static_cast<double>(abs(fv) / std::max(BigFloat(1e-300), abs(dv)));
        out.bits_used = bits;
        out.trace = trace.str();
        return out;
      }
    }
    have_prev = true;
    prev_re = re;
    prev_im = im;
  }
  trace << "max_bits reached without stabilization\n";
  throw ZeroSearchError("refine_zero_mp: precision exhausted\n" + trace.str());
}

}  // namespace qtk::numerics
