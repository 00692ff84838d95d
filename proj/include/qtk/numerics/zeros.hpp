#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include "qtk/numerics/mp.hpp"
#include "qtk/numerics/special.hpp"

namespace qtk::numerics {

struct ZeroSearchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Rect {
  double re_lo, re_hi, im_lo, im_hi;
  double width() const { return re_hi - re_lo; }
  double height() const { return im_hi - im_lo; }
  bool contains(std::complex<double> z) const {
    return z.real() >= re_lo && z.real() <= re_hi && z.imag() >= im_lo && z.imag() <= im_hi;
  }
};

/// Functions handed to the counter return mantissa * 10^log10_scale so that
/// contours deep in the complex plane (|F| ~ 10^10000) stay representable.
using ScaledFn = std::function<ScaledComplex(std::complex<double>)>;

ScaledFn scaled_from_plain(std::function<std::complex<double>(std::complex<double>)> f);

struct CountOptions {
  double tol = 0.25;                // max distance of the winding integral from an integer
  double boundary_threshold = 8.0;  // |F| below 10^-threshold of local scale => perturb
  double perturb_frac = 1e-6;
  int max_retries = 5;
  int min_steps_per_edge = 16;
  double h_min_frac = 1e-12;
};

struct CountResult {
  long count = 0;
  Rect rect_used{};
  bool perturbed = false;
  long evals = 0;
};

/// Number of zeros (with multiplicity) of an analytic function inside a
/// rectangle, by winding-number phase tracking along the boundary.
/// A suspected boundary zero grows the rectangle by perturb_frac and retries.
CountResult count_zeros_argument_principle(const ScaledFn& f, Rect rect, CountOptions opt = {});

struct PrecisionPolicy {
  int bits = 96;
  int escalation_factor = 2;
  int max_bits = 6144;
  double stabilize_rel = 1e-4;  // independent relative agreement of Re and Im
};

struct RefinedZero {
  std::complex<double> zero;
  double residual = 0.0;  // |F(zero)| relative to the evaluation scale
  int bits_used = 0;
  std::string trace;
};

/// Newton refinement in double precision. dF may be empty (central differences
/// in the complex plane are used then).
RefinedZero refine_zero(const std::function<std::complex<double>(std::complex<double>)>& f,
                        const std::function<std::complex<double>(std::complex<double>)>& df,
                        std::complex<double> z0, double tol = 1e-12, int max_iter = 80);

/// Evaluation callback for the escalating refiner: value and derivative at the
/// current working precision.
using BigFn = std::function<void(const BigComplex& z, BigComplex& f, BigComplex& df)>;

/// Newton at escalating precision until the zero stabilizes to
/// policy.stabilize_rel in real and imaginary part independently.
/// Im parts ~1e-39 below an O(1) real part are the sizing case.
RefinedZero refine_zero_mp(const BigFn& f, std::complex<double> z0,
                           const PrecisionPolicy& policy = {});

}  // namespace qtk::numerics
