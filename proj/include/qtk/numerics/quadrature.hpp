#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace qtk::numerics {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename V>
struct QuadResult {
  V value{};
  double error_estimate = 0.0;
  bool accuracy_warning = false;  // set when roundoff stops refinement short of tol
  int subdivisions = 0;
};

struct QuadOptions {
  double tol = 1e-10;
  int max_intervals = 4000;
};

/// Adaptive Gauss-Kronrod (G7,K15) on a finite interval.
QuadResult<double> integrate(const std::function<double(double)>& f, double a, double b,
                             const QuadOptions& opt = {});
QuadResult<std::complex<double>> integrate_c(const std::function<std::complex<double>(double)>& f,
                                             double a, double b, const QuadOptions& opt = {});

/// [a, inf) via the substitution x = a + t/(1-t), t in [0,1).
QuadResult<double> integrate_to_inf(const std::function<double(double)>& f, double a,
                                    const QuadOptions& opt = {});
QuadResult<std::complex<double>> integrate_to_inf_c(
    const std::function<std::complex<double>(double)>& f, double a, const QuadOptions& opt = {});

/// Convenience: value or throw if even the warning threshold is missed.
double integrate_value(const std::function<double(double)>& f, double a, double b,
                       double tol = 1e-10);

}  // namespace qtk::numerics
