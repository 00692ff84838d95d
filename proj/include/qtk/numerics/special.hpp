#pragma once

#include <complex>

namespace qtk::numerics {

/// Faddeeva function w(z) = e^{-z^2} erfc(-iz) for Im(z) >= 0.
std::complex<double> faddeeva_w(std::complex<double> z);

/// Complementary error function on the complex plane.
/// Relative error <= ~1e-13 for |z| <= 30. Overflows (|result| > ~1e308)
/// produce inf components; use erfc_scaled then.
std::complex<double> complex_erfc(std::complex<double> z);

/// erfc(z) = mantissa * 10^log10_scale, valid where complex_erfc would overflow.
struct ScaledComplex {
  std::complex<double> mantissa;
  double log10_scale;
  std::complex<double> value() const { return mantissa * std::pow(10.0, log10_scale); }
};
ScaledComplex complex_erfc_scaled(std::complex<double> z);

}  // namespace qtk::numerics
