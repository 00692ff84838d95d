#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>

namespace qtk::numerics {

/// Dynamic-precision real; precision is set per call site via ScopedPrecision.
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

inline int digits10_for_bits(int bits) {
  return static_cast<int>(std::ceil(bits * 0.30102999566398119521)) + 2;
}

/// Sets the default BigFloat precision for the lifetime of the object.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(int bits) : saved_(BigFloat::default_precision()) {
    BigFloat::default_precision(digits10_for_bits(bits));
  }
  ~ScopedPrecision() { BigFloat::default_precision(saved_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_;
};

/// Minimal complex type over BigFloat. std::complex is only specified for
/// the builtin floating types, so the high-precision path carries its own.
struct BigComplex {
  BigFloat re{0}, im{0};

  BigComplex() = default;
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(const BigFloat& r) : re(r), im(0) {}
  explicit BigComplex(double r) : re(r), im(0) {}
  explicit BigComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_double() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator*(const BigFloat& s, const BigComplex& a) {
    return {s * a.re, s * a.im};
  }
  friend BigComplex operator*(const BigComplex& a, const BigFloat& s) { return s * a; }
  friend BigComplex operator/(const BigComplex& a, const BigFloat& s) {
    return {a.re / s, a.im / s};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    const BigFloat d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
  BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
};

inline BigFloat norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }
inline BigFloat abs(const BigComplex& z) { return sqrt(norm(z)); }
inline BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }
inline const BigFloat& real(const BigComplex& z) { return z.re; }
inline const BigFloat& imag(const BigComplex& z) { return z.im; }

inline BigComplex sqrt(const BigComplex& z) {
  if (z.im == 0 && z.re >= 0) return {sqrt(z.re), BigFloat(0)};
  const BigFloat r = abs(z);
  BigFloat u = sqrt((r + fabs(z.re)) / 2);
  BigFloat v = z.im / (2 * u);
  if (z.re >= 0) return {u, v};
  // principal branch: Re >= 0
  if (z.im >= 0) return {fabs(v), u};
  return {fabs(v), -u};
}

inline BigComplex exp(const BigComplex& z) {
  const BigFloat e = exp(z.re);
  return {e * cos(z.im), e * sin(z.im)};
}
inline BigComplex cos(const BigComplex& z) {
  return {cos(z.re) * cosh(z.im), -sin(z.re) * sinh(z.im)};
}
inline BigComplex sin(const BigComplex& z) {
  return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

// Shims so templated kernels can treat std::complex<double> and BigComplex alike.
template <typename C>
struct complex_traits;

template <>
struct complex_traits<std::complex<double>> {
  using real_type = double;
  static std::complex<double> make(double re, double im) { return {re, im}; }
  static std::complex<double> from(std::complex<double> z) { return z; }
  static double eps() { return 2.220446049250313e-16; }
};

template <>
struct complex_traits<BigComplex> {
  using real_type = BigFloat;
  static BigComplex make(double re, double im) { return {BigFloat(re), BigFloat(im)}; }
  static BigComplex from(std::complex<double> z) { return BigComplex(z); }
  static BigFloat eps() {
    return pow(BigFloat(10), -static_cast<int>(BigFloat::default_precision()) + 1);
  }
};

}  // namespace qtk::numerics
