#include "qtk/numerics/special.hpp"

#include <cmath>

namespace qtk::numerics {

namespace {

using cplx = std::complex<double>;
constexpr double kInvSqrtPi = 0.564189583547756286948079;

// Weideman (1994) rational approximation, N = 40 terms; accurate to
// ~1e-15 relative for |z| <= 10 in the closed upper half plane.
constexpr double kWeidemanL = 5.3182958969449885;
constexpr double kWeidemanA[40] = {
    -1.7356980998791865e-15, 1.201674910759281e-15,  1.1519170220749485e-14,
    -5.231716366324404e-15,  -7.071088022159408e-14, 1.3778224047664046e-14,
    4.5341448909434655e-13,  1.203330952919568e-13,  -2.90771851041427e-12,
    -2.7277735625830245e-12, 1.771418567386718e-11,  3.4727420938907015e-11,
    -9.055138860958323e-11,  -3.5632350403602684e-10, 2.1085990731251058e-10,
    3.017780425551564e-09,   3.249746582945079e-09,  -1.8315616834296834e-08,
    -6.351773483015411e-08,  1.419864237295343e-08,  5.912136953029057e-07,
    1.4835661133172014e-06,  -1.066013898416273e-06, -1.8007447144723407e-05,
    -5.5913092642348794e-05, -3.939363145483805e-05, 0.000439807015986967,
    0.002705405633073729,    0.010048186242783535,   0.02920291647124188,
    0.07182361779074328,     0.15504263802479504,    0.2998943799615006,
    0.5266528988277086,      0.8472174576593815,     1.2563815675765133,
    1.7253830848179779,      2.201513794878312,      2.6160541527618597,
    2.899624509389705};

cplx w_weideman(cplx z) {
  const cplx iz(-z.imag(), z.real());
  const cplx den = kWeidemanL - iz;
  const cplx Z = (kWeidemanL + iz) / den;
  cplx p = 0.0;
  for (double a : kWeidemanA) p = p * Z + a;
  return 2.0 * p / (den * den) + kInvSqrtPi / den;
}

// Laplace continued fraction, downward evaluation; good for |z| >~ 6.
cplx w_contfrac(cplx z) {
  constexpr int kDepth = 24;
  cplx r = 0.0;
  for (int n = kDepth; n >= 1; --n) r = (0.5 * n) / (z - r);
  return cplx(0.0, kInvSqrtPi) / (z - r);
}

// w(z) for Im z >= 0.
cplx w_upper(cplx z) {
  return (std::norm(z) <= 64.0) ? w_weideman(z) : w_contfrac(z);
}

}  // namespace

std::complex<double> faddeeva_w(cplx z) {
  if (z.imag() >= 0.0) return w_upper(z);
  // w(z) = 2 exp(-z^2) - w(-z); may overflow for large |Im z| (genuine growth).
  const cplx expz2 = std::exp(-z * z);
  return 2.0 * expz2 - w_upper(-z);
}

std::complex<double> complex_erfc(cplx z) {
  if (z.real() < 0.0) {
    const cplx e = complex_erfc(-z);
    return cplx(2.0, 0.0) - e;
  }
  // erfc(z) = e^{-z^2} w(iz); Re z >= 0 puts iz in the upper half plane.
  const cplx iz(-z.imag(), z.real());
  return std::exp(-z * z) * w_upper(iz);
}

ScaledComplex complex_erfc_scaled(cplx z) {
  constexpr double kLog10E = 0.4342944819032518;
  if (z.real() < 0.0) {
    // 2 - erfc(-z): the erfc(-z) part is sub-dominant for Re z < 0 unless z
    // is nearly imaginary, where the scaled path below is exact anyway.
    ScaledComplex s = complex_erfc_scaled(-z);
    if (s.log10_scale < 250.0) {
      return {cplx(2.0, 0.0) - s.value(), 0.0};
    }
    return {-s.mantissa, s.log10_scale};
  }
  const cplx iz(-z.imag(), z.real());
  const cplx w = w_upper(iz);
  const cplx mz2 = -z * z;
  const double l10 = mz2.real() * kLog10E;
  const cplx phase = std::exp(cplx(0.0, mz2.imag()));
  return {phase * w, l10};
}

}  // namespace qtk::numerics
