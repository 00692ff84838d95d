#pragma once

#include <array>
#include <complex>

#include "qtk/numerics/mp.hpp"
#include "qtk/numerics/special.hpp"
#include "qtk/jost/potential.hpp"

namespace qtk::jost {

using numerics::BigComplex;
using numerics::complex_traits;
using cplx = std::complex<double>;

/// cos(kappa d) and sin(kappa d)/kappa as entire functions of w = kappa^2,
/// with derivatives in w up to third order. Near w d^2 = 0 the closed forms
/// divide by w, so a power series takes over there.
template <typename C>
struct TrigPair {
  C c;                    // cos(kappa d)
  C s;                    // sin(kappa d)/kappa
  std::array<C, 3> dc;    // d^n c / dw^n, n = 1..3
  std::array<C, 3> ds;    // d^n s / dw^n
};

template <typename C>
TrigPair<C> trig_pair(const C& w, const typename complex_traits<C>::real_type& d);

/// State propagated across the potential: phi, phi' and their k-derivatives
/// up to order 3 (orders 0..deriv_order are meaningful).
template <typename C>
struct RegularSolution {
  std::array<C, 4> phi;   // d^n/dk^n phi(k, r)
  std::array<C, 4> dphi;  // d^n/dk^n phi'(k, r)
};

/// Propagates the regular solution phi(k,0)=0, phi'(k,0)=1 to r = R_V and
/// assembles F(k) = e^{i k R_V} (phi' - i k phi) with k-derivatives.
/// deriv_order in [0,3].
template <typename C>
std::array<C, 4> jost_f_derivs(const StepPotential& pot, const C& k, int deriv_order = 1);

/// F(k) and dF/dk, double precision.
struct JostValue {
  cplx f;
  cplx df;
};
JostValue jost_f(const StepPotential& pot, cplx k);

/// Scaled evaluation for contours deep in the complex plane where |F|
/// overflows: F = mantissa * 10^log10_scale.
numerics::ScaledComplex jost_f_scaled(const StepPotential& pot, cplx k);

/// Irregular solution f(k, r); equals e^{ikr} for r >= R_V, propagated
/// inward region by region.
cplx gamow_function(const StepPotential& pot, cplx k, double r);

/// S(k) = F(-k)/F(k); |S| = 1 on the real axis.
cplx s_matrix(const StepPotential& pot, cplx k);

/// S and its first three k-derivatives from the analytic F-derivatives.
std::array<cplx, 4> s_matrix_derivs(const StepPotential& pot, cplx k);

/// High-precision F and dF at the current BigFloat precision.
void jost_f_big(const StepPotential& pot, const BigComplex& k, BigComplex& f, BigComplex& df);

}  // namespace qtk::jost
