#pragma once

#include "qtk/decay/model.hpp"

namespace qtk::decay {

/// Pi_E(E) = |psihat(sqrt E)|^2 / (2 sqrt(E) ||psi||^2).
double energy_density(const DecayModel& m, double E, int bits = 0);

struct LinewidthResult {
  double gamma_num;      // FWHM of Pi_E (outermost half-max pair)
  double bracket_lo;     // E_L^+ - E_L^-
  double bracket_hi;     // E_U^+ - E_U^-
  bool bracket_defined;  // m > 0 and both square roots real
  double delta;          // the proof's delta, surfaced for audit
  double asymptotic;     // gamma = 4 alpha beta
};

/// Numeric FWHM plus the closed-form brackets (derived with sigma = beta;
/// enforced here).
LinewidthResult linewidth(const DecayModel& m);

}  // namespace qtk::decay
