#pragma once

#include "qtk/packets/packets2d.hpp"

namespace qtk::arrival {

/// Converging double slit: two arms of a split pulse meeting at a screen at
/// z = L. Arm 1 runs along z from (d, 0) delayed by delta/v; arm 2 is rotated.
struct DoubleSlitSetup {
  double v = 1.0;        // common speed at the slits
  double sigma_l = 1.0;  // longitudinal width
  double sigma_t = 1.0;  // transverse width
  double d = 0.0;        // slit separation along x
  double delta = 0.0;    // arm-length difference
  double theta = 0.0;    // arm-2 rotation
  double mass = 1.0;
  double phase = 0.0;    // controllable relative phase between the arms

  packets::Packet2DSum state() const;
};

/// Flux of the current through the screen: integral over x of j_z(x, L, t),
/// truncated at 8 transverse sigmas around the arm centers.
double double_slit_flux(const packets::Packet2DSum& s, double L, double t);

/// Far-detector joint density |Psi~(k(x,t), k(L,t))|^2 |dk_z/dt dk_x/dx|.
double double_slit_joint_far(const packets::Packet2DSum& s, double L, double x, double t);

/// Mixed joint density |F_z[Psi](x, k(L,t), t)|^2 |dk_z/dt|.
double double_slit_joint_mixed(const packets::Packet2DSum& s, double L, double x, double t);

struct PauliArrival {
  double semiclassical;
  double flux;
  bool separation_warning;  // semiclassical formula presumes separated k-supports
};

/// Two-channel arrival statistics at detector z = L.
PauliArrival pauli_arrival(const packets::SpinorState& state, double L, double t);

}  // namespace qtk::arrival
