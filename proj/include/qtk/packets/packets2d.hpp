#pragma once

#include <vector>

#include "qtk/packets/packets.hpp"

namespace qtk::packets {

/// Product-form 2D packet: transverse Gaussian (speed 0) times longitudinal
/// Gaussian (speed v), evaluated in coordinates rotated by `rotation`:
///   x' = cos(th) x - sin(th) z,  z' = cos(th) z + sin(th) x.
struct Packet2D {
  FreeGaussian1D longitudinal;  // sigma_l, speed v, along z'
  FreeGaussian1D transverse;    // sigma_t, speed 0, along x'
  double rotation = 0.0;
  double x_offset = 0.0;  // subtracted from x' before evaluation
  double z_offset = 0.0;
  double start_time = 0.0;

  cplx amplitude(double x, double z, double t) const;
  /// (d/dx, d/dz) of amplitude, analytic.
  std::pair<cplx, cplx> gradient(double x, double z, double t) const;
  /// Full 2D momentum amplitude (unitary convention in both variables).
  cplx momentum_amplitude(double kx, double kz, double t) const;
};

struct Packet2DSum {
  std::vector<std::pair<cplx, Packet2D>> terms;

  cplx amplitude(double x, double z, double t) const;
  cplx momentum_amplitude(double kx, double kz, double t) const;
  double density(double x, double z, double t) const;
  /// (j_x, j_z) from analytic gradients; mass taken from the first term.
  std::pair<double, double> current(double x, double z, double t) const;
  /// Fourier transform in z alone, by quadrature over the packet supports.
  cplx partial_fourier_z(double x, double kz, double t) const;
  double mass() const;
};

/// Two z-spin channels with opposite magnetic phases e^{-+ i B t}.
struct SpinorState {
  WavePacketSum up;    // psi_{z,+}
  WavePacketSum down;  // psi_{z,-}
  double field = 0.0;  // B, energy units

  cplx channel_amplitude(int s, double z, double t) const;  // s = +1 or -1
  /// psi_{x,+} = (psi_{z,+} + psi_{z,-})/sqrt(2), channel phases included.
  cplx xplus_amplitude(double z, double t) const;
  cplx xplus_damplitude_dz(double z, double t) const;
  double xplus_current(double z, double t) const;
};

}  // namespace qtk::packets
