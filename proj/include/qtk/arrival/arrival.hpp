#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qtk/packets/packets.hpp"

namespace qtk::arrival {

using packets::WavePacketSum;

struct ArrivalWindow {
  double detector = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;

  ArrivalWindow(double D, double T) : detector(D), t_end(T) {}
  ArrivalWindow(double D, double t0, double T) : detector(D), t_start(t0), t_end(T) {}

  /// T = (|distance of furthest packet| - 3 sigma)/(k + 5/12), the convention
  /// used for the spreading study; k is the packet's mean momentum.
  static ArrivalWindow default_for(const WavePacketSum& s, double detector);
};

/// (m L / t^2) |psi~(m L / t)|^2, momentum amplitude at t = 0.
double semiclassical_density(const WavePacketSum& state, double L, double t);

/// Raw flux j(D, t) and its window-normalized variant.
double flux_raw(const WavePacketSum& state, double D, double t);
struct NormalizedFlux {
  std::function<double(double)> density;  // j(D,t)/integral over window
  double total;                            // integral of j over the window
};
NormalizedFlux flux_density(const WavePacketSum& state, const ArrivalWindow& window);

/// Kijowski arrival density at detector D; sum over both momentum half-lines,
/// integrates to ||psi||^2 over t in (-inf, inf).
double kijowski_density(const WavePacketSum& state, double D, double t);

/// N_psi: integral over the window of |j| where j < 0, with sign-change
/// bracketing before quadrature.
double negative_flux(const WavePacketSum& state, double D, const ArrivalWindow& window,
                     double tol = 1e-9);

/// M_{g1,g2} = (N_{g1+g2} + N_{g1-g2}) chi0, with chi0 = 0 iff exactly one of
/// the two N's vanishes.
double interference_metric(const packets::FreeGaussian1D& g1, const packets::FreeGaussian1D& g2,
                           double D, double zero_tol = 1e-9);

struct ThresholdGeometry {
  double x1 = 4.0, x2 = -4.0, D = 10.0;
};

/// Smallest k >= 0 with N_{g1+g2}(k) = N_{g1-g2}(k) = 0 for equal-momentum
/// packets of width sigma at x1, x2; bisection on k.
double backflow_threshold(double sigma, const ThresholdGeometry& geom = {},
                          double k_tol = 5e-3);

struct Condition {
  bool satisfied = false;
  double margin = 0.0;  // >= 1 means satisfied
};
struct FeasibilityReport {
  Condition separation;        // sigma1 <= delta/6
  Condition momentum;          // m v1 >= 3 L / (delta sigma1)
  Condition fringe_resolvable; // m v1^2/2 <= pi L / (delta tau)
};

FeasibilityReport overtaking_feasibility(double sigma1, double delta, double L, double v1,
                                         double mass, double tau_detector,
                                         double safety = 1.0);

/// Strict local maxima of f sampled on [lo, hi] with n points.
int count_local_maxima(const std::function<double(double)>& f, double lo, double hi, int n);

}  // namespace qtk::arrival
