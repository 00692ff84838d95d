#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qtk/arrival/arrival.hpp"
#include "qtk/packets/packets.hpp"

namespace qtk::bohmian {

using packets::WavePacketSum;

struct NodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// dQ/dt = j/|psi|^2; throws NodeError when |psi|^2 < node_frac * scale.
double velocity_field(const WavePacketSum& state, double x, double t,
                      double node_frac = 1e-12);

struct TrajectoryControls {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double h_init = 1e-3;
  double node_frac = 1e-12;   // |psi|^2 threshold relative to density scale
  double v_cap_frac = 1e6;    // velocity cap in units of a packet-scale velocity
  int max_steps = 2'000'000;
};

enum class TrajectoryStatus { completed, node_stalled };

struct Trajectory {
  std::vector<std::pair<double, double>> samples;  // (t, Q(t))
  TrajectoryStatus status = TrajectoryStatus::completed;
  double stalled_at = 0.0;
};

/// Integrates the guiding equation through the given sample times
/// (t_grid strictly increasing, first entry is the start time).
Trajectory trajectory(const WavePacketSum& state, double q0, const std::vector<double>& t_grid,
                      const TrajectoryControls& controls = {});

/// First-crossing record of x = D: time, direction (+1 rightward), or nothing.
struct Crossing {
  double t;
  int direction;
};
std::optional<Crossing> first_crossing(const WavePacketSum& state, double q0, double D,
                                       double t_end, const TrajectoryControls& controls = {});

enum class CrossingConvention : std::uint8_t {
  first_any,        // first time |Q - D| changes sign, either direction
  first_rightward,  // first crossing with positive velocity
};

struct TruncatedCurrent {
  std::vector<double> bin_edges;  // size n_bins + 1
  std::vector<double> mass;       // per-bin probability mass
  double no_arrival_mass = 0.0;
  int stalled_count = 0;  // node-stalled trajectories (counted as no-arrival)
  std::vector<double> first_times;  // raw first-crossing times (arrivals only)
};

struct SamplingOptions {
  int n_samples = 1000;
  std::uint64_t seed = 0;
  bool stratified = false;  // deterministic u_i = (i+1/2)/n instead of RNG
  int n_bins = 64;
  int cdf_grid = 4096;
};

/// Histogram of first crossing times of x = D over the window, initial points
/// sampled from |psi_0|^2 by inverse CDF.
TruncatedCurrent truncated_current(const WavePacketSum& state, double D,
                                   const arrival::ArrivalWindow& window,
                                   const SamplingOptions& opt,
                                   CrossingConvention conv = CrossingConvention::first_any,
                                   const TrajectoryControls& controls = {});

/// P(v(t) < 0) = integral of |psi|^2/||psi||^2 over {x : j(x,t) < 0}.
double prob_negative_velocity(const WavePacketSum& state, double t);

/// P(p < 0) from the momentum representation.
double prob_negative_momentum(const WavePacketSum& state);

/// Inverse-CDF position samples from |psi_0|^2 (used by equivariance checks).
std::vector<double> sample_initial_positions(const WavePacketSum& state,
                                             const SamplingOptions& opt);

/// CSV export: t_lo, t_hi, mass rows plus a trailing no-arrival line.
std::string histogram_csv(const TruncatedCurrent& tc);

}  // namespace qtk::bohmian
