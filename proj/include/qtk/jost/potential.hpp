#pragma once

#include <stdexcept>
#include <vector>

namespace qtk::jost {

/// Compactly supported, rotationally symmetric, piecewise-constant radial
/// potential: V(r) = values[i] on [edges[i], edges[i+1]), zero beyond the
/// last edge R_V. Units hbar = 1, m = 1/2 (so E = k^2).
class StepPotential {
 public:
  StepPotential(std::vector<double> inner_edges, std::vector<double> values);

  /// Barrier of height v0 on [r1, r2], zero on [0, r1): the standard
  /// two-step configuration used throughout.
  static StepPotential barrier(double r1, double r2, double v0);

  const std::vector<double>& edges() const { return edges_; }    // 0 = e_0 < ... < e_M = R_V
  const std::vector<double>& values() const { return values_; }  // size M
  std::size_t regions() const { return values_.size(); }

  double r_v() const { return edges_.back(); }
  double value_at(double r) const;
  double norm_l1() const;    // ||V||_1 = sum |V_i| dr_i
  double norm_rv_l1() const; // ||r V(r)||_1
  double max_abs() const;

 private:
  std::vector<double> edges_;
  std::vector<double> values_;
};

}  // namespace qtk::jost
