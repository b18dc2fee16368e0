#pragma once

#include <span>
#include <vector>

#include "delaylab/field.hpp"

namespace delaylab {

/// History u_t on [-tau, 0]: samples at theta_j = -tau + j*dt, j = 0..n_tau.
struct Segment {
  std::vector<Field> samples;
  double dt = 0.0;

  Segment() = default;
  Segment(std::vector<Field> s, double step);

  /// Same field at every theta.
  static Segment constant(const Field& value, int n_tau, double tau);
  /// Linear interpolation in theta between `oldest` (theta = -tau) and `newest` (theta = 0).
  static Segment linear(const Field& oldest, const Field& newest, int n_tau, double tau);

  int n_tau() const { return static_cast<int>(samples.size()) - 1; }
  double tau() const { return dt * n_tau(); }
  const Grid& grid() const { return samples.front().grid(); }
  const Field& newest() const { return samples.back(); }
  /// ||.||_C, the max over samples of the L2 norm.
  double norm() const { return sup_norm<double>(samples); }

  friend Segment operator-(const Segment& a, const Segment& b);
};

}  // namespace delaylab
