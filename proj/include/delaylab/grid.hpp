#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include <Eigen/Core>

namespace delaylab {

/// Periodic box [-L, L)^d sampled with n points per axis.
///
/// Nodes sit at x_i = -L + i*dx. For d = 2 values are stored row-major with the
/// first axis slow.
struct Grid {
  int dim = 1;
  double half_length = 0.0;
  std::int64_t points_per_axis = 0;

  Grid() = default;
  Grid(int d, double L, std::int64_t n);

  double spacing() const { return 2.0 * half_length / static_cast<double>(points_per_axis); }
  /// Volume element dx^d used by every quadrature on the grid.
  double cell_volume() const { return std::pow(spacing(), dim); }
  Eigen::Index size() const {
    return static_cast<Eigen::Index>(dim == 1 ? points_per_axis : points_per_axis * points_per_axis);
  }
  double coordinate(std::int64_t i) const { return -half_length + static_cast<double>(i) * spacing(); }
  /// Euclidean distance from the origin of flat node `idx`.
  double radius(Eigen::Index idx) const;

  /// Throws ValidationError when L < 2K, i.e. the split ball does not fit.
  void require_contains_ball(double K) const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

}  // namespace delaylab
