#include "delaylab/grid.hpp"

#include <bit>
#include <string>

#include "delaylab/errors.hpp"

namespace delaylab {

Grid::Grid(int d, double L, std::int64_t n) : dim(d), half_length(L), points_per_axis(n) {
  if (d != 1 && d != 2) throw ValidationError("grid.d", "must be 1 or 2, got " + std::to_string(d));
  if (!std::isfinite(L) || L <= 0.0) throw ValidationError("grid.L", "must be finite and positive");
  if (n < 16 || !std::has_single_bit(static_cast<std::uint64_t>(n)))
    throw ValidationError("grid.n", "must be a power of two >= 16, got " + std::to_string(n));
}

double Grid::radius(Eigen::Index idx) const {
  if (dim == 1) return std::abs(coordinate(idx));
  const auto n = static_cast<Eigen::Index>(points_per_axis);
  const double x = coordinate(idx / n);
  const double y = coordinate(idx % n);
  return std::hypot(x, y);
}

void Grid::require_contains_ball(double K) const {
  if (half_length < 2.0 * K)
    throw ValidationError("grid.L", "half-length " + std::to_string(half_length) +
                                        " must be at least 2K = " + std::to_string(2.0 * K));
}

}  // namespace delaylab
