#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "delaylab/errors.hpp"
#include "delaylab/grid.hpp"

namespace delaylab {

/// Real grid function. Value type; arithmetic goes through `values()`.
template <typename Scalar>
class BasicField {
 public:
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  BasicField() = default;
  explicit BasicField(Grid grid) : grid_(std::move(grid)), values_(Array::Zero(grid_.size())) {}
  BasicField(Grid grid, Array values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw GridMismatchError();
  }

  static BasicField constant(const Grid& grid, Scalar a) {
    return BasicField(grid, Array::Constant(grid.size(), a));
  }

  /// Samples `fn(x)` (d = 1) or `fn(x, y)` (d = 2) at the nodes.
  template <typename Fn>
  static BasicField from_function(const Grid& grid, Fn&& fn) {
    BasicField out(grid);
    const auto n = static_cast<Eigen::Index>(grid.points_per_axis);
    if constexpr (std::is_invocable_v<Fn, double>) {
      if (grid.dim != 1) throw GridMismatchError();
      for (Eigen::Index i = 0; i < n; ++i) out.values_[i] = static_cast<Scalar>(fn(grid.coordinate(i)));
    } else {
      if (grid.dim != 2) throw GridMismatchError();
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          out.values_[i * n + j] = static_cast<Scalar>(fn(grid.coordinate(i), grid.coordinate(j)));
    }
    return out;
  }

  const Grid& grid() const { return grid_; }
  const Array& values() const { return values_; }
  Array& values() { return values_; }
  Eigen::Index size() const { return values_.size(); }
  bool empty() const { return values_.size() == 0; }
  bool all_finite() const { return values_.allFinite(); }

  BasicField& operator+=(const BasicField& o) {
    require_same_grid(o);
    values_ += o.values_;
    return *this;
  }
  BasicField& operator-=(const BasicField& o) {
    require_same_grid(o);
    values_ -= o.values_;
    return *this;
  }
  BasicField& operator*=(Scalar a) {
    values_ *= a;
    return *this;
  }
  friend BasicField operator+(BasicField a, const BasicField& b) { return a += b; }
  friend BasicField operator-(BasicField a, const BasicField& b) { return a -= b; }
  friend BasicField operator*(Scalar s, BasicField a) { return a *= s; }

  void require_same_grid(const BasicField& o) const {
    if (!(grid_ == o.grid_)) throw GridMismatchError();
  }

 private:
  Grid grid_;
  Array values_;
};

using Field = BasicField<double>;

/// Indicator of the ball {|x| < K} or of its complement.
class Mask {
 public:
  enum class Region { inside, outside };

  Mask(const Grid& grid, double K, Region region);

  const Grid& grid() const { return grid_; }
  Region region() const { return region_; }
  double radius() const { return radius_; }
  const Eigen::ArrayXd& indicator() const { return indicator_; }
  Mask complement() const;

 private:
  Grid grid_;
  double radius_;
  Region region_;
  Eigen::ArrayXd indicator_;
};

inline Mask inside_ball(const Grid& grid, double K) { return {grid, K, Mask::Region::inside}; }
inline Mask outside_ball(const Grid& grid, double K) { return {grid, K, Mask::Region::outside}; }

/// Grid-weighted L2 norm (sum phi^2 dx^d)^{1/2}.
template <typename Scalar>
Scalar norm_L2(const BasicField<Scalar>& f) {
  return std::sqrt(f.values().square().sum() * static_cast<Scalar>(f.grid().cell_volume()));
}

template <typename Scalar>
Scalar inner_L2(const BasicField<Scalar>& a, const BasicField<Scalar>& b) {
  a.require_same_grid(b);
  return (a.values() * b.values()).sum() * static_cast<Scalar>(a.grid().cell_volume());
}

/// Nodewise product with the mask indicator.
template <typename Scalar>
BasicField<Scalar> apply_mask(const BasicField<Scalar>& f, const Mask& mask) {
  if (!(f.grid() == mask.grid())) throw GridMismatchError();
  return BasicField<Scalar>(f.grid(), f.values() * mask.indicator().template cast<Scalar>());
}

/// The C-norm of a history: max over stored samples of the L2 norm.
template <typename Scalar>
Scalar sup_norm(std::span<const BasicField<Scalar>> samples) {
  Scalar best = 0;
  for (const auto& s : samples) best = std::max(best, norm_L2(s));
  return best;
}

}  // namespace delaylab
