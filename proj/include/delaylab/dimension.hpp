#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

namespace delaylab {

struct ScalingOptions {
  /// Distances at or below this are indistinguishable from zero.
  double resolution = 0.0;
  int scales = 48;
  /// Width of the fitted window, in decades of epsilon.
  double window_decades = 1.0;
  /// Allowed spread of local slopes inside the window (relative, or absolute when the slope is below 1).
  double stability = 0.05;
};

struct ScalingCurve {
  std::vector<double> eps;
  std::vector<double> value;  // C(eps) or N(eps)
  std::vector<double> slope;  // local log-log slope
};

struct DimensionEstimate {
  double value = 0.0;
  bool reliable = false;
  /// Every pair of points closer than the resolution: the set is a point.
  bool degenerate = false;
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  double spread = 0.0;
  std::string note;
  ScalingCurve curve;
};

/// Grassberger-Procaccia: slope of ln C(eps) against ln eps, C the fraction of
/// point pairs closer than eps. Rows of `points` are the samples.
DimensionEstimate correlation_dimension(const Eigen::MatrixXd& points, const ScalingOptions& options = {});

/// Slope of ln N(eps) against ln(1/eps), N the number of occupied grid boxes.
DimensionEstimate box_counting_dimension(const Eigen::MatrixXd& points, const ScalingOptions& options = {});

nlohmann::json to_json(const DimensionEstimate& estimate);

}  // namespace delaylab
