#include "delaylab/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "delaylab/errors.hpp"

namespace delaylab {
namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  return out;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t a, std::size_t b) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(b - a);
  for (std::size_t i = a; i < b; ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct Window {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Picks the window of `window_decades` (in x = ln eps) whose local slopes stay
// within +/- stability of the fitted slope, preferring the tightest one.
Window fit_window(DimensionEstimate& est, const std::vector<double>& x, const std::vector<double>& y,
                  const ScalingOptions& opt) {
  const std::size_t n = x.size();
  auto& slope = est.curve.slope;
  slope.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1, b = std::min(n - 1, i + 1);
    slope[i] = (y[b] - y[a]) / (x[b] - x[a]);
  }
  const double width = opt.window_decades * std::log(10.0);
  double best_spread = std::numeric_limits<double>::infinity();
  Window best{0, n};
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t b = a;
    while (b < n && std::abs(x[b] - x[a]) < width) ++b;
    if (b >= n) break;
    ++b;
    const double s = ls_slope(x, y, a, b);
    double dev = 0;
    for (std::size_t i = a; i < b; ++i) dev = std::max(dev, std::abs(slope[i] - s));
    const double spread = dev / std::max(1.0, std::abs(s));
    if (spread < best_spread) best_spread = spread, best = {a, b};
  }
  est.value = ls_slope(x, y, best.begin, best.end);
  est.spread = best_spread;
  if (!std::isfinite(best_spread)) {
    est.note = "scaling range shorter than the fitting window";
  } else {
    est.reliable = best_spread <= opt.stability;
    if (!est.reliable) est.note = "local slope not stable over a full window";
  }
  return best;
}

void require_points(const Eigen::MatrixXd& points) {
  if (points.rows() < 2) throw ValidationError("dims.samples", "need at least two points");
}

}  // namespace

DimensionEstimate correlation_dimension(const Eigen::MatrixXd& points, const ScalingOptions& opt) {
  require_points(points);
  const Eigen::Index n = points.rows();
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) d.push_back((points.row(i) - points.row(j)).norm());
  std::sort(d.begin(), d.end());
  const double pairs = static_cast<double>(d.size());

  DimensionEstimate est;
  const auto first_resolved = std::upper_bound(d.begin(), d.end(), opt.resolution);
  if (first_resolved == d.end()) {
    est.degenerate = true;
    est.reliable = true;
    est.value = 0.0;
    est.note = "all pairwise distances below resolution";
    return est;
  }
  // Scaling range: from the distance of the ~0.1% closest resolved pair to the median.
  const auto resolved = static_cast<std::size_t>(d.end() - first_resolved);
  const std::size_t lo_rank = static_cast<std::size_t>(first_resolved - d.begin()) +
                              std::min(resolved - 1, std::max<std::size_t>(10, resolved / 1000));
  const double lo = d[lo_rank];
  const double hi = d[d.size() / 2];
  if (!(hi > lo)) {
    est.value = 0.0;
    est.reliable = false;
    est.note = "no spread between small and median distances";
    return est;
  }
  est.curve.eps = log_grid(lo, hi, opt.scales);
  std::vector<double> x, y;
  for (double e : est.curve.eps) {
    const double c = static_cast<double>(std::upper_bound(d.begin(), d.end(), e) - d.begin()) / pairs;
    est.curve.value.push_back(c);
    x.push_back(std::log(e));
    y.push_back(std::log(c));
  }
  const auto w = fit_window(est, x, y, opt);
  est.eps_lo = est.curve.eps[w.begin];
  est.eps_hi = est.curve.eps[w.end - 1];
  return est;
}

DimensionEstimate box_counting_dimension(const Eigen::MatrixXd& points, const ScalingOptions& opt) {
  require_points(points);
  const Eigen::RowVectorXd lo_corner = points.colwise().minCoeff();
  const double diam = (points.colwise().maxCoeff() - lo_corner).maxCoeff();
  DimensionEstimate est;
  if (!(diam > opt.resolution)) {
    est.degenerate = true;
    est.reliable = true;
    est.note = "extent below resolution";
    return est;
  }
  // Boxes from diameter/4 down to where nearly every point has its own box.
  const double hi = diam / 4;
  const double lo = std::max(opt.resolution, diam / static_cast<double>(points.rows()));
  if (!(hi > lo)) {
    est.note = "too few points for box counting";
    return est;
  }
  const auto eps = log_grid(lo, hi, opt.scales);
  std::vector<double> x, y;
  // Once most points sit in their own box the count saturates; keep only
  // scales where boxes hold several points on average.
  const double saturated = static_cast<double>(points.rows()) / 4;
  for (double e : eps) {
    std::set<std::vector<long long>> boxes;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      std::vector<long long> key(static_cast<std::size_t>(points.cols()));
      for (Eigen::Index c = 0; c < points.cols(); ++c)
        key[static_cast<std::size_t>(c)] = static_cast<long long>(std::floor((points(i, c) - lo_corner[c]) / e));
      boxes.insert(std::move(key));
    }
    const double count = static_cast<double>(boxes.size());
    if (count > saturated) continue;
    est.curve.eps.push_back(e);
    est.curve.value.push_back(count);
    x.push_back(-std::log(e));
    y.push_back(std::log(count));
  }
  if (x.size() < 3) {
    est.note = "too few points for box counting";
    return est;
  }
  const auto w = fit_window(est, x, y, opt);
  est.eps_lo = est.curve.eps[w.begin];
  est.eps_hi = est.curve.eps[w.end - 1];
  return est;
}

nlohmann::json to_json(const DimensionEstimate& e) {
  return {{"value", e.value},   {"reliable", e.reliable}, {"degenerate", e.degenerate},
          {"eps_lo", e.eps_lo}, {"eps_hi", e.eps_hi},     {"spread", std::isfinite(e.spread) ? nlohmann::json(e.spread) : nlohmann::json(nullptr)},
          {"note", e.note}};
}

}  // namespace delaylab
