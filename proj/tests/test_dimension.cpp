#include <doctest.h>

#include <cmath>
#include <random>

#include "delaylab/dimension.hpp"

using namespace delaylab;

namespace {

Eigen::MatrixXd uniform_cube(int n, int dim, int seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u;
  Eigen::MatrixXd pts(n, dim);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < dim; ++c) pts(i, c) = u(rng);
  return pts;
}

}  // namespace

TEST_CASE("segment in space has dimension one") {
  const auto t = uniform_cube(800, 1, 3);
  Eigen::MatrixXd line(800, 3);
  line << t, 2 * t, -t;
  const auto c = correlation_dimension(line);
  CHECK(c.value == doctest::Approx(1.0).epsilon(0.05));
  CHECK(c.reliable);
  CHECK(box_counting_dimension(line).value == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("filled square has dimension two") {
  const auto sq = uniform_cube(3000, 2, 5);
  CHECK(correlation_dimension(sq).value == doctest::Approx(2.0).epsilon(0.1));
  CHECK(box_counting_dimension(sq).value == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("repeated point is degenerate") {
  Eigen::MatrixXd pts = Eigen::MatrixXd::Constant(50, 4, 0.3);
  pts(7, 2) += 1e-14;
  ScalingOptions opt;
  opt.resolution = 1e-9;
  const auto c = correlation_dimension(pts, opt);
  CHECK(c.degenerate);
  CHECK(c.value == 0.0);
  CHECK(box_counting_dimension(pts, opt).degenerate);
}

TEST_CASE("geometric sequence converging to a point") {
  Eigen::MatrixXd pts(200, 2);
  for (int i = 0; i < 200; ++i) pts.row(i) << std::pow(0.9, i), -0.5 * std::pow(0.9, i);
  ScalingOptions opt;
  opt.resolution = 1e-12;
  CHECK(correlation_dimension(pts, opt).value < 0.2);
}

TEST_CASE("correlation sum is monotone") {
  const auto c = correlation_dimension(uniform_cube(400, 3, 11));
  for (std::size_t i = 1; i < c.curve.value.size(); ++i) CHECK(c.curve.value[i] >= c.curve.value[i - 1]);
  CHECK(c.eps_lo < c.eps_hi);
}

TEST_CASE("too few points") {
  CHECK_THROWS(correlation_dimension(Eigen::MatrixXd::Zero(1, 3)));
}
