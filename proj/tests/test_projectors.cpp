#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "delaylab/errors.hpp"
#include "delaylab/projectors.hpp"

using namespace delaylab;
using std::numbers::pi;

TEST_CASE("basis is orthonormal and supported in the ball") {
  const Grid g(1, 2 * pi, 256);
  const double K = pi / 2;
  const auto proj = make_projectors(g, K, 6);
  const Eigen::MatrixXd gram = proj.basis.transpose() * proj.basis * g.spacing();
  CHECK((gram - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
  for (Eigen::Index i = 0; i < proj.basis.rows(); ++i)
    if (std::abs(g.coordinate(i)) >= K + 1e-12) CHECK(proj.basis.row(i).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("first sine mode lies in P") {
  const Grid g(1, 2 * pi, 512);
  const double K = pi / 2;
  const auto proj = make_projectors(g, K, 3);
  const Field u = Field::from_function(g, [&](double x) { return std::abs(x) < K ? std::sin(pi * (x + K) / (2 * K)) : 0.0; });
  const auto s = split_snapshot(u, proj);
  CHECK(std::sqrt(s.q_sq) <= 1e-3 * std::sqrt(s.total_sq));
  CHECK(s.rho_sq == doctest::Approx(0.0));
  const auto c = mode_coefficients(u, proj);
  CHECK(std::abs(c[0]) == doctest::Approx(std::sqrt(s.total_sq)).epsilon(1e-3));
}

TEST_CASE("split is exact for random fields") {
  const Grid g(1, 2 * pi, 256);
  const auto proj = make_projectors(g, pi / 2, 5);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    Field u(g);
    for (auto& v : u.values()) v = nd(rng);
    const auto s = split_snapshot(u, proj);
    const double total = std::pow(norm_L2(u), 2);
    CHECK(std::abs(s.total_sq - total) <= 1e-10 * total);
    CHECK(std::abs(s.inside_sq + s.rho_sq - s.total_sq) <= 1e-10 * total);
    CHECK(std::abs(s.p_sq + s.q_sq - s.inside_sq) <= 1e-10 * total);
    CHECK(s.p_sq >= 0.0);
    CHECK(s.q_sq >= 0.0);
  }
}

TEST_CASE("outside field has only a tail part") {
  const Grid g(1, 2 * pi, 128);
  const double K = 1.0;
  const auto proj = make_projectors(g, K, 4);
  const Field u = Field::from_function(g, [&](double x) { return std::abs(x) > K + 0.1 ? std::cos(x) : 0.0; });
  const auto s = split_snapshot(u, proj);
  CHECK(s.p_sq == doctest::Approx(0.0));
  CHECK(s.q_sq == doctest::Approx(0.0));
  CHECK(s.rho_sq == doctest::Approx(s.total_sq));
}

TEST_CASE("segment components are sups over samples") {
  const Grid g(1, 2 * pi, 128);
  const auto proj = make_projectors(g, 1.0, 2);
  const Field a = Field::constant(g, 1.0), b = Field::constant(g, 3.0);
  const auto comp = project_components(Segment::linear(a, b, 8, 1.0), proj);
  REQUIRE(comp.samples.size() == 9);
  CHECK(comp.sup.rho == doctest::Approx(std::sqrt(comp.samples.back().rho_sq)));
  CHECK(comp.sup.p == doctest::Approx(std::sqrt(comp.samples.back().p_sq)));
}

TEST_CASE("projector arguments are validated") {
  const Grid g(1, 2 * pi, 64);
  CHECK_THROWS_AS(make_projectors(g, pi / 2, 0), ValidationError);
  CHECK_THROWS_AS(make_projectors(g, 4.0, 2), ValidationError);
  CHECK_THROWS_AS(make_projectors(Grid(2, 2 * pi, 16), 1.0, 2), UnimplementedError);
}
