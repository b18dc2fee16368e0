#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "delaylab/bounds.hpp"
#include "delaylab/errors.hpp"

using namespace delaylab;
using std::numbers::pi;

namespace {

// mu=3, sigma=0.2, tau=1, K=pi/2, L_f=0.1 (ricker, epsilon=0.1), c2=1, K_m=1.
ModelParams worked() {
  ModelParams p;
  p.mu = 3.0;
  p.sigma = 0.2;
  p.tau = 1.0;
  p.trunc_radius = pi / 2;
  p.nonlinearity_kind = NonlinKind::ricker;
  p.epsilon = 0.1;
  p.c2 = 1.0;
  p.K_m = 1.0;
  return p;
}

// The log-free form ln(k (2 + 2/alpha)^k) / -ln(zeta).
double dim_bound_direct(int k, double alpha, double z) {
  return std::log(k * std::pow(2.0 + 2.0 / alpha, k)) / std::log(1.0 / z);
}

}  // namespace

TEST_CASE("absorbing radius") {
  ModelParams p;
  p.mu = 1.0;
  p.sigma = 0.2;
  p.tau = 1.0;
  p.nonlinearity_kind = NonlinKind::saturating;
  p.epsilon = 2.0;  // B_f = 1, so M = 1
  CHECK(absorbing_radius(p) == doctest::Approx(4.3826622081229765).epsilon(1e-13));
  p.sigma = 0.0;
  p.mu = 2.0;
  p.epsilon = 4.0;  // M = 2
  CHECK(absorbing_radius(p) == doctest::Approx(2.0));
  p.epsilon = 0.0;
  CHECK(absorbing_radius(p) == 0.0);
  p.sigma = 1.0;
  CHECK_THROWS_AS(absorbing_radius(p), InfeasibleError);
}

TEST_CASE("squeeze rates for the worked configuration") {
  const auto p = worked();
  const auto r = squeeze_rates(p, build_spectral_data(p, 2, 10));
  CHECK(r.rate_P == doctest::Approx(-2.0982154840024335).epsilon(1e-10));
  CHECK(std::abs(r.rate_P + 2.10) < 0.01);
  CHECK(r.coef_Q2 == doctest::Approx(0.11131270540349439).epsilon(1e-10));
  CHECK(r.rate_R == doctest::Approx(-0.795).epsilon(1e-14));
  CHECK(r.tail_contracting);

  auto flat = p;
  flat.epsilon = 0.0;
  const auto spec = build_spectral_data(flat, 2, 10);
  const auto r0 = squeeze_rates(flat, spec);
  CHECK(r0.coef_Q2 == 0.0);
  CHECK(r0.rate_P == spec.rho_1);

  // c2 (sigma + L_f^2) = mu - sigma - 1: 1 * (0.2 + 0.01) = mu - 1.2  =>  mu = 1.41
  auto edge = p;
  edge.mu = 1.41;
  const auto re = squeeze_rates(edge, build_spectral_data(edge, 2, 10));
  CHECK(std::abs(re.rate_R) < 1e-15);
  CHECK_FALSE(re.tail_contracting);
}

TEST_CASE("zeta and the dimension bound at the hand point") {
  const auto p = worked();
  const auto r = squeeze_rates(p, build_spectral_data(p, 2, 10));
  const auto t = zeta_terms(0.5, r);
  CHECK(t[0] == doctest::Approx(0.0613).epsilon(1e-3));
  CHECK(t[1] == doctest::Approx(0.0498).epsilon(1e-3));
  CHECK(t[2] == doctest::Approx(0.0136).epsilon(2e-3));
  CHECK(t[3] == doctest::Approx(0.4516).epsilon(1e-3));
  const double z = zeta(0.5, r);
  CHECK(std::abs(z - 0.576) < 0.005);
  const double d = dim_bound(2, 0.5, z);
  CHECK(std::abs(d - 7.75) < 0.1);
  CHECK(d == doctest::Approx(dim_bound_direct(2, 0.5, z)).epsilon(1e-12));

  CHECK(dim_bound(1, 2.0, std::exp(-1.0)) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK(dim_bound(2, 0.5, 0.576) == doctest::Approx(7.7525).epsilon(1e-4));
  CHECK_THROWS_AS(dim_bound(2, 0.5, 1.0), InfeasibleError);
  CHECK_THROWS_AS(dim_bound(0, 0.5, 0.5), InfeasibleError);
  double prev = 0;
  for (double z1 : {0.9, 0.99, 0.999, 0.9999}) {
    const double b = dim_bound(2, 0.5, z1);
    CHECK(b > prev);
    prev = b;
  }
  CHECK(prev > 1e4);
}

TEST_CASE("property: zeta is affine and increasing in alpha, decreasing in |rho|") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    SqueezeRates r;
    r.rate_P = -3 * U(rng);
    r.amp_Q = 1 + U(rng);
    r.rate_Q1 = r.rate_P - 2 * U(rng);
    r.coef_Q2 = U(rng);
    r.rate_Q2 = r.rate_P;
    r.amp_R = 2 * U(rng);
    r.rate_R = -2 * U(rng);
    const double a = 0.01 + U(rng), b = a + 0.01 + U(rng);
    CHECK(zeta(a, r) < zeta(b, r));
    const double z0 = zeta(1e-300, r);
    CHECK(zeta(a, r) - z0 == doctest::Approx(a * std::exp(r.rate_P)).epsilon(1e-12));
    auto faster = r;
    faster.rate_P -= 0.1;
    faster.rate_Q2 -= 0.1;
    faster.rate_Q1 -= 0.1;
    CHECK(zeta(a, faster) <= zeta(a, r));
  }
}

TEST_CASE("covering count arithmetic") {
  CHECK(covering_count_per_step(2, 0.5) == doctest::Approx(2 * 4 * 9));
  CHECK(covering_count_per_step(1, 1.0) == doctest::Approx(4));
  const auto report = evaluate_bound(worked(), 2, 0.5);
  CHECK(report.covering_count_per_step == std::ceil(2 * 4 * 9.0));
  // (W2): #W^m <= count^m, checked in log form for a few m.
  for (int steps = 1; steps <= 5; ++steps)
    CHECK(steps * std::log(report.covering_count_per_step) >= steps * std::log(covering_count_per_step(2, 0.5)));
}

TEST_CASE("optimizer beats every scanned grid point") {
  const auto p = worked();
  BoundOptions opt;
  opt.m_max = 6;
  const auto best = optimize_bound(p, opt);
  REQUIRE(best.feasible);
  CHECK(*best.dim_bound <= 7.75);
  CHECK_FALSE(best.absorbing_ok);  // sigma e^{mu tau} = 4.02 > 3
  const double lmin = std::log(opt.alpha_grid.min), lmax = std::log(opt.alpha_grid.max);
  for (int m = 1; m <= opt.m_max; ++m)
    for (int i = 0; i < opt.alpha_grid.points; ++i) {
      const auto r = evaluate_bound(p, m, std::exp(lmin + i * (lmax - lmin) / (opt.alpha_grid.points - 1)), opt);
      if (r.feasible) CHECK(*best.dim_bound <= *r.dim_bound + 1e-12);
    }
  const auto hand = evaluate_bound(p, 2, 0.5, opt);
  CHECK(*best.dim_bound <= *hand.dim_bound);
}

TEST_CASE("optimizer infeasibility reports") {
  auto p = worked();
  p.c2 = 1000.0;
  const auto r = optimize_bound(p);
  CHECK_FALSE(r.feasible);
  CHECK(r.dominant_term == "tail");
  CHECK_FALSE(r.tail_contracts);
  CHECK_FALSE(r.dim_bound.has_value());
  CHECK(to_json(r)["dim_bound"].is_null());
}

TEST_CASE("general step time rescales the attraction rate") {
  const auto p = worked();
  BoundOptions one, two;
  two.t_star = 2.0;
  const auto a = evaluate_bound(p, 2, 0.5, one);
  const auto b = evaluate_bound(p, 2, 0.5, two);
  CHECK(b.zeta < a.zeta);
  CHECK(*b.attraction_rate == doctest::Approx(-std::log(b.zeta) / 2.0));
}
