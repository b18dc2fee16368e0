#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "delaylab/errors.hpp"
#include "delaylab/model.hpp"

using namespace delaylab;

namespace {

ModelParams base() {
  ModelParams p;
  p.mu = 1.0;
  p.sigma = 0.2;
  p.tau = 1.0;
  p.iota = 0.5;
  p.trunc_radius = 1.0;
  return p;
}

}  // namespace

TEST_CASE("absorbing flag follows sigma e^{mu tau} < mu") {
  auto p = base();
  CHECK(validate(p).absorbing_ok);  // 0.2 e = 0.5437 < 1
  p.sigma = 1.0;
  CHECK_FALSE(validate(p).absorbing_ok);
  p.sigma = 0.0;
  p.mu = 0.3;
  p.tau = 7.0;
  CHECK(validate(p).absorbing_ok);
}

TEST_CASE("tail flag is the sign of c2 (sigma + L_f^2) - (mu - sigma - 1)") {
  auto p = base();
  p.mu = 3.0;
  p.epsilon = 0.1;
  p.nonlinearity_kind = NonlinKind::ricker;
  CHECK(validate(p).tail_contracts);  // 0.21 - 1.8 < 0
  p.c2 = 1000.0;
  CHECK_FALSE(validate(p).tail_contracts);
}

TEST_CASE("validate names the offending field") {
  auto p = base();
  p.mu = 0.0;
  try {
    validate(p);
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "model.mu");
  }
  p = base();
  p.tau = std::nan("");
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = base();
  p.K_m = 0.5;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = base();
  p.c2 = -1;
  CHECK_THROWS_AS(validate(p), ValidationError);
}

TEST_CASE("validate is pure") {
  const auto p = base();
  CHECK(validate(p) == validate(p));
  CHECK(validate(p).checks.size() == 3);
}

TEST_CASE("nonlinearity catalogue") {
  const Grid g(1, 4.0, 32);
  CHECK(norm_L2(nonlinearity_apply(NonlinSpec::make(NonlinKind::zero, 3.0), Field::constant(g, 2.0))) == 0.0);
  CHECK(norm_L2(nonlinearity_apply(NonlinSpec::make(NonlinKind::ricker, 1.0), Field::constant(g, 0.0))) == 0.0);
  const Field one = nonlinearity_apply(NonlinSpec::make(NonlinKind::ricker, 1.0), Field::constant(g, 1.0));
  CHECK(one.values().maxCoeff() == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(one.values().minCoeff() == doctest::Approx(0.36787944117144233).epsilon(1e-15));

  const auto r = NonlinSpec::make(NonlinKind::ricker, 1.0);
  CHECK(r.bound == doctest::Approx(0.42888194248035335).epsilon(1e-14));
  CHECK(r.lip == 1.0);
  const auto s = NonlinSpec::make(NonlinKind::saturating, 0.4);
  CHECK(s.bound == doctest::Approx(0.2));
  CHECK(s.lip == doctest::Approx(0.4));
}

TEST_CASE("sup|b| of the catalogue matches a dense scan") {
  for (auto kind : {NonlinKind::ricker, NonlinKind::saturating}) {
    const auto spec = NonlinSpec::make(kind, 1.0);
    double sup = 0, lip = 0;
    for (int i = -200000; i <= 200000; ++i) {
      const double u = i * 1e-4;
      sup = std::max(sup, std::abs(spec(u)));
      lip = std::max(lip, std::abs(spec(u + 1e-7) - spec(u - 1e-7)) / 2e-7);
    }
    CHECK(sup == doctest::Approx(spec.bound).epsilon(1e-8));
    CHECK(lip == doctest::Approx(spec.lip).epsilon(1e-6));
  }
}

TEST_CASE("property: Lipschitz in L2 and pointwise bound on random fields") {
  const Grid g(1, 3.0, 64);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd(0.0, 2.0);
  for (auto kind : {NonlinKind::ricker, NonlinKind::saturating, NonlinKind::zero}) {
    const auto spec = NonlinSpec::make(kind, 0.7);
    for (int trial = 0; trial < 200; ++trial) {
      Field a(g), b(g);
      for (Eigen::Index i = 0; i < a.size(); ++i) {
        a.values()[i] = nd(rng);
        b.values()[i] = a.values()[i] + 0.3 * nd(rng);
      }
      const Field fa = nonlinearity_apply(spec, a);
      const Field fb = nonlinearity_apply(spec, b);
      CHECK(norm_L2(fa - fb) <= spec.lip * norm_L2(a - b) * (1 + 1e-14));
      CHECK(fa.values().abs().maxCoeff() <= spec.bound * (1 + 1e-14));
    }
  }
}

TEST_CASE("effective bound M = B_f + ||g||") {
  auto p = base();
  CHECK(effective_bound_M(p) == 0.0);
  p.nonlinearity_kind = NonlinKind::ricker;
  p.epsilon = 1.0;
  CHECK(effective_bound_M(p) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::e)));
  // ||g|| = 0.5 on a box of length 4: g = 0.25.
  const Grid g(1, 2.0, 16);
  p.forcing = Field::constant(g, 0.25);
  p.nonlinearity_kind = NonlinKind::saturating;
  p.epsilon = 2.0;  // B_f = 1
  CHECK(effective_bound_M(p) == doctest::Approx(1.5));
}
