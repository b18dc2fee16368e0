#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "delaylab/errors.hpp"
#include "delaylab/experiments.hpp"
#include "delaylab/integrator.hpp"
#include "delaylab/projectors.hpp"
#include "delaylab/random_fields.hpp"

using namespace delaylab;
using std::numbers::pi;

namespace {

ModelParams worked() {
  ModelParams p;
  p.mu = 3.0;
  p.sigma = 0.2;
  p.tau = 1.0;
  p.iota = 0.5;
  p.trunc_radius = pi / 2;
  p.nonlinearity_kind = NonlinKind::ricker;
  p.epsilon = 0.1;
  return p;
}

ModelParams bistable() {
  ModelParams p = worked();
  p.mu = 1.0;
  p.epsilon = 1.0;
  return p;
}

HarnessSettings small_settings(int threads = 1) {
  return {Grid(1, 2 * pi, 64), 16, 3, threads, {}};
}

}  // namespace

TEST_CASE("absorbing experiment on a small ensemble") {
  AbsorbingOptions opt;
  opt.ensemble = 4;
  opt.T = 30.0;
  const auto rep = absorbing_experiment(bistable(), small_settings(), opt);
  CHECK(rep.passed());
  CHECK(rep.measured["max_entry_time"].get<double>() < opt.T);
  CHECK(rep.measured["members"].size() == 4);
}

TEST_CASE("absorbing experiment needs a radius") {
  CHECK_THROWS_AS(absorbing_experiment(worked(), small_settings()), InfeasibleError);
}

TEST_CASE("reports do not depend on the thread count") {
  AbsorbingOptions opt;
  opt.ensemble = 3;
  opt.T = 5.0;
  const auto one = to_json(absorbing_experiment(bistable(), small_settings(1), opt));
  const auto again = to_json(absorbing_experiment(bistable(), small_settings(1), opt));
  const auto three = to_json(absorbing_experiment(bistable(), small_settings(3), opt));
  CHECK(one.dump() == again.dump());
  CHECK(one.dump() == three.dump());
}

TEST_CASE("identical histories never separate") {
  const auto p = worked();
  const Grid g(1, 2 * pi, 64);
  DelayIntegrator integ(p, g, 16);
  auto rng = member_rng(5, 0);
  const auto phi = random_segment(g, 16, p.tau, rng, 1.0, true);
  const auto proj = make_projectors(g, p.trunc_radius, 2);
  const auto log = difference_trajectories(phi, phi, 3.0, integ, snapshot_projector(proj));
  for (const auto& rec : log.records) {
    CHECK(rec.r == 0.0);
    CHECK(rec.components->p == 0.0);
    CHECK(rec.components->q == 0.0);
    CHECK(rec.components->rho == 0.0);
  }
}

TEST_CASE("linear decay is no faster than the leading characteristic value") {
  ModelParams p = worked();
  p.epsilon = 0.0;
  p.mu = 1.0;
  p.sigma = 0.3;
  p.nonlinearity_kind = NonlinKind::zero;
  const Grid g(1, 2 * pi, 128);
  const double rho1 = build_spectral_data(p, 1, 4, CharEquation::corrected).rho_1;
  const auto proj = make_projectors(g, p.trunc_radius, 1);
  const Field bump = Field::from_function(g, [&](double x) {
    return std::abs(x) < p.trunc_radius ? std::sin(pi * (x + p.trunc_radius) / (2 * p.trunc_radius)) : 0.0;
  });
  DelayIntegrator integ(p, g, 32);
  auto traj = integ.start(Segment::constant(bump, 32, p.tau));
  integ.advance(traj, 10.0);
  const double a = norm_L2(traj.current());
  integ.advance(traj, 5.0);
  const double b = norm_L2(traj.current());
  const double rate = std::log(b / a) / 5.0;
  CHECK(rate >= rho1 - 0.1);
  CHECK(rate < 0.0);
}

TEST_CASE("contraction experiment on the worked configuration") {
  const auto p = worked();
  BoundOptions bo;
  const auto spec = build_spectral_data(p, 2, bo.m_max, bo.equation);
  const auto bound = evaluate_bound(p, 2, 0.5, bo);
  ContractionOptions opt;
  opt.pairs = 2;
  auto settings = small_settings();
  settings.evidence_dir = std::filesystem::temp_directory_path() / "delaylab_test_contraction";
  std::filesystem::remove_all(settings.evidence_dir);
  const auto rep = contraction_experiment(p, settings, spec, bound, opt);
  CHECK(rep.passed());
  CHECK(rep.measured["zeta_eff_max"].get<double>() <= bound.zeta);
  REQUIRE(rep.evidence.size() == 2);
  std::ifstream is(settings.evidence_dir / rep.evidence[0]);
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,r,p,q,rho,env_P,env_Q,env_R");
  std::filesystem::remove_all(settings.evidence_dir);
}

TEST_CASE("dimension experiment on a decaying system is degenerate") {
  ModelParams p = worked();
  p.epsilon = 0.0;
  p.nonlinearity_kind = NonlinKind::zero;
  DimensionOptions opt;
  opt.trajectories = 2;
  opt.samples = 40;
  opt.pre_run = 20.0;
  const auto rep = dimension_experiment(p, small_settings(), optimize_bound(p), opt);
  CHECK(rep.measured["correlation_dimension"]["value"].get<double>() < 0.2);
}

TEST_CASE("sampling interval must be a multiple of the step") {
  DimensionOptions opt;
  opt.sample_every = 0.3;
  CHECK_THROWS_AS(dimension_experiment(worked(), small_settings(), optimize_bound(worked()), opt), ValidationError);
}

TEST_CASE("doubling the box leaves a localized solution unchanged at short times") {
  const auto rep = domain_sensitivity(worked(), {Grid(1, 2 * pi, 128), 16, 1, 1, {}}, 0.25);
  CHECK(rep.measured["relative_difference"].get<double>() < 1e-6);
}
