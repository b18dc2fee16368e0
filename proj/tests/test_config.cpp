#include <doctest.h>

#include <sstream>

#include "delaylab/config.hpp"
#include "delaylab/errors.hpp"

using namespace delaylab;

namespace {

ConfigMap parse(const std::string& text) {
  std::istringstream in(text);
  return ConfigMap::parse(in);
}

std::string failing_key(const ConfigMap& map) {
  try {
    build_run_config(map);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "";
}

std::string failing_key(const std::string& text) {
  try {
    return failing_key(parse(text));
  } catch (const ValidationError& e) {
    return e.field();
  }
}

}  // namespace

TEST_CASE("defaults build a valid configuration") {
  const auto c = build_run_config(ConfigMap{});
  CHECK(c.grid.dim == 1);
  CHECK(c.grid.points_per_axis == 256);
  CHECK(c.params.trunc_radius == doctest::Approx(c.grid.half_length / 4));
  CHECK_FALSE(c.bound_m.has_value());
  CHECK(c.integrator.n_tau == 64);
}

TEST_CASE("comments, blanks and spacing") {
  const auto map = parse("# header\n\n  model.mu = 2.5   # trailing\nmodel.nonlinearity=ricker\n");
  const auto c = build_run_config(map);
  CHECK(c.params.mu == 2.5);
  CHECK(c.params.nonlinearity_kind == NonlinKind::ricker);
}

TEST_CASE("overrides replace file values") {
  auto map = parse("model.mu = 2\n");
  map.apply_override("model.mu=4");
  map.apply_override(" bounds.m = 2 ");
  map.apply_override("bounds.alpha=0.5");
  const auto c = build_run_config(map);
  CHECK(c.params.mu == 4.0);
  CHECK(*c.bound_m == 2);
  CHECK(*c.bound_alpha == 0.5);
}

TEST_CASE("errors carry the key") {
  CHECK(failing_key("model.bogus = 1") == "model.bogus");
  CHECK(failing_key("model.mu = -1") == "model.mu");
  CHECK(failing_key("model.mu = abc") == "model.mu");
  CHECK(failing_key("model.mu = 1e999") == "model.mu");
  CHECK(failing_key("grid.n = 100") == "grid.n");
  CHECK(failing_key("grid.d = 3") == "grid.d");
  CHECK(failing_key("model.K = 4") == "grid.L");
  CHECK(failing_key("model.nonlinearity = cubic") == "model.nonlinearity");
  CHECK(failing_key("forcing.kind = file") == "forcing.file");
  CHECK(failing_key("integrator.init = file") == "integrator.init_file");
  CHECK(failing_key("bounds.m = 2") == "bounds.alpha");
  CHECK(failing_key("bounds.m = 20\nbounds.alpha = 1") == "bounds.m");
  CHECK(failing_key("bounds.sweep.key = model.nope\nbounds.sweep.values = 1") == "bounds.sweep.key");
  CHECK(failing_key("bounds.sweep.key = model.mu") == "bounds.sweep.values");
  CHECK(failing_key("verify.absorbing = maybe") == "verify.absorbing");
  CHECK(failing_key("seed = -4") == "seed");
  CHECK(failing_key("no equals sign") == "config:1");
}

TEST_CASE("canonical form is order independent and ignores the output directory") {
  const auto a = parse("model.mu = 2\nmodel.sigma = 0.1\noutput.dir = x\n");
  const auto b = parse("model.sigma = 0.1\nmodel.mu = 2\noutput.dir = y\n");
  CHECK(a.canonical() == b.canonical());
  CHECK(a.canonical() != parse("model.mu = 3\n").canonical());
}

TEST_CASE("every key has a description") {
  for (const auto& [k, v] : ConfigMap::defaults()) CHECK(ConfigMap::descriptions().contains(k));
}

TEST_CASE("forcing kinds") {
  const auto c = build_run_config(parse("forcing.kind = constant\nforcing.amplitude = 0.3\n"));
  CHECK(c.params.forcing.values().minCoeff() == 0.3);
  const auto g = build_run_config(parse("forcing.kind = gaussian\nforcing.amplitude = 1\nforcing.width = 0.5\n"));
  CHECK(g.params.forcing.values().maxCoeff() == doctest::Approx(1.0));
  CHECK(build_run_config(ConfigMap{}).params.forcing.empty());
}
