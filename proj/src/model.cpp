#include "delaylab/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "delaylab/errors.hpp"

namespace delaylab {

NonlinKind parse_nonlin_kind(std::string_view name) {
  if (name == "ricker") return NonlinKind::ricker;
  if (name == "saturating") return NonlinKind::saturating;
  if (name == "zero") return NonlinKind::zero;
  throw ValidationError("model.nonlinearity", "unknown kind '" + std::string(name) + "'");
}

std::string_view to_string(NonlinKind kind) {
  switch (kind) {
    case NonlinKind::ricker: return "ricker";
    case NonlinKind::saturating: return "saturating";
    case NonlinKind::zero: return "zero";
  }
  return "?";
}

NonlinSpec NonlinSpec::make(NonlinKind kind, double epsilon) {
  NonlinSpec s{kind, epsilon, 0.0, 0.0};
  switch (kind) {
    case NonlinKind::ricker:
      // sup |u e^{-u^2}| is attained at u^2 = 1/2; |b'| peaks at u = 0.
      s.lip = epsilon;
      s.bound = epsilon / std::sqrt(2.0 * std::numbers::e);
      break;
    case NonlinKind::saturating:
      s.lip = epsilon;
      s.bound = 0.5 * epsilon;
      break;
    case NonlinKind::zero:
      break;
  }
  return s;
}

double NonlinSpec::operator()(double u) const {
  switch (kind) {
    case NonlinKind::ricker: return epsilon * u * std::exp(-u * u);
    case NonlinKind::saturating: return epsilon * u / (1.0 + u * u);
    case NonlinKind::zero: return 0.0;
  }
  return 0.0;
}

Field nonlinearity_apply(const NonlinSpec& spec, const Field& field) {
  Field out(field.grid());
  switch (spec.kind) {
    case NonlinKind::ricker:
      out.values() = spec.epsilon * field.values() * (-field.values().square()).exp();
      break;
    case NonlinKind::saturating:
      out.values() = spec.epsilon * field.values() / (1.0 + field.values().square());
      break;
    case NonlinKind::zero:
      break;
  }
  return out;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ValidationReport validate(const ModelParams& p) {
  struct Req {
    const char* name;
    double value;
    double lower;
    bool strict;
  };
  const Req reqs[] = {
      {"model.mu", p.mu, 0.0, true},         {"model.tau", p.tau, 0.0, true},
      {"model.iota", p.iota, 0.0, true},     {"model.K", p.trunc_radius, 0.0, true},
      {"model.c2", p.c2, 0.0, true},         {"model.K_m", p.K_m, 1.0, false},
      {"model.sigma", p.sigma, 0.0, false},  {"model.epsilon", p.epsilon, 0.0, false},
  };
  ValidationReport report;
  for (const auto& r : reqs) {
    if (!std::isfinite(r.value)) throw ValidationError(r.name, "must be finite");
    const bool ok = r.strict ? r.value > r.lower : r.value >= r.lower;
    if (!ok)
      throw ValidationError(r.name, std::string("must be ") + (r.strict ? "> " : ">= ") + fmt(r.lower) +
                                        ", got " + fmt(r.value));
  }
  if (!p.forcing.empty() && !p.forcing.all_finite())
    throw ValidationError("model.forcing", "contains non-finite values");
  report.positivity_ok = true;
  report.checks.push_back({"positivity", true, "mu, tau, iota, K, c2 > 0; K_m >= 1; sigma, epsilon >= 0"});

  const double beta = p.sigma * std::exp(p.mu * p.tau);
  report.absorbing_ok = beta - p.mu < 0.0;
  report.checks.push_back({"absorbing_ok", report.absorbing_ok, "sigma*e^{mu*tau} - mu = " + fmt(beta - p.mu)});

  const double lf = p.nonlinearity().lip;
  const double tail = p.c2 * (p.sigma + lf * lf) - (p.mu - p.sigma - 1.0);
  report.tail_contracts = tail < 0.0;
  report.checks.push_back({"tail_contracts", report.tail_contracts, "c2*(sigma+L_f^2) - (mu-sigma-1) = " + fmt(tail)});
  return report;
}

double effective_bound_M(const ModelParams& params) { return params.nonlinearity().bound + params.forcing_norm(); }

nlohmann::json to_json(const ValidationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"positivity_ok", report.positivity_ok},
          {"absorbing_ok", report.absorbing_ok},
          {"tail_contracts", report.tail_contracts},
          {"checks", checks}};
}

}  // namespace delaylab
