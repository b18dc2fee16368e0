#include "delaylab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "delaylab/errors.hpp"

namespace delaylab {

double absorbing_radius(const ModelParams& params) {
  const double M = effective_bound_M(params);
  const double mu = params.mu;
  const double beta = params.sigma * std::exp(mu * params.tau);
  if (!(beta < mu))
    throw InfeasibleError("no absorbing radius: sigma*e^{mu*tau} = " + std::to_string(beta) +
                          " >= mu = " + std::to_string(mu));
  return 2.0 * (M / mu + M * beta / (mu * (mu - beta)));
}

double SqueezeRates::envelope_P(double t) const { return std::exp(rate_P * t); }

double SqueezeRates::envelope_Q(double t) const {
  return amp_Q * std::exp(rate_Q1 * t) + coef_Q2 * std::exp(rate_Q2 * t);
}

double SqueezeRates::envelope_R(double t) const { return amp_R * std::exp(rate_R * t); }

SqueezeRates squeeze_rates(const ModelParams& params, const SpectralData& spec) {
  const double lf = params.nonlinearity().lip;
  SqueezeRates r;
  r.rate_P = lf + spec.rho_1;
  r.amp_Q = spec.K_m;
  r.rate_Q1 = spec.rho_m;
  r.rate_Q2 = lf + spec.rho_1;
  if (lf == 0.0) {
    r.coef_Q2 = 0.0;
  } else {
    const double denom = spec.rho_1 + lf - spec.rho_m;
    if (!(denom > 0.0)) throw InfeasibleError("rho_1 + L_f - rho_m must be positive");
    r.coef_Q2 = spec.K_m * lf / denom;
  }
  r.amp_R = std::sqrt(params.c2);
  r.rate_R = 0.5 * (params.c2 * (params.sigma + lf * lf) - (params.mu - params.sigma - 1.0));
  r.tail_contracting = r.rate_R < 0.0;
  return r;
}

std::array<double, 4> zeta_terms(double alpha, const SqueezeRates& r, double t) {
  return {alpha * std::exp(r.rate_P * t), r.amp_Q * std::exp(r.rate_Q1 * t), r.coef_Q2 * std::exp(r.rate_Q2 * t),
          r.amp_R * std::exp(r.rate_R * t)};
}

double zeta(double alpha, const SqueezeRates& rates, double t_star) {
  const auto t = zeta_terms(alpha, rates, t_star);
  return t[0] + t[1] + t[2] + t[3];
}

double dim_bound(int k_m, double alpha, double zeta_value) {
  if (k_m < 1) throw InfeasibleError("k_m must be >= 1");
  if (!(alpha > 0.0)) throw InfeasibleError("alpha must be positive");
  if (!(zeta_value > 0.0 && zeta_value < 1.0))
    throw InfeasibleError("zeta = " + std::to_string(zeta_value) + " is not in (0, 1)");
  return (std::log(static_cast<double>(k_m)) + k_m * std::log(2.0 + 2.0 / alpha)) / (-std::log(zeta_value));
}

double covering_count_per_step(int k_m, double alpha) {
  const double k = k_m;
  return k * std::pow(2.0, k) * std::pow(1.0 + 1.0 / alpha, k);
}

namespace {

constexpr const char* kTermNames[4] = {"P", "Q1", "Q2", "tail"};

BoundReport point_report(int m, int k_m, double alpha, const SqueezeRates& rates, double t_star,
                         const ValidationReport& v) {
  BoundReport out;
  out.m = m;
  out.alpha = alpha;
  out.k_m = k_m;
  out.t_star = t_star;
  out.rates = rates;
  out.terms = zeta_terms(alpha, rates, t_star);
  out.zeta = out.terms[0] + out.terms[1] + out.terms[2] + out.terms[3];
  out.dominant_term = kTermNames[std::max_element(out.terms.begin(), out.terms.end()) - out.terms.begin()];
  out.covering_count_per_step = std::ceil(covering_count_per_step(k_m, alpha));
  out.feasible = alpha > 0.0 && out.zeta > 0.0 && out.zeta < 1.0;
  if (out.feasible) {
    out.dim_bound = dim_bound(k_m, alpha, out.zeta);
    out.attraction_rate = -std::log(out.zeta) / t_star;
  }
  out.absorbing_ok = v.absorbing_ok;
  out.tail_contracts = v.tail_contracts;
  return out;
}

bool better(const BoundReport& a, const BoundReport& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (a.feasible) return *a.dim_bound < *b.dim_bound;
  return a.zeta < b.zeta;
}

}  // namespace

BoundReport evaluate_bound(const ModelParams& params, int m, double alpha, const BoundOptions& options) {
  const auto v = validate(params);
  const auto spec = build_spectral_data(params, m, std::max(m, options.m_max), options.equation);
  return point_report(m, spec.k_m, alpha, squeeze_rates(params, spec), options.t_star, v);
}

BoundReport optimize_bound(const ModelParams& params, const BoundOptions& options) {
  const auto v = validate(params);
  const auto& ag = options.alpha_grid;
  if (!(ag.min > 0.0 && ag.max > ag.min && ag.points >= 2))
    throw ValidationError("bounds.alpha_grid", "needs 0 < min < max and at least two points");
  const double lmin = std::log(ag.min);
  const double lstep = (std::log(ag.max) - lmin) / (ag.points - 1);

  BoundReport best;
  bool have = false;
  int best_idx = 0;
  SqueezeRates best_rates;
  for (int m = 1; m <= options.m_max; ++m) {
    const auto spec = build_spectral_data(params, m, options.m_max, options.equation);
    const auto rates = squeeze_rates(params, spec);
    for (int i = 0; i < ag.points; ++i) {
      auto r = point_report(m, spec.k_m, std::exp(lmin + i * lstep), rates, options.t_star, v);
      if (!have || better(r, best)) {
        best = r;
        best_idx = i;
        best_rates = rates;
        have = true;
      }
    }
  }
  if (!best.feasible) return best;

  // Golden-section refinement in log(alpha) between the neighbours of the best grid point.
  auto objective = [&](double la) {
    auto r = point_report(best.m, best.k_m, std::exp(la), best_rates, options.t_star, v);
    return r.feasible ? *r.dim_bound : std::numeric_limits<double>::infinity();
  };
  double a = lmin + std::max(0, best_idx - 1) * lstep;
  double b = lmin + std::min(ag.points - 1, best_idx + 1) * lstep;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = objective(c), fd = objective(d);
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      b = d, d = c, fd = fc;
      c = b - g * (b - a), fc = objective(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + g * (b - a), fd = objective(d);
    }
  }
  auto refined = point_report(best.m, best.k_m, std::exp(0.5 * (a + b)), best_rates, options.t_star, v);
  if (better(refined, best)) best = refined;
  return best;
}

nlohmann::json to_json(const SqueezeRates& r) {
  return {{"rate_P", r.rate_P},   {"amp_Q", r.amp_Q},   {"rate_Q1", r.rate_Q1},
          {"coef_Q2", r.coef_Q2}, {"rate_Q2", r.rate_Q2}, {"amp_R", r.amp_R},
          {"rate_R", r.rate_R},   {"tail_contracting", r.tail_contracting}};
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json j = {{"m", r.m},
                      {"alpha", r.alpha},
                      {"zeta", r.zeta},
                      {"k_m", r.k_m},
                      {"feasible", r.feasible},
                      {"covering_count_per_step", r.covering_count_per_step},
                      {"zeta_terms", {{"P", r.terms[0]}, {"Q1", r.terms[1]}, {"Q2", r.terms[2]}, {"tail", r.terms[3]}}},
                      {"dominant_term", r.dominant_term},
                      {"t_star", r.t_star},
                      {"absorbing_ok", r.absorbing_ok},
                      {"tail_contracts", r.tail_contracts},
                      {"rates", to_json(r.rates)}};
  j["dim_bound"] = r.dim_bound ? nlohmann::json(*r.dim_bound) : nlohmann::json(nullptr);
  j["attraction_rate"] = r.attraction_rate ? nlohmann::json(*r.attraction_rate) : nlohmann::json(nullptr);
  return j;
}

}  // namespace delaylab
