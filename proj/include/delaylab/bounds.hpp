#pragma once

#include <array>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "delaylab/model.hpp"
#include "delaylab/spectral_delay.hpp"

namespace delaylab {

/// Radius 2(M/mu + M beta / (mu (mu - beta))), beta = sigma e^{mu tau}, of the
/// absorbing ball. Throws InfeasibleError when beta >= mu.
double absorbing_radius(const ModelParams& params);

/// Exponential envelopes for the three components of a trajectory difference.
struct SqueezeRates {
  double rate_P = 0.0;   // L_f + rho_1
  double amp_Q = 1.0;    // K_m
  double rate_Q1 = 0.0;  // rho_m
  double coef_Q2 = 0.0;  // K_m L_f / (rho_1 + L_f - rho_m)
  double rate_Q2 = 0.0;  // L_f + rho_1
  double amp_R = 1.0;    // sqrt(c2)
  double rate_R = 0.0;   // (c2 (sigma + L_f^2) - (mu - sigma - 1)) / 2
  bool tail_contracting = false;

  double envelope_P(double t) const;
  double envelope_Q(double t) const;
  double envelope_R(double t) const;
};

SqueezeRates squeeze_rates(const ModelParams& params, const SpectralData& spec);

/// The four summands of zeta, in order P, Q1, Q2, tail.
std::array<double, 4> zeta_terms(double alpha, const SqueezeRates& rates, double t_star = 1.0);
double zeta(double alpha, const SqueezeRates& rates, double t_star = 1.0);

/// (ln k_m + k_m ln(2 + 2/alpha)) / (-ln zeta). Throws InfeasibleError unless
/// 0 < zeta < 1, alpha > 0 and k_m >= 1.
double dim_bound(int k_m, double alpha, double zeta_value);

/// k_m 2^{k_m} (1 + 1/alpha)^{k_m}, the number of balls added per covering step.
double covering_count_per_step(int k_m, double alpha);

struct BoundReport {
  int m = 0;
  double alpha = 0.0;
  double zeta = 0.0;
  int k_m = 0;
  std::optional<double> dim_bound;
  bool feasible = false;
  double covering_count_per_step = 0.0;
  std::array<double, 4> terms{};
  std::string dominant_term;
  double t_star = 1.0;
  /// -ln(zeta) / t_star when feasible.
  std::optional<double> attraction_rate;
  bool absorbing_ok = false;
  bool tail_contracts = false;
  SqueezeRates rates;
};

struct AlphaGrid {
  double min = 1e-3;
  double max = 10.0;
  int points = 200;
};

struct BoundOptions {
  int m_max = 10;
  AlphaGrid alpha_grid;
  CharEquation equation = CharEquation::corrected;
  double t_star = 1.0;
};

/// zeta, covering count and dimension bound at one (m, alpha).
BoundReport evaluate_bound(const ModelParams& params, int m, double alpha, const BoundOptions& options = {});

/// Scans m = 1..m_max and alpha over a log grid, then refines alpha around the
/// best grid point. Returns the feasible point of smallest dim_bound, or, when
/// nothing is feasible, the point of smallest zeta with its dominant term.
BoundReport optimize_bound(const ModelParams& params, const BoundOptions& options = {});

nlohmann::json to_json(const SqueezeRates& rates);
nlohmann::json to_json(const BoundReport& report);

}  // namespace delaylab
