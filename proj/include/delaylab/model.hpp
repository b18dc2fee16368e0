#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "delaylab/field.hpp"

namespace delaylab {

enum class NonlinKind { ricker, saturating, zero };

NonlinKind parse_nonlin_kind(std::string_view name);
std::string_view to_string(NonlinKind kind);

/// f = epsilon * b for one of the built-in bounded, globally Lipschitz b.
struct NonlinSpec {
  NonlinKind kind = NonlinKind::zero;
  double epsilon = 0.0;
  double lip = 0.0;    // L_f, includes epsilon
  double bound = 0.0;  // B_f = epsilon * sup|b|

  static NonlinSpec make(NonlinKind kind, double epsilon);

  double operator()(double u) const;
};

/// Applies f pointwise.
Field nonlinearity_apply(const NonlinSpec& spec, const Field& field);

struct ModelParams {
  double mu = 1.0;
  double sigma = 0.0;
  double epsilon = 0.0;
  double tau = 1.0;
  double iota = 1.0;
  NonlinKind nonlinearity_kind = NonlinKind::zero;
  /// Empty means g = 0.
  Field forcing;
  /// Radius of the ball Omega_K used to split space.
  double trunc_radius = 1.0;
  double c2 = 1.0;
  double K_m = 1.0;

  NonlinSpec nonlinearity() const { return NonlinSpec::make(nonlinearity_kind, epsilon); }
  double forcing_norm() const { return forcing.empty() ? 0.0 : norm_L2(forcing); }
};

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::string detail;

  friend bool operator==(const HypothesisCheck&, const HypothesisCheck&) = default;
};

struct ValidationReport {
  std::vector<HypothesisCheck> checks;
  bool positivity_ok = false;
  /// sigma e^{mu tau} - mu < 0
  bool absorbing_ok = false;
  /// c2 (sigma + L_f^2) - (mu - sigma - 1) < 0
  bool tail_contracts = false;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Checks the standing hypotheses. Throws ValidationError naming the first
/// required scalar that is non-finite or out of range; hypothesis failures
/// are reported, not thrown.
ValidationReport validate(const ModelParams& params);

/// M = B_f + ||g||.
double effective_bound_M(const ModelParams& params);

nlohmann::json to_json(const ValidationReport& report);

}  // namespace delaylab
