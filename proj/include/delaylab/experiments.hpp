#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "delaylab/bounds.hpp"
#include "delaylab/dimension.hpp"
#include "delaylab/grid.hpp"
#include "delaylab/model.hpp"
#include "delaylab/spectral_delay.hpp"

namespace delaylab {

struct HarnessSettings {
  Grid grid;
  int n_tau = 64;
  std::uint64_t seed = 1;
  int threads = 1;
  /// Where evidence CSVs go; empty disables file output.
  std::filesystem::path evidence_dir;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  std::string name;
  nlohmann::json config;
  std::vector<CheckResult> checks;
  nlohmann::json measured;
  std::vector<std::string> evidence;

  bool passed() const;
};

nlohmann::json to_json(const ExperimentReport& report);

struct AbsorbingOptions {
  int ensemble = 20;
  double T = 100.0;
  /// Allowed relative overshoot of the radius.
  double tolerance = 0.01;
  /// Initial norms are spread up to this multiple of the radius.
  double init_scale = 10.0;
};

/// Evolves an ensemble of random histories and checks that each one enters the
/// absorbing ball in finite time and stays there until T.
ExperimentReport absorbing_experiment(const ModelParams& params, const HarnessSettings& settings,
                                      const AbsorbingOptions& options = {});

struct ContractionOptions {
  int pairs = 10;
  /// Length of each logged difference run; at least the map time t_star.
  double horizon = 1.0;
  double pre_run = 10.0;
  /// Initial separation relative to the base history norm.
  double perturbation = 1e-3;
  double base_norm = 1.0;
  /// Flag level for fitted envelope prefactors.
  double max_prefactor = 2.0;
};

/// Logs r(t) = ||Phi(t)phi - Phi(t)psi||_C and its P/Q/R parts for close pairs of
/// pre-run histories, fits each envelope prefactor and compares the measured
/// one-step factor r(t_star)/r(0) with zeta.
ExperimentReport contraction_experiment(const ModelParams& params, const HarnessSettings& settings,
                                        const SpectralData& spec, const BoundReport& bound,
                                        const ContractionOptions& options = {});

struct DimensionOptions {
  int trajectories = 4;
  int samples = 300;
  double sample_every = 0.5;
  int embed_k = 5;
  double pre_run = 50.0;
  double init_norm = 2.0;
  /// Resolution floor relative to the initial norm.
  double relative_resolution = 1e-9;
};

/// Correlation-dimension estimate of the sampled attractor in the coordinates of
/// the first embed_k Dirichlet modes, checked against `bound` when it is feasible.
ExperimentReport dimension_experiment(const ModelParams& params, const HarnessSettings& settings,
                                      const BoundReport& bound, const DimensionOptions& options = {});

/// Runs one localized initial history on the box and on the box of twice the
/// half-length, and reports how much the final states differ on the small box.
ExperimentReport domain_sensitivity(const ModelParams& params, const HarnessSettings& settings, double T);

}  // namespace delaylab
