#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "delaylab/bounds.hpp"
#include "delaylab/experiments.hpp"
#include "delaylab/grid.hpp"
#include "delaylab/model.hpp"

namespace delaylab {

/// Flat dotted-key settings, e.g. "model.mu = 3". Every key has a default; a
/// key not in the catalogue is an error.
class ConfigMap {
 public:
  ConfigMap();

  /// Reads "key = value" lines; '#' starts a comment.
  static ConfigMap parse(std::istream& in, const std::string& source = "config");
  static ConfigMap load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  /// "key=value" as given on the command line.
  void apply_override(const std::string& assignment);
  const std::string& get(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  /// Sorted "key = value" lines of every setting, defaults included.
  std::string canonical() const;

  static const std::map<std::string, std::string>& defaults();
  static const std::map<std::string, std::string>& descriptions();

 private:
  std::map<std::string, std::string> entries_;
};

struct IntegratorSettings {
  int n_tau = 64;
  double T = 10.0;
  /// constant | bump | random | file
  std::string init = "constant";
  double init_amplitude = 1.0;
  std::filesystem::path init_file;
  bool linear_in_theta = false;
};

struct SweepSettings {
  std::string key;
  std::vector<std::string> values;
};

struct RunConfig {
  ModelParams params;
  Grid grid;
  IntegratorSettings integrator;
  int m_max = 10;
  CharEquation equation = CharEquation::corrected;
  std::optional<int> bound_m;
  std::optional<double> bound_alpha;
  BoundOptions bound_options;
  SweepSettings sweep;
  AbsorbingOptions absorbing;
  ContractionOptions contraction;
  bool verify_absorbing = true;
  bool verify_contraction = true;
  DimensionOptions dims;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir;
};

/// Typed, validated view of the settings. Errors name the offending key.
RunConfig build_run_config(const ConfigMap& map);

}  // namespace delaylab
