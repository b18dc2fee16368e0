#include "delaylab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "delaylab/errors.hpp"
#include "delaylab/field_io.hpp"

namespace delaylab {
namespace {

struct KeyInfo {
  const char* key;
  const char* value;
  const char* doc;
};

// clang-format off
const KeyInfo kCatalogue[] = {
    {"model.mu", "1", "decay coefficient mu > 0"},
    {"model.sigma", "0", "delayed linear feedback sigma >= 0"},
    {"model.epsilon", "0", "nonlocal strength epsilon >= 0"},
    {"model.tau", "1", "delay tau > 0"},
    {"model.iota", "0.5", "kernel width iota > 0 (symbol exp(-|k|^2 iota))"},
    {"model.nonlinearity", "zero", "zero | ricker | saturating"},
    {"model.K", "auto", "split radius K; auto = grid.L / 4"},
    {"model.c2", "1", "tail constant c2 > 0"},
    {"model.K_m", "1", "projection constant K_m >= 1"},
    {"forcing.kind", "zero", "zero | constant | gaussian | file"},
    {"forcing.amplitude", "0", "forcing amplitude (constant, gaussian)"},
    {"forcing.width", "1", "gaussian forcing standard deviation"},
    {"forcing.file", "", "binary field file for forcing.kind = file"},
    {"grid.d", "1", "spatial dimension, 1 or 2"},
    {"grid.L", "6.283185307179586", "box half-length"},
    {"grid.n", "256", "points per axis, power of two >= 16"},
    {"integrator.n_tau", "64", "steps per delay interval"},
    {"integrator.T", "10", "simulated time, a multiple of tau / n_tau"},
    {"integrator.init", "constant", "constant | bump | random | file"},
    {"integrator.init_amplitude", "1", "value, peak or sup norm of the initial history"},
    {"integrator.init_file", "", "binary segment file for integrator.init = file"},
    {"integrator.init_linear", "false", "random history varies linearly over the delay interval"},
    {"spectral.m_max", "10", "number of Dirichlet modes tabulated"},
    {"spectral.charEq.raw_power2", "false", "use the printed mu - mu_eig^2 shift"},
    {"bounds.m", "auto", "spectral cut m; auto = optimize"},
    {"bounds.alpha", "auto", "covering parameter alpha; auto = optimize"},
    {"bounds.alpha_min", "0.001", "optimizer alpha grid lower end"},
    {"bounds.alpha_max", "10", "optimizer alpha grid upper end"},
    {"bounds.alpha_points", "200", "optimizer alpha grid size (log spaced)"},
    {"bounds.t_star", "1", "time of the contracting map"},
    {"bounds.sweep.key", "", "setting varied by the bounds sweep"},
    {"bounds.sweep.values", "", "comma-separated values for the sweep"},
    {"verify.absorbing", "true", "run the absorbing-set ensemble"},
    {"verify.contraction", "true", "run the contraction pairs"},
    {"verify.ensemble", "20", "absorbing ensemble size"},
    {"verify.T", "100", "absorbing horizon"},
    {"verify.tolerance", "0.01", "relative overshoot allowed over R_B"},
    {"verify.init_scale", "10", "largest initial norm as a multiple of R_B"},
    {"verify.pairs", "10", "contraction pairs"},
    {"verify.horizon", "1", "logged length of each difference run"},
    {"verify.pre_run", "10", "time evolved before the pair is logged"},
    {"verify.perturbation", "0.001", "relative initial separation of a pair"},
    {"verify.base_norm", "1", "sup norm of the base history"},
    {"verify.max_prefactor", "2", "largest accepted envelope prefactor"},
    {"dims.trajectories", "4", "independent sampled trajectories"},
    {"dims.samples", "300", "samples per trajectory"},
    {"dims.sample_every", "0.5", "time between samples"},
    {"dims.embed_k", "5", "Dirichlet mode coefficients per sample"},
    {"dims.pre_run", "50", "time evolved before sampling"},
    {"dims.init_norm", "2", "sup norm of the initial histories"},
    {"dims.relative_resolution", "1e-9", "distance floor relative to the state scale"},
    {"seed", "1", "base random seed"},
    {"output.dir", "out", "output directory (not part of the config hash)"},
};
// clang-format on

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

class Reader {
 public:
  explicit Reader(const ConfigMap& map) : map_(map) {}

  const std::string& str(const std::string& key) const { return map_.get(key); }

  double num(const std::string& key) const {
    const auto& s = str(key);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
      throw ValidationError(key, "expected a finite number, got '" + s + "'");
    return v;
  }

  long long integer(const std::string& key) const {
    const auto& s = str(key);
    long long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ValidationError(key, "expected an integer, got '" + s + "'");
    return v;
  }

  int positive_int(const std::string& key) const {
    const auto v = integer(key);
    if (v < 1 || v > 1'000'000'000) throw ValidationError(key, "must be a positive integer");
    return static_cast<int>(v);
  }

  double positive(const std::string& key) const {
    const double v = num(key);
    if (!(v > 0.0)) throw ValidationError(key, "must be positive");
    return v;
  }

  bool flag(const std::string& key) const {
    const auto& s = str(key);
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ValidationError(key, "expected true or false, got '" + s + "'");
  }

  bool is_auto(const std::string& key) const { return str(key) == "auto"; }

 private:
  const ConfigMap& map_;
};

Field make_forcing(const Reader& r, const Grid& grid) {
  const auto& kind = r.str("forcing.kind");
  if (kind == "zero") return {};
  if (kind == "constant") return Field::constant(grid, r.num("forcing.amplitude"));
  if (kind == "gaussian") {
    const double a = r.num("forcing.amplitude"), w = r.positive("forcing.width");
    if (grid.dim == 1) return Field::from_function(grid, [&](double x) { return a * std::exp(-x * x / (2 * w * w)); });
    return Field::from_function(grid, [&](double x, double y) { return a * std::exp(-(x * x + y * y) / (2 * w * w)); });
  }
  if (kind == "file") {
    if (r.str("forcing.file").empty()) throw ValidationError("forcing.file", "required when forcing.kind = file");
    Field g = load_field(r.str("forcing.file"));
    if (!(g.grid() == grid)) throw ValidationError("forcing.file", "field grid does not match grid.*");
    return g;
  }
  throw ValidationError("forcing.kind", "unknown forcing '" + kind + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

const std::map<std::string, std::string>& ConfigMap::defaults() {
  static const auto table = [] {
    std::map<std::string, std::string> m;
    for (const auto& k : kCatalogue) m.emplace(k.key, k.value);
    return m;
  }();
  return table;
}

const std::map<std::string, std::string>& ConfigMap::descriptions() {
  static const auto table = [] {
    std::map<std::string, std::string> m;
    for (const auto& k : kCatalogue) m.emplace(k.key, k.doc);
    return m;
  }();
  return table;
}

ConfigMap::ConfigMap() : entries_(defaults()) {}

ConfigMap ConfigMap::parse(std::istream& in, const std::string& source) {
  ConfigMap out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(source + ":" + std::to_string(number), "expected 'key = value'");
    out.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

ConfigMap ConfigMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("--config", "cannot open " + path.string());
  return parse(in, path.string());
}

void ConfigMap::set(const std::string& key, const std::string& value) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ValidationError(key, "unknown setting");
  it->second = value;
}

void ConfigMap::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ValidationError("--set", "expected key=value, got '" + assignment + "'");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

const std::string& ConfigMap::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ValidationError(key, "unknown setting");
  return it->second;
}

std::string ConfigMap::canonical() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    if (k == "output.dir") continue;
    out += k + " = " + v + "\n";
  }
  return out;
}

RunConfig build_run_config(const ConfigMap& map) {
  const Reader r(map);
  RunConfig c;
  const auto d = r.integer("grid.d");
  if (d < 1 || d > 2) throw ValidationError("grid.d", "must be 1 or 2");
  c.grid = Grid(static_cast<int>(d), r.num("grid.L"), r.integer("grid.n"));

  auto& p = c.params;
  p.mu = r.num("model.mu");
  p.sigma = r.num("model.sigma");
  p.epsilon = r.num("model.epsilon");
  p.tau = r.num("model.tau");
  p.iota = r.num("model.iota");
  p.nonlinearity_kind = parse_nonlin_kind(r.str("model.nonlinearity"));
  p.trunc_radius = r.is_auto("model.K") ? c.grid.half_length / 4 : r.positive("model.K");
  p.c2 = r.num("model.c2");
  p.K_m = r.num("model.K_m");
  p.forcing = make_forcing(r, c.grid);
  validate(p);
  c.grid.require_contains_ball(p.trunc_radius);

  auto& in = c.integrator;
  in.n_tau = r.positive_int("integrator.n_tau");
  if (in.n_tau < 2) throw ValidationError("integrator.n_tau", "must be at least 2");
  in.T = r.num("integrator.T");
  if (!(in.T >= 0.0)) throw ValidationError("integrator.T", "must be non-negative");
  in.init = r.str("integrator.init");
  if (in.init != "constant" && in.init != "bump" && in.init != "random" && in.init != "file")
    throw ValidationError("integrator.init", "unknown initial history '" + in.init + "'");
  in.init_amplitude = r.num("integrator.init_amplitude");
  in.init_file = r.str("integrator.init_file");
  if (in.init == "file" && in.init_file.empty())
    throw ValidationError("integrator.init_file", "required when integrator.init = file");
  in.linear_in_theta = r.flag("integrator.init_linear");

  c.m_max = r.positive_int("spectral.m_max");
  c.equation = r.flag("spectral.charEq.raw_power2") ? CharEquation::raw_power2 : CharEquation::corrected;

  if (!r.is_auto("bounds.m")) {
    c.bound_m = r.positive_int("bounds.m");
    if (*c.bound_m > c.m_max) throw ValidationError("bounds.m", "exceeds spectral.m_max");
  }
  if (!r.is_auto("bounds.alpha")) c.bound_alpha = r.positive("bounds.alpha");
  if (c.bound_m.has_value() != c.bound_alpha.has_value())
    throw ValidationError(c.bound_m ? "bounds.alpha" : "bounds.m", "bounds.m and bounds.alpha are set together");
  auto& bo = c.bound_options;
  bo.m_max = c.m_max;
  bo.equation = c.equation;
  bo.alpha_grid.min = r.positive("bounds.alpha_min");
  bo.alpha_grid.max = r.positive("bounds.alpha_max");
  if (!(bo.alpha_grid.max > bo.alpha_grid.min)) throw ValidationError("bounds.alpha_max", "must exceed bounds.alpha_min");
  bo.alpha_grid.points = r.positive_int("bounds.alpha_points");
  if (bo.alpha_grid.points < 2) throw ValidationError("bounds.alpha_points", "must be at least 2");
  bo.t_star = r.positive("bounds.t_star");

  c.sweep.key = r.str("bounds.sweep.key");
  c.sweep.values = split_list(r.str("bounds.sweep.values"));
  if (!c.sweep.key.empty()) {
    if (!ConfigMap::defaults().contains(c.sweep.key) || c.sweep.key == "bounds.sweep.key" ||
        c.sweep.key == "bounds.sweep.values")
      throw ValidationError("bounds.sweep.key", "unknown setting '" + c.sweep.key + "'");
    if (c.sweep.values.empty()) throw ValidationError("bounds.sweep.values", "needs at least one value");
  }

  c.verify_absorbing = r.flag("verify.absorbing");
  c.verify_contraction = r.flag("verify.contraction");
  c.absorbing.ensemble = r.positive_int("verify.ensemble");
  c.absorbing.T = r.positive("verify.T");
  c.absorbing.tolerance = r.num("verify.tolerance");
  if (c.absorbing.tolerance < 0.0) throw ValidationError("verify.tolerance", "must be non-negative");
  c.absorbing.init_scale = r.positive("verify.init_scale");
  c.contraction.pairs = r.positive_int("verify.pairs");
  c.contraction.horizon = r.positive("verify.horizon");
  c.contraction.pre_run = r.num("verify.pre_run");
  if (c.contraction.pre_run < 0.0) throw ValidationError("verify.pre_run", "must be non-negative");
  c.contraction.perturbation = r.positive("verify.perturbation");
  c.contraction.base_norm = r.positive("verify.base_norm");
  c.contraction.max_prefactor = r.positive("verify.max_prefactor");

  c.dims.trajectories = r.positive_int("dims.trajectories");
  c.dims.samples = r.positive_int("dims.samples");
  if (c.dims.trajectories * static_cast<long long>(c.dims.samples) < 2)
    throw ValidationError("dims.samples", "need at least two points in total");
  c.dims.sample_every = r.positive("dims.sample_every");
  c.dims.embed_k = r.positive_int("dims.embed_k");
  c.dims.pre_run = r.num("dims.pre_run");
  if (c.dims.pre_run < 0.0) throw ValidationError("dims.pre_run", "must be non-negative");
  c.dims.init_norm = r.positive("dims.init_norm");
  c.dims.relative_resolution = r.positive("dims.relative_resolution");

  const auto seed = r.integer("seed");
  if (seed < 0) throw ValidationError("seed", "must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.output_dir = r.str("output.dir");
  return c;
}

}  // namespace delaylab
