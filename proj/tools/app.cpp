#include "app.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "delaylab/config.hpp"
#include "delaylab/errors.hpp"
#include "delaylab/field_io.hpp"
#include "delaylab/integrator.hpp"
#include "delaylab/random_fields.hpp"
#include "delaylab/spectral_delay.hpp"

namespace delaylab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::string manifest_path;
  int threads = 1;
};

/// Output directory plus the list of files written, for the manifest.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  const fs::path& dir() const { return dir_; }

  std::ofstream open(const std::string& name) {
    const auto path = dir_ / name;
    fs::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    os << std::setprecision(17);
    files_.push_back(name);
    return os;
  }

  void json_file(const std::string& name, const json& j) { open(name) << j.dump(2) << '\n'; }

  void track(const std::string& name) { files_.push_back(name); }

  json hashes() const {
    json h = json::object();
    for (const auto& f : files_) h[f] = sha256_hex(read_file(dir_ / f));
    return h;
  }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

HarnessSettings harness(const RunConfig& c, int threads, const fs::path& evidence) {
  return {c.grid, c.integrator.n_tau, c.seed, threads, evidence};
}

BoundReport chosen_bound(const RunConfig& c) {
  if (c.bound_m) return evaluate_bound(c.params, *c.bound_m, *c.bound_alpha, c.bound_options);
  return optimize_bound(c.params, c.bound_options);
}

Segment initial_history(const RunConfig& c) {
  const auto& in = c.integrator;
  const double tau = c.params.tau;
  if (in.init == "file") return load_segment(in.init_file);
  if (in.init == "random") {
    auto rng = member_rng(c.seed, 0);
    return random_segment(c.grid, in.n_tau, tau, rng, in.init_amplitude, in.linear_in_theta);
  }
  if (in.init == "bump") {
    const double w = 0.5 * c.params.trunc_radius, a = in.init_amplitude;
    const Field f = c.grid.dim == 1
                        ? Field::from_function(c.grid, [&](double x) { return a * std::exp(-x * x / (2 * w * w)); })
                        : Field::from_function(c.grid, [&](double x, double y) {
                            return a * std::exp(-(x * x + y * y) / (2 * w * w));
                          });
    return Segment::constant(f, in.n_tau, tau);
  }
  return Segment::constant(Field::constant(c.grid, in.init_amplitude), in.n_tau, tau);
}

int simulate(const RunConfig& c, Outputs& out, json& report) {
  DelayIntegrator integ(c.params, c.grid, c.integrator.n_tau);
  const auto traj = integ.evolve(initial_history(c), c.integrator.T);
  {
    auto os = out.open("norms.csv");
    os << "t,segment_norm,snapshot_norm\n";
    for (const auto& rec : traj.history()) os << rec.t << ',' << rec.segment_norm << ',' << rec.snapshot_norm << '\n';
  }
  {
    auto os = out.open("final_field.csv");
    write_field_csv(os, traj.current());
  }
  {
    auto os = out.open("final_segment.bin");
    write_segment_binary(os, traj.segment());
  }
  report["final"] = {{"t", traj.elapsed()},
                     {"segment_norm", traj.segment_norm()},
                     {"snapshot_norm_L2", norm_L2(traj.current())},
                     {"steps", traj.history().size() - 1}};
  return ok;
}

int spectrum(const RunConfig& c, Outputs& out, json& report) {
  const int m = c.bound_m.value_or(1);
  const auto data = build_spectral_data(c.params, m, c.m_max, c.equation);
  auto os = out.open("spectrum.csv");
  os << "index,mu_eig,multiplicity,root,residual\n";
  for (std::size_t i = 0; i < data.modes.size(); ++i) {
    const auto& md = data.modes[i];
    os << i + 1 << ',' << md.mu_eig << ',' << md.multiplicity << ',' << md.root << ','
       << characteristic_residual(md.root, md.mu_eig, c.params, c.equation) << '\n';
  }
  report["spectrum"] = to_json(data);
  return ok;
}

int bounds(const ConfigMap& map, const RunConfig& c, Outputs& out, json& report) {
  report["bound"] = to_json(chosen_bound(c));
  if (!c.sweep.key.empty()) {
    auto os = out.open("bounds_sweep.csv");
    os << "value,m,alpha,zeta,k_m,dim_bound,feasible,absorbing_ok\n";
    for (const auto& v : c.sweep.values) {
      ConfigMap point = map;
      point.set(c.sweep.key, v);
      const auto pc = build_run_config(point);
      const auto b = chosen_bound(pc);
      os << v << ',' << b.m << ',' << b.alpha << ',' << b.zeta << ',' << b.k_m << ','
         << (b.dim_bound ? *b.dim_bound : std::numeric_limits<double>::quiet_NaN()) << ',' << b.feasible << ','
         << b.absorbing_ok << '\n';
    }
  }
  return ok;
}

json run_checks(const ExperimentReport& rep, bool& all_pass) {
  all_pass = all_pass && rep.passed();
  return to_json(rep);
}

int verify(const RunConfig& c, int threads, Outputs& out, json& report) {
  if (!report["validation"]["absorbing_ok"].get<bool>()) {
    report["passed"] = false;
    report["reason"] = "absorbing_ok is false: sigma*e^{mu*tau} >= mu, no absorbing ball";
    return invalid;
  }
  bool pass = true;
  if (c.verify_absorbing)
    report["absorbing"] = run_checks(absorbing_experiment(c.params, harness(c, threads, out.dir() / "absorbing"), c.absorbing), pass);
  if (c.verify_contraction) {
    const auto bound = chosen_bound(c);
    const auto spec = build_spectral_data(c.params, bound.m, c.m_max, c.equation);
    report["bound"] = to_json(bound);
    report["contraction"] = run_checks(
        contraction_experiment(c.params, harness(c, threads, out.dir() / "contraction"), spec, bound, c.contraction),
        pass);
  }
  report["passed"] = pass;
  return pass ? ok : falsified;
}

int dims(const RunConfig& c, int threads, Outputs& out, json& report) {
  const auto bound = chosen_bound(c);
  bool pass = true;
  report["bound"] = to_json(bound);
  report["dimension"] = run_checks(dimension_experiment(c.params, harness(c, threads, out.dir() / "dims"), bound, c.dims), pass);
  report["passed"] = pass;
  return pass ? ok : falsified;
}

void track_evidence(const json& report, Outputs& out) {
  for (const auto& [key, sub] : {std::pair{"absorbing", "absorbing"}, {"contraction", "contraction"}, {"dimension", "dims"}})
    if (report.contains(key))
      for (const auto& f : report[key]["evidence"]) out.track(std::string(sub) + "/" + f.get<std::string>());
}

json library_versions() {
  std::ostringstream eigen;
  eigen << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION;
  std::ostringstream js;
  js << NLOHMANN_JSON_VERSION_MAJOR << '.' << NLOHMANN_JSON_VERSION_MINOR << '.' << NLOHMANN_JSON_VERSION_PATCH;
  return {{"delaylab", kVersion}, {"eigen", eigen.str()}, {"nlohmann_json", js.str()}, {"compiler", __VERSION__}};
}

int execute(const std::string& sub, const Options& opt, std::ostream& out_stream) {
  ConfigMap map;
  if (!opt.manifest_path.empty()) {
    if (!opt.config_path.empty() || !opt.overrides.empty())
      throw ValidationError("--manifest", "cannot be combined with --config or --set");
    std::ifstream in(opt.manifest_path);
    if (!in) throw ValidationError("--manifest", "cannot open " + opt.manifest_path);
    const json m = json::parse(in);
    if (m.at("subcommand").get<std::string>() != sub)
      throw ValidationError("--manifest", "manifest was written by '" + m.at("subcommand").get<std::string>() + "'");
    for (const auto& [k, v] : m.at("config").items()) map.set(k, v.get<std::string>());
    if (sha256_hex(map.canonical()) != m.at("config_sha256").get<std::string>())
      throw ValidationError("--manifest", "config does not match its recorded hash");
  } else {
    if (!opt.config_path.empty()) map = ConfigMap::load(opt.config_path);
    for (const auto& o : opt.overrides) map.apply_override(o);
  }
  if (!opt.out_dir.empty()) map.set("output.dir", opt.out_dir);

  const RunConfig c = build_run_config(map);
  if (sub != "simulate" && c.grid.dim != 1)
    throw UnimplementedError("'" + sub + "' needs Dirichlet data on the ball, available for grid.d = 1 only");
  Outputs out(c.output_dir);
  json report = {{"subcommand", sub}, {"validation", to_json(validate(c.params))}};
  int code = ok;
  if (sub == "simulate") code = simulate(c, out, report);
  else if (sub == "spectrum") code = spectrum(c, out, report);
  else if (sub == "bounds") code = bounds(map, c, out, report);
  else if (sub == "verify") code = verify(c, opt.threads, out, report);
  else code = dims(c, opt.threads, out, report);
  out.json_file("report.json", report);
  track_evidence(report, out);

  json config = json::object();
  for (const auto& [k, v] : map.entries())
    if (k != "output.dir") config[k] = v;
  const json manifest = {{"tool", "delaylab"},
                         {"subcommand", sub},
                         {"seed", c.seed},
                         {"config", config},
                         {"config_sha256", sha256_hex(map.canonical())},
                         {"versions", library_versions()},
                         {"exit_code", code},
                         {"outputs", out.hashes()}};
  std::ofstream(out.dir() / "manifest.json") << manifest.dump(2) << '\n';
  out_stream << sub << ": exit " << code << ", outputs in " << out.dir().string() << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for a nonlocal delayed reaction-diffusion equation", "delaylab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.get_formatter()->column_width(34);
  app.footer("Exit status: 0 all checks pass, 1 invalid settings or failed hypothesis, 2 check falsified, "
             "3 divergence guard tripped.");

  Options opt;
  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "Evolve one initial history; write norm log, final field and segment checkpoint"},
      {"spectrum", "Tabulate Dirichlet eigenvalues and dominant characteristic roots"},
      {"bounds", "Absorbing radius, contraction factor and dimension bound; optional sweep"},
      {"verify", "Absorbing-set ensemble and trajectory-difference contraction checks"},
      {"dims", "Correlation-dimension estimate of sampled attractor points"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", opt.config_path, "Key-value config file")->check(CLI::ExistingFile);
    sub->add_option("-s,--set", opt.overrides, "Override one setting, key=value (repeatable)");
    sub->add_option("-o,--out", opt.out_dir, "Output directory (overrides output.dir)");
    sub->add_option("-t,--threads", opt.threads, "Worker thread cap")->check(CLI::Range(1, 256));
    sub->add_option("-m,--manifest", opt.manifest_path, "Re-run from a manifest.json; no --config or --set")
        ->check(CLI::ExistingFile);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : invalid;
  }
  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    return execute(sub, opt, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return invalid;
  } catch (const DivergenceError& e) {
    err << "diverged: " << e.what() << '\n';
    return diverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return invalid;
  }
}

}  // namespace delaylab::cli
