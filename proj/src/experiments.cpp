#include "delaylab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "delaylab/errors.hpp"
#include "delaylab/integrator.hpp"
#include "delaylab/parallel.hpp"
#include "delaylab/projectors.hpp"
#include "delaylab/random_fields.hpp"

namespace delaylab {

bool ExperimentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json to_json(const ExperimentReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"experiment", r.name}, {"passed", r.passed()},   {"config", r.config},
          {"checks", checks},     {"measured", r.measured}, {"evidence", r.evidence}};
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::ofstream open_evidence(const HarnessSettings& s, const std::string& file, ExperimentReport& report) {
  std::filesystem::create_directories(s.evidence_dir);
  const auto path = s.evidence_dir / file;
  std::ofstream os(path);
  if (!os) throw Error("cannot write evidence file " + path.string());
  os << std::setprecision(17);
  report.evidence.push_back(file);
  return os;
}

double reference_radius(const ModelParams& params) {
  try {
    const double r = absorbing_radius(params);
    return r > 0.0 ? r : 1.0;
  } catch (const InfeasibleError&) {
    return 1.0;
  }
}

std::optional<double> radius_if_defined(const ModelParams& params) {
  try {
    return absorbing_radius(params);
  } catch (const InfeasibleError&) {
    return std::nullopt;
  }
}

nlohmann::json settings_json(const HarnessSettings& s) {
  return {{"grid", {{"d", s.grid.dim}, {"L", s.grid.half_length}, {"n", s.grid.points_per_axis}}},
          {"n_tau", s.n_tau},
          {"seed", s.seed}};
}

}  // namespace

ExperimentReport absorbing_experiment(const ModelParams& params, const HarnessSettings& settings,
                                      const AbsorbingOptions& opt) {
  const auto v = validate(params);
  if (!v.absorbing_ok) throw InfeasibleError("absorbing experiment needs sigma*e^{mu*tau} < mu");
  const double radius = absorbing_radius(params);
  const double ref = radius > 0.0 ? radius : 1.0;
  const double threshold = radius * (1.0 + opt.tolerance) + 1e-9 * ref;

  struct Member {
    double initial_norm = 0.0;
    std::optional<double> entry;
    bool exited = false;
    double max_after_entry = 0.0;
    std::vector<NormRecord> history;
  };
  std::vector<Member> members(static_cast<std::size_t>(opt.ensemble));

  parallel_for(members.size(), settings.threads, [&](std::size_t i) {
    auto rng = member_rng(settings.seed, i);
    const double target = opt.init_scale * ref * static_cast<double>(i + 1) / opt.ensemble;
    const auto phi = random_segment(settings.grid, settings.n_tau, params.tau, rng, target, i % 2 == 1);
    DelayIntegrator integ(params, settings.grid, settings.n_tau);
    auto traj = integ.evolve(phi, opt.T);
    Member& m = members[i];
    m.initial_norm = phi.norm();
    for (const auto& rec : traj.history()) {
      if (!m.entry) {
        if (rec.segment_norm <= threshold) m.entry = rec.t, m.max_after_entry = rec.segment_norm;
      } else {
        m.max_after_entry = std::max(m.max_after_entry, rec.segment_norm);
        if (rec.segment_norm > threshold) m.exited = true;
      }
    }
    m.history = traj.history();
  });

  ExperimentReport report;
  report.name = "absorbing";
  report.config = settings_json(settings);
  report.config["ensemble"] = opt.ensemble;
  report.config["T"] = opt.T;
  report.config["tolerance"] = opt.tolerance;
  report.config["init_scale"] = opt.init_scale;

  bool all_entered = true, none_exited = true;
  double max_entry = 0.0, max_after = 0.0;
  nlohmann::json per = nlohmann::json::array();
  for (const auto& m : members) {
    all_entered = all_entered && m.entry.has_value();
    none_exited = none_exited && !m.exited;
    if (m.entry) max_entry = std::max(max_entry, *m.entry), max_after = std::max(max_after, m.max_after_entry);
    per.push_back({{"initial_norm", m.initial_norm},
                   {"entry_time", m.entry ? nlohmann::json(*m.entry) : nlohmann::json(nullptr)},
                   {"exited", m.exited},
                   {"max_norm_after_entry", m.max_after_entry},
                   {"final_norm", m.history.back().segment_norm}});
  }
  report.checks.push_back({"all_entered", all_entered, "every member reached ||u_t||_C <= " + num(threshold)});
  report.checks.push_back({"no_exit", none_exited, "max norm after entry " + num(max_after)});
  report.measured = {{"absorbing_radius", radius}, {"threshold", threshold},     {"max_entry_time", max_entry},
                     {"max_norm_after_entry", max_after}, {"members", per}};

  if (!settings.evidence_dir.empty()) {
    auto os = open_evidence(settings, "absorbing_norms.csv", report);
    os << 't';
    for (std::size_t i = 0; i < members.size(); ++i) os << ",member_" << i;
    os << '\n';
    for (std::size_t k = 0; k < members.front().history.size(); ++k) {
      os << members.front().history[k].t;
      for (const auto& m : members) os << ',' << m.history[k].segment_norm;
      os << '\n';
    }
  }
  return report;
}

ExperimentReport contraction_experiment(const ModelParams& params, const HarnessSettings& settings,
                                        const SpectralData& spec, const BoundReport& bound,
                                        const ContractionOptions& opt) {
  const auto v = validate(params);
  const auto rates = squeeze_rates(params, spec);
  const double t_star = bound.t_star;
  const double horizon = std::max(opt.horizon, t_star);
  const auto projectors = make_projectors(settings.grid, params.trunc_radius, spec.k_m);
  const auto radius = radius_if_defined(params);
  const double dt = params.tau / settings.n_tau;
  const auto star_index = static_cast<std::size_t>(std::llround(t_star / dt));

  struct Pair {
    double r0 = 0.0;
    double zeta_eff = 0.0;
    double C_P = 0.0, C_Q = 0.0, C_R = 0.0;
    double K_m_lower = 0.0;
    bool inside_ball = true;
    std::vector<DifferenceRecord> records;
  };
  std::vector<Pair> pairs(static_cast<std::size_t>(opt.pairs));

  parallel_for(pairs.size(), settings.threads, [&](std::size_t i) {
    auto rng = member_rng(settings.seed, 1000 + i);
    const auto base = random_segment(settings.grid, settings.n_tau, params.tau, rng, opt.base_norm, true);
    const auto dir = random_segment(settings.grid, settings.n_tau, params.tau, rng, 1.0, true);
    Segment other = base;
    for (std::size_t j = 0; j < other.samples.size(); ++j)
      other.samples[j] += (opt.perturbation * opt.base_norm) * dir.samples[j];

    DelayIntegrator integ(params, settings.grid, settings.n_tau);
    const auto phi = integ.evolve(base, opt.pre_run);
    const auto psi = integ.evolve(other, opt.pre_run);
    Pair& p = pairs[i];
    if (radius) p.inside_ball = std::max(phi.segment_norm(), psi.segment_norm()) <= *radius * 1.01 + 1e-12;

    auto log = difference_trajectories(phi.segment(), psi.segment(), horizon, integ, snapshot_projector(projectors));
    p.r0 = log.records.front().r;
    if (!(p.r0 > 0.0)) throw ValidationError("verify.perturbation", "pair collapsed to zero separation");
    for (const auto& rec : log.records) {
      const auto& c = *rec.components;
      p.C_P = std::max(p.C_P, c.p / (rates.envelope_P(rec.t) * p.r0));
      p.C_Q = std::max(p.C_Q, c.q / (rates.envelope_Q(rec.t) * p.r0));
      p.C_R = std::max(p.C_R, c.rho / (rates.envelope_R(rec.t) * p.r0));
      p.K_m_lower = std::max(p.K_m_lower, (c.q / p.r0 - rates.coef_Q2 * std::exp(rates.rate_Q2 * rec.t)) /
                                              std::exp(rates.rate_Q1 * rec.t));
    }
    p.zeta_eff = log.records.at(star_index).r / p.r0;
    p.records = std::move(log.records);
  });

  ExperimentReport report;
  report.name = "contraction";
  report.config = settings_json(settings);
  report.config["pairs"] = opt.pairs;
  report.config["horizon"] = horizon;
  report.config["pre_run"] = opt.pre_run;
  report.config["perturbation"] = opt.perturbation;
  report.config["m"] = bound.m;
  report.config["alpha"] = bound.alpha;
  report.config["t_star"] = t_star;

  double zeta_eff = 0, cp = 0, cq = 0, cr = 0, km = 0;
  bool inside = true;
  nlohmann::json per = nlohmann::json::array();
  for (const auto& p : pairs) {
    zeta_eff = std::max(zeta_eff, p.zeta_eff);
    cp = std::max(cp, p.C_P), cq = std::max(cq, p.C_Q), cr = std::max(cr, p.C_R);
    km = std::max(km, p.K_m_lower);
    inside = inside && p.inside_ball;
    per.push_back({{"r0", p.r0}, {"zeta_eff", p.zeta_eff}, {"C_P", p.C_P}, {"C_Q", p.C_Q}, {"C_R", p.C_R}});
  }
  report.checks.push_back({"zeta_eff_le_zeta", zeta_eff <= bound.zeta,
                           "max r(t*)/r(0) = " + num(zeta_eff) + " vs zeta = " + num(bound.zeta)});
  report.checks.push_back({"prefactor_P", cp <= opt.max_prefactor, "C_P = " + num(cp)});
  report.checks.push_back({"prefactor_Q", cq <= opt.max_prefactor, "C_Q = " + num(cq)});
  report.checks.push_back({"prefactor_R", cr <= opt.max_prefactor, "C_R = " + num(cr)});
  if (radius) report.checks.push_back({"pre_run_absorbed", inside, "histories inside the absorbing ball after pre-run"});
  report.measured = {{"zeta", bound.zeta},
                     {"zeta_eff_max", zeta_eff},
                     {"C_P", cp},
                     {"C_Q", cq},
                     {"C_R", cr},
                     {"K_m_empirical_lower_bound", km},
                     {"rates", to_json(rates)},
                     {"pairs", per}};

  if (!settings.evidence_dir.empty()) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::ostringstream name;
      name << "contraction_pair_" << std::setw(2) << std::setfill('0') << i << ".csv";
      auto os = open_evidence(settings, name.str(), report);
      os << "t,r,p,q,rho,env_P,env_Q,env_R\n";
      const double r0 = pairs[i].r0;
      for (const auto& rec : pairs[i].records)
        os << rec.t << ',' << rec.r << ',' << rec.components->p << ',' << rec.components->q << ','
           << rec.components->rho << ',' << rates.envelope_P(rec.t) * r0 << ',' << rates.envelope_Q(rec.t) * r0 << ','
           << rates.envelope_R(rec.t) * r0 << '\n';
    }
  }
  return report;
}

ExperimentReport dimension_experiment(const ModelParams& params, const HarnessSettings& settings,
                                      const BoundReport& bound, const DimensionOptions& opt) {
  validate(params);
  const auto projectors = make_projectors(settings.grid, params.trunc_radius, opt.embed_k);
  const double dt = params.tau / settings.n_tau;
  const auto stride = std::llround(opt.sample_every / dt);
  if (stride < 1 || std::abs(stride * dt - opt.sample_every) > 1e-9 * opt.sample_every)
    throw ValidationError("dims.sample_every", "must be a positive multiple of dt");

  std::vector<Eigen::MatrixXd> blocks(static_cast<std::size_t>(opt.trajectories));
  parallel_for(blocks.size(), settings.threads, [&](std::size_t i) {
    auto rng = member_rng(settings.seed, 2000 + i);
    DelayIntegrator integ(params, settings.grid, settings.n_tau);
    auto traj = integ.evolve(random_segment(settings.grid, settings.n_tau, params.tau, rng, opt.init_norm, i % 2 == 1),
                             opt.pre_run);
    Eigen::MatrixXd pts(opt.samples, opt.embed_k);
    for (int s = 0; s < opt.samples; ++s) {
      for (long long k = 0; k < stride; ++k) integ.step(traj);
      pts.row(s) = mode_coefficients(traj.current(), projectors).transpose();
    }
    blocks[i] = std::move(pts);
  });
  Eigen::MatrixXd points(static_cast<Eigen::Index>(opt.trajectories) * opt.samples, opt.embed_k);
  for (std::size_t i = 0; i < blocks.size(); ++i) points.middleRows(static_cast<Eigen::Index>(i) * opt.samples, opt.samples) = blocks[i];

  ScalingOptions scaling;
  scaling.resolution = opt.relative_resolution * std::max(opt.init_norm, reference_radius(params));
  const auto corr = correlation_dimension(points, scaling);
  const auto box = box_counting_dimension(points, scaling);

  ExperimentReport report;
  report.name = "dimension";
  report.config = settings_json(settings);
  report.config["trajectories"] = opt.trajectories;
  report.config["samples"] = opt.samples;
  report.config["sample_every"] = opt.sample_every;
  report.config["embed_k"] = opt.embed_k;
  report.config["pre_run"] = opt.pre_run;
  if (bound.feasible) {
    report.checks.push_back({"estimate_le_bound", corr.value <= *bound.dim_bound,
                             "correlation dimension " + num(corr.value) + " vs bound " + num(*bound.dim_bound)});
  }
  report.measured = {{"correlation_dimension", to_json(corr)},
                     {"box_counting_dimension", to_json(box)},
                     {"dim_bound", bound.dim_bound ? nlohmann::json(*bound.dim_bound) : nlohmann::json(nullptr)},
                     {"resolution", scaling.resolution},
                     {"attractor_sample_diameter", (points.colwise().maxCoeff() - points.colwise().minCoeff()).norm()}};

  if (!settings.evidence_dir.empty()) {
    {
      auto os = open_evidence(settings, "dims_points.csv", report);
      for (int c = 0; c < opt.embed_k; ++c) os << (c ? "," : "") << "c" << c + 1;
      os << '\n';
      for (Eigen::Index r = 0; r < points.rows(); ++r) {
        for (Eigen::Index c = 0; c < points.cols(); ++c) os << (c ? "," : "") << points(r, c);
        os << '\n';
      }
    }
    auto os = open_evidence(settings, "dims_correlation.csv", report);
    os << "eps,C,slope\n";
    for (std::size_t i = 0; i < corr.curve.eps.size(); ++i)
      os << corr.curve.eps[i] << ',' << corr.curve.value[i] << ',' << corr.curve.slope[i] << '\n';
  }
  return report;
}

ExperimentReport domain_sensitivity(const ModelParams& params, const HarnessSettings& settings, double T) {
  const Grid& small = settings.grid;
  const Grid big(small.dim, 2.0 * small.half_length, 2 * small.points_per_axis);
  ExperimentReport report;
  report.name = "domain_sensitivity";
  report.config = settings_json(settings);
  report.config["T"] = T;

  ModelParams big_params = params;
  if (!params.forcing.empty()) {
    const auto& g = params.forcing.values();
    if ((g != g[0]).any()) {
      report.measured = {{"skipped", "forcing is not constant, so it has no extension to the doubled box"}};
      return report;
    }
    big_params.forcing = Field::constant(big, g[0]);
  }
  const double width = 0.5 * params.trunc_radius;
  auto bump = [&](const Grid& g) {
    if (g.dim == 1) return Field::from_function(g, [&](double x) { return std::exp(-x * x / (2 * width * width)); });
    return Field::from_function(g, [&](double x, double y) { return std::exp(-(x * x + y * y) / (2 * width * width)); });
  };
  DelayIntegrator a(params, small, settings.n_tau), b(big_params, big, settings.n_tau);
  const auto ua = a.evolve(Segment::constant(bump(small), settings.n_tau, params.tau), T);
  const auto ub = b.evolve(Segment::constant(bump(big), settings.n_tau, params.tau), T);

  // Node i of the small box is node i + n/2 of the big one along each axis.
  Field restricted(small);
  const auto n = static_cast<Eigen::Index>(small.points_per_axis);
  const auto nb = static_cast<Eigen::Index>(big.points_per_axis);
  const Eigen::Index off = n / 2;
  if (small.dim == 1) {
    for (Eigen::Index i = 0; i < n; ++i) restricted.values()[i] = ub.current().values()[i + off];
  } else {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) restricted.values()[i * n + j] = ub.current().values()[(i + off) * nb + j + off];
  }
  const double base = norm_L2(ua.current());
  const double diff = norm_L2(ua.current() - restricted);
  report.measured = {{"final_norm_L", base},
                     {"final_norm_2L_on_L_box", norm_L2(restricted)},
                     {"relative_difference", base > 0 ? diff / base : diff}};
  return report;
}

}  // namespace delaylab
