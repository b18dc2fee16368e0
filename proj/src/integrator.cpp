#include "delaylab/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "delaylab/bounds.hpp"
#include "delaylab/errors.hpp"

namespace delaylab {

Trajectory::Trajectory(Segment initial)
    : initial_(std::move(initial)), dt_(initial_.dt), n_tau_(initial_.n_tau()), ring_(initial_.samples) {
  ring_norms_.reserve(ring_.size());
  for (const auto& f : ring_) ring_norms_.push_back(norm_L2(f));
  history_.push_back({0.0, segment_norm(), ring_norms_.back()});
}

Segment Trajectory::segment() const {
  std::vector<Field> s;
  s.reserve(ring_.size());
  for (int j = 0; j <= n_tau_; ++j) s.push_back(sample(j));
  Segment out;
  out.samples = std::move(s);
  out.dt = dt_;
  return out;
}

double Trajectory::segment_norm() const { return *std::max_element(ring_norms_.begin(), ring_norms_.end()); }

void Trajectory::push(Field next) {
  const double n = norm_L2(next);
  ring_[head_] = std::move(next);
  ring_norms_[head_] = n;
  head_ = (head_ + 1) % ring_.size();
  ++steps_;
  history_.push_back({elapsed(), segment_norm(), n});
}

DelayIntegrator::DelayIntegrator(ModelParams params, const Grid& grid, int n_tau, double guard_radius)
    : params_(std::move(params)),
      grid_(grid),
      n_tau_(n_tau),
      dt_(params_.tau / n_tau),
      guard_override_(guard_radius),
      nonlin_(params_.nonlinearity()),
      semigroup_(FourierMultiplier<double>::gaussian(grid, params_.tau / n_tau, std::exp(-params_.mu * params_.tau / n_tau))),
      nonlocal_(FourierMultiplier<double>::gaussian(grid, params_.iota)) {
  if (n_tau < 1) throw ValidationError("integrator.n_tau", "must be >= 1");
  validate(params_);
  if (!params_.forcing.empty() && !(params_.forcing.grid() == grid)) throw GridMismatchError();
}

double DelayIntegrator::guard_radius_for(const Segment& initial) const {
  if (guard_override_ > 0.0) return guard_override_;
  double scale = 0.0;
  try {
    scale = absorbing_radius(params_);
  } catch (const InfeasibleError&) {
  }
  if (!(scale > 0.0)) scale = std::max({1.0, effective_bound_M(params_) / params_.mu, initial.norm()});
  return 1e6 * scale;
}

Trajectory DelayIntegrator::start(Segment initial) const {
  if (!(initial.grid() == grid_)) throw GridMismatchError();
  if (initial.n_tau() != n_tau_ || std::abs(initial.dt - dt_) > 1e-12 * dt_)
    throw ValidationError("integrator.n_tau", "history spacing does not divide tau into " + std::to_string(n_tau_) +
                                                  " steps");
  Trajectory t(std::move(initial));
  t.guard_ = guard_radius_for(t.initial());
  return t;
}

Field DelayIntegrator::delayed_forcing(const Field& delayed) {
  Field out = nonlocal_.apply(nonlinearity_apply(nonlin_, delayed));
  out.values() += params_.sigma * delayed.values();
  if (!params_.forcing.empty()) out.values() += params_.forcing.values();
  return out;
}

void DelayIntegrator::step(Trajectory& traj) {
  if (traj.n_tau_ != n_tau_ || !(traj.current().grid() == grid_))
    throw ValidationError("integrator.n_tau", "trajectory does not match this integrator");
  if (traj.guard_ <= 0.0) traj.guard_ = guard_radius_for(traj.initial());

  Field f0 = traj.forcing_next_ ? std::move(*traj.forcing_next_) : delayed_forcing(traj.sample(0));
  Field f1 = delayed_forcing(traj.sample(1));

  const double half = 0.5 * dt_;
  Field rhs = traj.current();
  rhs.values() += half * f0.values();
  Field next = semigroup_.apply(rhs);
  next.values() += half * f1.values();

  const double n = norm_L2(next);
  if (!std::isfinite(n) || n > traj.guard_)
    throw DivergenceError("||u|| = " + std::to_string(n) + " exceeded guard " + std::to_string(traj.guard_) +
                          " at t = " + std::to_string(traj.elapsed() + dt_));
  traj.forcing_next_ = std::move(f1);
  traj.push(std::move(next));
}

std::int64_t DelayIntegrator::steps_for(double T) const {
  if (!(T >= 0.0)) throw ValidationError("integrator.T", "must be >= 0");
  const double k = T / dt_;
  const auto steps = static_cast<std::int64_t>(std::llround(k));
  if (std::abs(k - static_cast<double>(steps)) > 1e-9 * std::max(1.0, k))
    throw ValidationError("integrator.T", "T = " + std::to_string(T) + " is not a multiple of dt = " + std::to_string(dt_));
  return steps;
}

void DelayIntegrator::advance(Trajectory& traj, double T) {
  const auto steps = steps_for(T);
  for (std::int64_t i = 0; i < steps; ++i) step(traj);
}

Trajectory DelayIntegrator::evolve(const Segment& initial, double T) {
  Trajectory traj = start(initial);
  advance(traj, T);
  return traj;
}

DifferenceLog difference_trajectories(const Segment& phi, const Segment& psi, double T, DelayIntegrator& integrator,
                                      const SnapshotProjector& projector) {
  DifferenceLog log{{}, integrator.start(phi), integrator.start(psi)};
  const auto window = static_cast<std::size_t>(integrator.n_tau()) + 1;
  std::vector<double> r_ring(window);
  std::vector<ComponentNorms> c_ring(window);
  std::size_t head = 0;

  for (std::size_t j = 0; j < window; ++j) {
    const Field d = phi.samples[j] - psi.samples[j];
    r_ring[j] = norm_L2(d);
    if (projector) c_ring[j] = projector(d);
  }
  auto record = [&](double t) {
    DifferenceRecord rec{t, *std::max_element(r_ring.begin(), r_ring.end()), std::nullopt};
    if (projector) {
      ComponentNorms sup;
      for (const auto& c : c_ring) {
        sup.p = std::max(sup.p, c.p);
        sup.q = std::max(sup.q, c.q);
        sup.rho = std::max(sup.rho, c.rho);
      }
      rec.components = sup;
    }
    log.records.push_back(rec);
  };
  record(0.0);

  const double dt = integrator.dt();
  const auto steps = static_cast<std::int64_t>(std::llround(T / dt));
  if (std::abs(T / dt - static_cast<double>(steps)) > 1e-9 * std::max(1.0, T / dt))
    throw ValidationError("integrator.T", "T is not a multiple of dt");
  for (std::int64_t i = 0; i < steps; ++i) {
    integrator.step(log.first);
    integrator.step(log.second);
    const Field d = log.first.current() - log.second.current();
    r_ring[head] = norm_L2(d);
    if (projector) c_ring[head] = projector(d);
    head = (head + 1) % window;
    record(log.first.elapsed());
  }
  return log;
}

Trajectory step(Trajectory traj, const ModelParams& params) {
  DelayIntegrator integrator(params, traj.current().grid(), traj.n_tau());
  if (std::abs(integrator.dt() - traj.dt()) > 1e-12 * traj.dt())
    throw ValidationError("integrator.n_tau", "dt must divide tau exactly");
  integrator.step(traj);
  return traj;
}

Trajectory evolve(const Segment& phi, double T, const ModelParams& params) {
  DelayIntegrator integrator(params, phi.grid(), phi.n_tau());
  return integrator.evolve(phi, T);
}

}  // namespace delaylab
