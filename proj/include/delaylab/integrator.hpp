#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "delaylab/fourier.hpp"
#include "delaylab/model.hpp"
#include "delaylab/segment.hpp"

namespace delaylab {

struct NormRecord {
  double t = 0.0;
  double segment_norm = 0.0;   // ||u_t||_C
  double snapshot_norm = 0.0;  // ||u(t)||
};

/// State of one run of the semiflow: the latest history window plus diagnostics.
class Trajectory {
 public:
  explicit Trajectory(Segment initial);

  const Segment& initial() const { return initial_; }
  double dt() const { return dt_; }
  int n_tau() const { return n_tau_; }
  std::int64_t steps() const { return steps_; }
  double elapsed() const { return static_cast<double>(steps_) * dt_; }
  const Field& current() const { return ring_[newest_index()]; }
  /// Sample at theta_j = -tau + j dt of the current window.
  const Field& sample(int j) const { return ring_[(head_ + static_cast<std::size_t>(j)) % ring_.size()]; }
  /// Chronological copy of the current window u_t.
  Segment segment() const;
  double segment_norm() const;
  const std::vector<NormRecord>& history() const { return history_; }

 private:
  friend class DelayIntegrator;

  std::size_t newest_index() const { return (head_ + ring_.size() - 1) % ring_.size(); }
  void push(Field next);

  Segment initial_;
  double dt_;
  int n_tau_;
  std::vector<Field> ring_;
  std::vector<double> ring_norms_;
  std::size_t head_ = 0;  // oldest sample
  std::int64_t steps_ = 0;
  std::vector<NormRecord> history_;
  double guard_ = 0.0;
  // Delayed forcing sigma*u + H(f(u)) + g of sample(1), reused as sample(0) next step.
  std::optional<Field> forcing_next_;
};

/// Advances u(t + dt) = S(dt) u(t) + int_0^dt S(dt - s)[sigma u(t+s-tau) + H(f(u(t+s-tau))) + g] ds
/// with the trapezoidal rule in s; delayed arguments are stored samples.
class DelayIntegrator {
 public:
  /// `guard_radius` <= 0 picks 1e6 times the absorbing radius, or 1e6 times
  /// max(1, M/mu, ||phi||_C) when no absorbing radius exists.
  DelayIntegrator(ModelParams params, const Grid& grid, int n_tau, double guard_radius = 0.0);

  const ModelParams& params() const { return params_; }
  const Grid& grid() const { return grid_; }
  int n_tau() const { return n_tau_; }
  double dt() const { return dt_; }
  double guard_radius_for(const Segment& initial) const;

  Trajectory start(Segment initial) const;
  void step(Trajectory& traj);
  /// Steps until `T` more time has elapsed. T must be a multiple of dt.
  void advance(Trajectory& traj, double T);
  Trajectory evolve(const Segment& initial, double T);

  /// sigma u + H(f(u)) + g.
  Field delayed_forcing(const Field& delayed);

 private:
  std::int64_t steps_for(double T) const;

  ModelParams params_;
  Grid grid_;
  int n_tau_;
  double dt_;
  double guard_override_;
  NonlinSpec nonlin_;
  FourierMultiplier<double> semigroup_;
  FourierMultiplier<double> nonlocal_;
};

/// Per-snapshot component norms of a difference: (p, q, rho) with p, q the
/// projected parts inside Omega_K and rho the outside part.
struct ComponentNorms {
  double p = 0.0;
  double q = 0.0;
  double rho = 0.0;
};

using SnapshotProjector = std::function<ComponentNorms(const Field&)>;

struct DifferenceRecord {
  double t = 0.0;
  double r = 0.0;
  std::optional<ComponentNorms> components;  // sup over the window, per component
};

struct DifferenceLog {
  std::vector<DifferenceRecord> records;
  Trajectory first;
  Trajectory second;
};

/// Evolves phi and psi side by side and records ||Phi(t)phi - Phi(t)psi||_C
/// each step, plus window-sup component norms when `projector` is given.
DifferenceLog difference_trajectories(const Segment& phi, const Segment& psi, double T, DelayIntegrator& integrator,
                                      const SnapshotProjector& projector = {});

// Convenience forms that build a DelayIntegrator from the history's spacing.
Trajectory step(Trajectory traj, const ModelParams& params);
Trajectory evolve(const Segment& phi, double T, const ModelParams& params);

}  // namespace delaylab
