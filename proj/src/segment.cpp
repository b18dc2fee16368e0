#include "delaylab/segment.hpp"

#include <string>

namespace delaylab {

Segment::Segment(std::vector<Field> s, double step) : samples(std::move(s)), dt(step) {
  if (samples.size() < 2) throw ValidationError("segment", "needs at least two samples");
  if (!(dt > 0.0)) throw ValidationError("segment", "sample spacing must be positive");
  for (const auto& f : samples) {
    samples.front().require_same_grid(f);
    if (!f.all_finite()) throw ValidationError("segment", "contains non-finite values");
  }
}

Segment Segment::constant(const Field& value, int n_tau, double tau) {
  if (n_tau < 1) throw ValidationError("integrator.n_tau", "must be >= 1");
  return {std::vector<Field>(static_cast<std::size_t>(n_tau) + 1, value), tau / n_tau};
}

Segment Segment::linear(const Field& oldest, const Field& newest, int n_tau, double tau) {
  if (n_tau < 1) throw ValidationError("integrator.n_tau", "must be >= 1");
  std::vector<Field> s;
  s.reserve(static_cast<std::size_t>(n_tau) + 1);
  for (int j = 0; j <= n_tau; ++j) {
    const double w = static_cast<double>(j) / n_tau;
    s.push_back((1.0 - w) * oldest + w * newest);
  }
  return {std::move(s), tau / n_tau};
}

Segment operator-(const Segment& a, const Segment& b) {
  if (a.samples.size() != b.samples.size()) throw GridMismatchError();
  std::vector<Field> d;
  d.reserve(a.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) d.push_back(a.samples[i] - b.samples[i]);
  Segment out;
  out.samples = std::move(d);
  out.dt = a.dt;
  return out;
}

}  // namespace delaylab
