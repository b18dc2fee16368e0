#include "delaylab/projectors.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "delaylab/errors.hpp"

namespace delaylab {

ProjectorSet make_projectors(const Grid& grid, double K, int k) {
  if (grid.dim != 1) throw UnimplementedError("Dirichlet mode projectors on the disk (d = 2) are not implemented");
  if (k < 1) throw ValidationError("projectors.k", "needs at least one mode");
  grid.require_contains_ball(K);
  ProjectorSet out{inside_ball(grid, K), outside_ball(grid, K), k, {}};
  const Eigen::Index n = grid.size();
  const double w = std::sqrt(grid.spacing());
  Eigen::MatrixXd raw(n, k);
  for (int j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      raw(i, j) = out.inside.indicator()[i] * std::sin((j + 1) * std::numbers::pi * (grid.coordinate(i) + K) / (2 * K));
  if (out.inside.indicator().sum() < k)
    throw ValidationError("projectors.k", "Omega_K holds fewer grid nodes than requested modes");

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(w * raw);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  // Keep each column's orientation aligned with its sine mode.
  const Eigen::VectorXd r_diag = qr.matrixQR().diagonal().head(k);
  for (int j = 0; j < k; ++j)
    if (r_diag[j] < 0) q.col(j) *= -1.0;
  // Householder reflections leave rounding noise on the rows outside Omega_K.
  out.basis = (q / w).array().colwise() * out.inside.indicator();
  return out;
}

Eigen::VectorXd mode_coefficients(const Field& field, const ProjectorSet& proj) {
  if (!(field.grid() == proj.inside.grid())) throw GridMismatchError();
  const Eigen::VectorXd inside = (field.values() * proj.inside.indicator()).matrix();
  return proj.basis.transpose() * inside * field.grid().cell_volume();
}

SnapshotSplit split_snapshot(const Field& field, const ProjectorSet& proj) {
  if (!(field.grid() == proj.inside.grid())) throw GridMismatchError();
  const double dv = field.grid().cell_volume();
  const Eigen::VectorXd inside = (field.values() * proj.inside.indicator()).matrix();
  const Eigen::VectorXd coeffs = proj.basis.transpose() * inside * dv;
  const Eigen::VectorXd p_part = proj.basis * coeffs;
  SnapshotSplit s;
  s.total_sq = field.values().square().sum() * dv;
  s.inside_sq = inside.squaredNorm() * dv;
  s.p_sq = p_part.squaredNorm() * dv;
  s.q_sq = (inside - p_part).squaredNorm() * dv;
  s.rho_sq = (field.values() * proj.outside.indicator()).square().sum() * dv;
  return s;
}

SegmentComponents project_components(const Segment& segment, const ProjectorSet& proj) {
  SegmentComponents out;
  out.samples.reserve(segment.samples.size());
  for (const auto& f : segment.samples) {
    const auto s = split_snapshot(f, proj);
    out.sup.p = std::max(out.sup.p, std::sqrt(s.p_sq));
    out.sup.q = std::max(out.sup.q, std::sqrt(s.q_sq));
    out.sup.rho = std::max(out.sup.rho, std::sqrt(s.rho_sq));
    out.samples.push_back(s);
  }
  return out;
}

SnapshotProjector snapshot_projector(const ProjectorSet& proj) {
  auto shared = std::make_shared<const ProjectorSet>(proj);
  return [shared](const Field& f) {
    const auto s = split_snapshot(f, *shared);
    return ComponentNorms{std::sqrt(s.p_sq), std::sqrt(s.q_sq), std::sqrt(s.rho_sq)};
  };
}

}  // namespace delaylab
