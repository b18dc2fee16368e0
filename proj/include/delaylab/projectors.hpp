#pragma once

#include <vector>

#include <Eigen/Dense>

#include "delaylab/field.hpp"
#include "delaylab/integrator.hpp"
#include "delaylab/segment.hpp"

namespace delaylab {

/// Surrogates for the three-way split of a state: the span of the first k
/// Dirichlet sine modes of Omega_K (P), the rest of Omega_K (Q), and the
/// outside of Omega_K (R).
struct ProjectorSet {
  Mask inside;
  Mask outside;
  int k = 0;
  /// Columns orthonormal in the grid-weighted L2 inner product, supported in Omega_K.
  Eigen::MatrixXd basis;
};

/// d = 1 only. Sine modes sin(j pi (x + K) / 2K) re-orthonormalized on the grid.
ProjectorSet make_projectors(const Grid& grid, double K, int k);

/// Squared pieces of one snapshot: total = inside + outside, inside = p + q.
struct SnapshotSplit {
  double total_sq = 0.0;
  double inside_sq = 0.0;
  double p_sq = 0.0;
  double q_sq = 0.0;
  double rho_sq = 0.0;
};

SnapshotSplit split_snapshot(const Field& field, const ProjectorSet& proj);

/// First k mode coefficients of the Omega_K part of `field`.
Eigen::VectorXd mode_coefficients(const Field& field, const ProjectorSet& proj);

struct SegmentComponents {
  ComponentNorms sup;                 // sup over samples, per component
  std::vector<SnapshotSplit> samples;  // chronological
};

SegmentComponents project_components(const Segment& segment, const ProjectorSet& proj);

/// Per-snapshot (p, q, rho) norms, for difference_trajectories.
SnapshotProjector snapshot_projector(const ProjectorSet& proj);

}  // namespace delaylab
