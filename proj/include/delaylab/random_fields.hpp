#pragma once

#include <cstdint>
#include <random>

#include "delaylab/segment.hpp"

namespace delaylab {

/// Deterministic per-member stream derived from a run seed.
std::mt19937_64 member_rng(std::uint64_t seed, std::uint64_t stream);

/// White noise low-passed to the modes with |k| <= k_cut, scaled to L2 norm `norm`.
Field band_limited_field(const Grid& grid, std::mt19937_64& rng, double k_cut, double norm);

/// Random history with ||.||_C = norm: constant in theta, or linear in theta
/// between two independent band-limited fields.
Segment random_segment(const Grid& grid, int n_tau, double tau, std::mt19937_64& rng, double norm,
                       bool linear_in_theta, double k_cut = 4.0);

}  // namespace delaylab
