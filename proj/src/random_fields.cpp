#include "delaylab/random_fields.hpp"

#include "delaylab/fourier.hpp"

namespace delaylab {

std::mt19937_64 member_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
  return std::mt19937_64(seq);
}

Field band_limited_field(const Grid& grid, std::mt19937_64& rng, double k_cut, double norm) {
  std::normal_distribution<double> nd;
  Field noise(grid);
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise.values()[i] = nd(rng);
  const Eigen::ArrayXd k2 = wavenumber_squared(grid);
  Eigen::ArrayXd symbol = (k2 <= k_cut * k_cut).cast<double>();
  Field out = FourierMultiplier<double>(grid, std::move(symbol)).apply(noise);
  const double n = norm_L2(out);
  if (n > 0.0) out *= norm / n;
  return out;
}

Segment random_segment(const Grid& grid, int n_tau, double tau, std::mt19937_64& rng, double norm,
                       bool linear_in_theta, double k_cut) {
  if (!linear_in_theta) return Segment::constant(band_limited_field(grid, rng, k_cut, norm), n_tau, tau);
  const Field a = band_limited_field(grid, rng, k_cut, 1.0);
  const Field b = band_limited_field(grid, rng, k_cut, 1.0);
  Segment s = Segment::linear(a, b, n_tau, tau);
  const double n = s.norm();
  for (auto& f : s.samples) f *= norm / n;
  return s;
}

}  // namespace delaylab
