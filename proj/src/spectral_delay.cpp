#include "delaylab/spectral_delay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "delaylab/errors.hpp"

namespace delaylab {

std::vector<DirichletEigenvalue> dirichlet_eigenvalues(double K, int dim, int m_max) {
  if (dim != 1) throw UnimplementedError("Dirichlet eigenvalues on the disk (d = 2) are not implemented");
  if (!(K > 0.0)) throw ValidationError("model.K", "must be positive");
  if (m_max < 1) throw ValidationError("spectral.m_max", "must be >= 1");
  std::vector<DirichletEigenvalue> out;
  out.reserve(static_cast<std::size_t>(m_max));
  for (int m = 1; m <= m_max; ++m) {
    const double k = m * std::numbers::pi / (2.0 * K);
    out.push_back({k * k, 1});
  }
  return out;
}

namespace {

// g(lambda) = lambda + shift - sigma e^{-lambda tau}, strictly increasing.
double shift_for(double mu_eig, const ModelParams& p, CharEquation eq) {
  return eq == CharEquation::corrected ? p.mu + mu_eig : p.mu - mu_eig * mu_eig;
}

}  // namespace

double characteristic_residual(double lambda, double mu_eig, const ModelParams& p, CharEquation eq) {
  return lambda + shift_for(mu_eig, p, eq) - p.sigma * std::exp(-lambda * p.tau);
}

double dominant_root(double mu_eig, const ModelParams& p, CharEquation eq) {
  const double a = shift_for(mu_eig, p, eq);
  if (p.sigma == 0.0) return -a;
  auto g = [&](double x) { return x + a - p.sigma * std::exp(-x * p.tau); };
  auto dg = [&](double x) { return 1.0 + p.sigma * p.tau * std::exp(-x * p.tau); };

  // g(-a) = -sigma e^{a tau} < 0; g(-a + sigma) >= 0 iff a <= sigma, otherwise widen.
  double lo = -a;
  double hi = -a + p.sigma;
  while (g(hi) < 0.0) hi += 2.0 * (hi - lo);
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double gx = g(x);
    if (gx == 0.0) return x;
    (gx < 0.0 ? lo : hi) = x;
    double next = x - gx / dg(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

SpectralData build_spectral_data(const ModelParams& params, int m, int m_max, CharEquation eq) {
  if (m < 1 || m > m_max)
    throw ValidationError("bounds.m", "cut index " + std::to_string(m) + " outside 1.." + std::to_string(m_max));
  const auto eig = dirichlet_eigenvalues(params.trunc_radius, 1, m_max);
  SpectralData out;
  out.modes.reserve(eig.size());
  for (const auto& e : eig) out.modes.push_back({e.value, e.multiplicity, dominant_root(e.value, params, eq)});
  std::stable_sort(out.modes.begin(), out.modes.end(),
                   [](const SpectralMode& a, const SpectralMode& b) { return a.root > b.root; });
  out.cut = m;
  out.rho_1 = out.modes.front().root;
  out.rho_m = out.modes[static_cast<std::size_t>(m - 1)].root;
  out.k_m = 0;
  for (int j = 0; j < m; ++j) out.k_m += out.modes[static_cast<std::size_t>(j)].multiplicity;
  out.K_m = params.K_m;
  out.rho_m_negative = out.rho_m < 0.0;
  return out;
}

nlohmann::json to_json(const SpectralData& data) {
  nlohmann::json modes = nlohmann::json::array();
  int k = 0;
  for (std::size_t j = 0; j < data.modes.size(); ++j) {
    k += data.modes[j].multiplicity;
    modes.push_back({{"m", j + 1},
                     {"mu_mK", data.modes[j].mu_eig},
                     {"multiplicity", data.modes[j].multiplicity},
                     {"rho_m", data.modes[j].root},
                     {"k_m", k}});
  }
  return {{"cut", data.cut},         {"rho_1", data.rho_1}, {"rho_m", data.rho_m},
          {"k_m", data.k_m},         {"K_m", data.K_m},     {"rho_m_negative", data.rho_m_negative},
          {"modes", modes}};
}

}  // namespace delaylab
