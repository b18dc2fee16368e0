#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "delaylab/model.hpp"

namespace delaylab {

/// Which reading of the delayed characteristic equation to solve.
enum class CharEquation {
  /// lambda + mu + mu_m - sigma e^{-lambda tau} = 0
  corrected,
  /// mu_m^2 - (lambda + mu - sigma e^{-lambda tau}) = 0, as printed
  raw_power2,
};

struct DirichletEigenvalue {
  double value = 0.0;
  int multiplicity = 1;
};

/// Eigenvalues of -Laplacian on (-K, K) with Dirichlet ends: (m pi / 2K)^2.
/// Only d = 1 is implemented.
std::vector<DirichletEigenvalue> dirichlet_eigenvalues(double K, int dim, int m_max);

/// The unique real root of lambda + mu + mu_eig - sigma e^{-lambda tau} = 0
/// (or the raw reading), to residual < 1e-12.
double dominant_root(double mu_eig, const ModelParams& params, CharEquation eq = CharEquation::corrected);

/// Residual of the characteristic equation at lambda.
double characteristic_residual(double lambda, double mu_eig, const ModelParams& params,
                               CharEquation eq = CharEquation::corrected);

struct SpectralMode {
  double mu_eig = 0.0;
  int multiplicity = 1;
  double root = 0.0;
};

struct SpectralData {
  /// Sorted by decreasing root, so modes[0].root is rho_1.
  std::vector<SpectralMode> modes;
  int cut = 1;
  double rho_1 = 0.0;
  double rho_m = 0.0;
  int k_m = 0;
  double K_m = 1.0;
  bool rho_m_negative = false;
};

SpectralData build_spectral_data(const ModelParams& params, int m, int m_max,
                                 CharEquation eq = CharEquation::corrected);

nlohmann::json to_json(const SpectralData& data);

}  // namespace delaylab
