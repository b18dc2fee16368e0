#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "delaylab/errors.hpp"
#include "delaylab/field.hpp"

namespace delaylab {

/// |k|^2 for every Fourier mode of the periodic box, in FFT storage order.
inline Eigen::ArrayXd wavenumber_squared(const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.points_per_axis);
  const double base = std::numbers::pi / grid.half_length;
  Eigen::ArrayXd k2_axis(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double idx = static_cast<double>(j < n / 2 ? j : j - n);
    k2_axis[j] = (base * idx) * (base * idx);
  }
  if (grid.dim == 1) return k2_axis;
  Eigen::ArrayXd out(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out[i * n + j] = k2_axis[i] + k2_axis[j];
  return out;
}

/// A Fourier multiplier on one grid: FFT, scale each mode by `symbol`, inverse FFT.
///
/// Keeps the FFT plan and scratch buffers, so one instance is not shareable
/// between threads.
template <typename Scalar>
class FourierMultiplier {
 public:
  using Complex = std::complex<Scalar>;
  using SymbolArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  FourierMultiplier(const Grid& grid, SymbolArray symbol)
      : grid_(grid), symbol_(std::move(symbol)), buffer_(grid.size()), line_(grid.points_per_axis),
        line_out_(grid.points_per_axis) {}

  /// Multiplier exp(-c * |k|^2) scaled by `prefactor`.
  static FourierMultiplier gaussian(const Grid& grid, double c, double prefactor = 1.0) {
    SymbolArray s = (prefactor * (-c * wavenumber_squared(grid)).exp()).template cast<Scalar>();
    return FourierMultiplier(grid, std::move(s));
  }

  const Grid& grid() const { return grid_; }
  const SymbolArray& symbol() const { return symbol_; }

  BasicField<Scalar> apply(const BasicField<Scalar>& in) {
    BasicField<Scalar> out(grid_);
    apply(in, out);
    return out;
  }

  void apply(const BasicField<Scalar>& in, BasicField<Scalar>& out) {
    if (!(in.grid() == grid_)) throw GridMismatchError();
    if (!(out.grid() == grid_)) out = BasicField<Scalar>(grid_);
    for (Eigen::Index i = 0; i < in.size(); ++i) buffer_[i] = Complex(in.values()[i], Scalar(0));
    transform(true);
    for (Eigen::Index i = 0; i < in.size(); ++i) buffer_[i] *= symbol_[i];
    transform(false);
    for (Eigen::Index i = 0; i < in.size(); ++i) out.values()[i] = buffer_[i].real();
  }

 private:
  // In-place transform of buffer_; rows then columns for d = 2.
  void transform(bool forward) {
    const auto n = static_cast<std::size_t>(grid_.points_per_axis);
    auto run = [&] {
      if (forward)
        fft_.fwd(line_out_, line_);
      else
        fft_.inv(line_out_, line_);
    };
    if (grid_.dim == 1) {
      line_.assign(buffer_.begin(), buffer_.end());
      run();
      std::copy(line_out_.begin(), line_out_.end(), buffer_.begin());
      return;
    }
    for (std::size_t r = 0; r < n; ++r) {
      std::copy_n(buffer_.begin() + static_cast<std::ptrdiff_t>(r * n), n, line_.begin());
      run();
      std::copy_n(line_out_.begin(), n, buffer_.begin() + static_cast<std::ptrdiff_t>(r * n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t r = 0; r < n; ++r) line_[r] = buffer_[r * n + c];
      run();
      for (std::size_t r = 0; r < n; ++r) buffer_[r * n + c] = line_out_[r];
    }
  }

  Grid grid_;
  SymbolArray symbol_;
  Eigen::FFT<Scalar> fft_;
  std::vector<Complex> buffer_;
  std::vector<Complex> line_;
  std::vector<Complex> line_out_;
};

/// S(t): e^{-mu t} times convolution with the heat kernel of variance 2t.
template <typename Scalar>
BasicField<Scalar> heat_semigroup(const BasicField<Scalar>& field, double t, double mu) {
  if (!(t >= 0.0)) throw ValidationError("t", "heat semigroup needs t >= 0");
  if (t == 0.0) return field;
  return FourierMultiplier<Scalar>::gaussian(field.grid(), t, std::exp(-mu * t)).apply(field);
}

/// H: convolution with the unit-mass Gaussian of variance 2*iota.
template <typename Scalar>
BasicField<Scalar> nonlocal_H(const BasicField<Scalar>& field, double iota) {
  if (!(iota > 0.0)) throw ValidationError("model.iota", "must be positive");
  return FourierMultiplier<Scalar>::gaussian(field.grid(), iota).apply(field);
}

}  // namespace delaylab
