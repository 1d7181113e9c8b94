// SPDX-License-Identifier: Apache-2.0
#ifndef HYPERINV_SAMPLING_HPP
#define HYPERINV_SAMPLING_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

#include "hyperinv/bloch.hpp"

namespace hyperinv {

using Rng = std::mt19937_64;

/// Generator for stream `stream` of `seed`; trials use (seed, trial index).
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

inline Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

/// Complex Ginibre matrix: iid standard complex Gaussian entries.
inline Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = gaussian_complex(rng);
  return g;
}

inline Matrix ginibre(std::size_t n, Rng& rng) { return ginibre(n, n, rng); }

inline HyperMatrix random_hypermatrix(const Format& format, Rng& rng) {
  HyperMatrix a(format);
  for (auto& e : a.entries()) e = gaussian_complex(rng);
  return a;
}

/// Haar unitary: QR of a Ginibre matrix with the phases of diag(R) moved into Q.
inline Matrix random_unitary(std::size_t d, Rng& rng) {
  const Matrix g = ginibre(d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex rkk = r(k, k);
    const double mod = std::abs(rkk);
    if (mod > 0.0) q.col(k) *= rkk / mod;
  }
  return q;
}

inline Matrix random_unitary(std::size_t d, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_unitary(d, rng);
}

inline double condition_number(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
}

inline constexpr double kDefaultConditionCap = 20.0;
inline constexpr int kMaxResamples = 1000;

/**
 * Element of SL(d, C): a Ginibre matrix divided by the principal d-th root of
 * its determinant, resampled while its condition number exceeds `cond_cap`.
 */
inline Matrix random_sl(std::size_t d, Rng& rng, double cond_cap = kDefaultConditionCap) {
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    const Matrix g = ginibre(d, rng);
    const Complex det = g.determinant();
    if (det == Complex{}) continue;
    const Complex root = std::exp(std::log(det) / static_cast<double>(d));
    Matrix a = g / root;
    if (condition_number(a) <= cond_cap) return a;
  }
  throw std::runtime_error("random_sl: no sample within the condition cap after 1000 attempts");
}

inline Matrix random_sl(std::size_t d, std::uint64_t seed, double cond_cap = kDefaultConditionCap) {
  Rng rng = make_rng(seed);
  return random_sl(d, rng, cond_cap);
}

/// Invertible Ginibre matrix with the same condition cap as random_sl.
inline Matrix random_gl(std::size_t d, Rng& rng, double cond_cap = kDefaultConditionCap) {
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    Matrix g = ginibre(d, rng);
    if (condition_number(g) <= cond_cap) return g;
  }
  throw std::runtime_error("random_gl: no sample within the condition cap after 1000 attempts");
}

/// One operator per party drawn from the given group.
inline LocalOperatorChain random_chain(const Dims& dims, GroupTag tag, Rng& rng,
                                       double cond_cap = kDefaultConditionCap) {
  std::vector<Matrix> ops;
  for (std::size_t d : dims) {
    switch (tag) {
      case GroupTag::Unitary: ops.push_back(random_unitary(d, rng)); break;
      case GroupTag::SpecialLinear: ops.push_back(random_sl(d, rng, cond_cap)); break;
      case GroupTag::GeneralLinear: ops.push_back(random_gl(d, rng, cond_cap)); break;
    }
  }
  return LocalOperatorChain(std::move(ops), tag);
}

/// Haar element of SO(n) acting on indices 1..n-1 and fixing index 0.
inline RealMatrix random_rotation_fixing_identity(std::size_t n, Rng& rng) {
  detail::require(n >= 2, "random_rotation_fixing_identity: need n >= 2");
  const auto m = static_cast<Eigen::Index>(n - 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix g(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < m; ++i) g(i, j) = normal(rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < m; ++k)
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  RealMatrix out = RealMatrix::Identity(m + 1, m + 1);
  out.bottomRightCorner(m, m) = q;
  return out;
}

/**
 * rho = sum_r v_r v_r^dagger / trace for `rank` iid complex Gaussian vectors.
 */
inline DensityState random_density(const Dims& dims, std::size_t rank, Rng& rng) {
  detail::require(rank >= 1, "random_density: rank must be at least 1");
  detail::require_dims(dims);
  const Matrix v = ginibre(detail::total_dim(dims), rank, rng);
  Matrix rho = v * v.adjoint();
  rho /= rho.trace().real();
  return DensityState(dims, rho);
}

inline DensityState random_density(const Dims& dims, std::size_t rank, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_density(dims, rank, rng);
}

/// Unit-norm pure state with Gaussian amplitudes.
inline PureState random_pure(const Dims& dims, Rng& rng) {
  detail::require_dims(dims);
  HyperMatrix amps = random_hypermatrix(dims, rng);
  double norm = 0.0;
  for (const auto& e : amps.entries()) norm += std::norm(e);
  amps *= Complex{1.0 / std::sqrt(norm), 0.0};
  return PureState(std::move(amps));
}

}  // namespace hyperinv

#endif  // HYPERINV_SAMPLING_HPP
