// SPDX-License-Identifier: Apache-2.0
#ifndef HYPERINV_HYPERMATRIX_HPP
#define HYPERINV_HYPERMATRIX_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperinv/error.hpp"

namespace hyperinv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using Format = std::vector<std::size_t>;

inline constexpr std::size_t kMaxSide = 64;

/**
 * Dense complex hypermatrix of format f_1 x ... x f_n.
 *
 * Entries are stored row-major (last index fastest). Directions and indices
 * are 0-based throughout the library. The format is fixed at construction;
 * every indexed access is checked against it.
 */
class HyperMatrix {
 public:
  HyperMatrix() = default;

  explicit HyperMatrix(Format format) : format_(std::move(format)) {
    validate_format();
    entries_.assign(volume(format_), Complex{0.0, 0.0});
    compute_strides();
  }

  HyperMatrix(Format format, std::vector<Complex> entries)
      : format_(std::move(format)), entries_(std::move(entries)) {
    validate_format();
    detail::require(entries_.size() == volume(format_),
                    "HyperMatrix: entry count " + std::to_string(entries_.size()) +
                        " does not match format volume " + std::to_string(volume(format_)));
    compute_strides();
  }

  /// Two-direction hypermatrix holding the given (possibly rectangular) matrix.
  static HyperMatrix from_matrix(const Matrix& m) {
    HyperMatrix out(Format{static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())});
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        out.entries_[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
    return out;
  }

  Matrix to_matrix() const {
    detail::require(order() == 2, "HyperMatrix::to_matrix: requires exactly 2 directions");
    Matrix m(static_cast<Eigen::Index>(format_[0]), static_cast<Eigen::Index>(format_[1]));
    for (std::size_t i = 0; i < format_[0]; ++i)
      for (std::size_t j = 0; j < format_[1]; ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entries_[i * format_[1] + j];
    return m;
  }

  const Format& format() const noexcept { return format_; }
  std::size_t order() const noexcept { return format_.size(); }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }
  const std::vector<std::size_t>& strides() const noexcept { return strides_; }

  /// True when every direction has the same extent.
  bool is_cubical() const noexcept {
    return !format_.empty() &&
           std::all_of(format_.begin(), format_.end(), [&](std::size_t f) { return f == format_[0]; });
  }

  std::size_t offset(std::span<const std::size_t> index) const {
    detail::require(index.size() == format_.size(), "HyperMatrix: index has wrong number of directions");
    std::size_t off = 0;
    for (std::size_t k = 0; k < index.size(); ++k) {
      detail::require(index[k] < format_[k], "HyperMatrix: index " + std::to_string(index[k]) +
                                                 " out of range in direction " + std::to_string(k));
      off += index[k] * strides_[k];
    }
    return off;
  }

  Complex& at(std::span<const std::size_t> index) { return entries_[offset(index)]; }
  const Complex& at(std::span<const std::size_t> index) const { return entries_[offset(index)]; }
  Complex& at(std::initializer_list<std::size_t> index) {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  const Complex& at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }

  /// Multi-index of a flat offset.
  std::vector<std::size_t> unravel(std::size_t flat) const {
    detail::require(flat < entries_.size(), "HyperMatrix: flat offset out of range");
    std::vector<std::size_t> index(format_.size());
    for (std::size_t k = 0; k < format_.size(); ++k) {
      index[k] = flat / strides_[k];
      flat %= strides_[k];
    }
    return index;
  }

  HyperMatrix& operator+=(const HyperMatrix& other) {
    require_same_format(other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
  }
  HyperMatrix& operator-=(const HyperMatrix& other) {
    require_same_format(other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
  }
  HyperMatrix& operator*=(Complex s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

  friend HyperMatrix operator+(HyperMatrix a, const HyperMatrix& b) { return a += b; }
  friend HyperMatrix operator-(HyperMatrix a, const HyperMatrix& b) { return a -= b; }
  friend HyperMatrix operator*(Complex s, HyperMatrix a) { return a *= s; }
  friend HyperMatrix operator*(HyperMatrix a, Complex s) { return a *= s; }

  friend bool operator==(const HyperMatrix& a, const HyperMatrix& b) {
    return a.format_ == b.format_ && a.entries_ == b.entries_;
  }

  static std::size_t volume(const Format& format) {
    return std::accumulate(format.begin(), format.end(), std::size_t{1}, std::multiplies<>());
  }

 private:
  void validate_format() const {
    detail::require(!format_.empty(), "HyperMatrix: format must have at least one direction");
    for (std::size_t f : format_)
      detail::require(f >= 1 && f <= kMaxSide,
                      "HyperMatrix: format extents must lie in [1, " + std::to_string(kMaxSide) + "]");
  }

  void compute_strides() {
    strides_.assign(format_.size(), 1);
    for (std::size_t k = format_.size() - 1; k > 0; --k) strides_[k - 1] = strides_[k] * format_[k];
  }

  void require_same_format(const HyperMatrix& other) const {
    detail::require(format_ == other.format_, "HyperMatrix: format mismatch");
  }

  Format format_;
  std::vector<Complex> entries_;
  std::vector<std::size_t> strides_;
};

/// Largest absolute entrywise difference; formats must agree.
inline double max_abs_diff(const HyperMatrix& a, const HyperMatrix& b) {
  detail::require(a.format() == b.format(), "max_abs_diff: format mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

inline double max_abs(const HyperMatrix& a) {
  double worst = 0.0;
  for (const auto& e : a.entries()) worst = std::max(worst, std::abs(e));
  return worst;
}

/**
 * Mode product B *_k A: contracts the second index of B against direction k
 * of A, C[.., i, ..] = sum_j B(i, j) A[.., j, ..]. Direction is 0-based.
 */
inline HyperMatrix mode_multiply(const Matrix& b, std::size_t direction, const HyperMatrix& a) {
  detail::require(direction < a.order(), "mode_multiply: direction " + std::to_string(direction) +
                                             " out of range for order " + std::to_string(a.order()));
  const std::size_t extent = a.format()[direction];
  detail::require(b.rows() == b.cols() && static_cast<std::size_t>(b.rows()) == extent,
                  "mode_multiply: matrix must be square of size " + std::to_string(extent));

  const std::size_t inner = a.strides()[direction];
  const std::size_t outer = a.size() / (inner * extent);
  HyperMatrix c(a.format());
  auto src = a.entries();
  auto dst = c.entries();
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * extent * inner;
    for (std::size_t i = 0; i < extent; ++i) {
      for (std::size_t j = 0; j < extent; ++j) {
        const Complex bij = b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (bij == Complex{}) continue;
        const Complex* in = &src[base + j * inner];
        Complex* out = &dst[base + i * inner];
        for (std::size_t r = 0; r < inner; ++r) out[r] += bij * in[r];
      }
    }
  }
  return c;
}

/// Applies bs[k] in direction k for every k, in the order given by `order`.
inline HyperMatrix chain_multiply(std::span<const Matrix> bs, const HyperMatrix& a,
                                  std::span<const std::size_t> order) {
  detail::require(bs.size() == a.order(), "chain_multiply: need one matrix per direction");
  detail::require(order.size() == a.order(), "chain_multiply: order must list every direction once");
  std::vector<bool> seen(a.order(), false);
  for (std::size_t k : order) {
    detail::require(k < a.order() && !seen[k], "chain_multiply: order must be a permutation of directions");
    seen[k] = true;
  }
  HyperMatrix out = a;
  for (std::size_t k : order) out = mode_multiply(bs[k], k, out);
  return out;
}

inline HyperMatrix chain_multiply(std::span<const Matrix> bs, const HyperMatrix& a) {
  std::vector<std::size_t> order(a.order());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return chain_multiply(bs, a, order);
}

/// Multilinear form sum a_{i1..in} x1_{i1} ... xn_{in}.
inline Complex evaluate_form(const HyperMatrix& a, std::span<const Vector> xs) {
  detail::require(xs.size() == a.order(), "evaluate_form: need one vector per direction");
  for (std::size_t k = 0; k < xs.size(); ++k)
    detail::require(static_cast<std::size_t>(xs[k].size()) == a.format()[k],
                    "evaluate_form: vector " + std::to_string(k) + " has wrong length");

  // Contract the last direction repeatedly.
  std::vector<Complex> current(a.entries().begin(), a.entries().end());
  for (std::size_t k = a.order(); k-- > 0;) {
    const std::size_t extent = a.format()[k];
    std::vector<Complex> next(current.size() / extent);
    for (std::size_t o = 0; o < next.size(); ++o) {
      Complex acc{};
      for (std::size_t j = 0; j < extent; ++j) acc += current[o * extent + j] * xs[k](static_cast<Eigen::Index>(j));
      next[o] = acc;
    }
    current = std::move(next);
  }
  return current.front();
}

/// Column stacking v(B) = [b11, ..., bm1, ..., b1n, ..., bmn]^t.
inline Vector vec_realign(const Matrix& b) {
  Vector v(b.size());
  Eigen::Index pos = 0;
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    for (Eigen::Index i = 0; i < b.rows(); ++i) v(pos++) = b(i, j);
  return v;
}

/// Kronecker product; block (i, j) of the result is a(i, j) * c.
inline Matrix kronecker(const Matrix& a, const Matrix& c) {
  Matrix out(a.rows() * c.rows(), a.cols() * c.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * c.rows(), j * c.cols(), c.rows(), c.cols()) = a(i, j) * c;
  return out;
}

/**
 * Paired identity tensor of side `side` with `directions` (even) directions:
 * entry (i1, ..., im) is prod_k delta(i_{2k-1}, i_{2k}).
 */
inline HyperMatrix paired_identity(std::size_t side, std::size_t directions) {
  detail::require(directions >= 2 && directions % 2 == 0,
                  "paired_identity: direction count must be even and at least 2");
  HyperMatrix out(Format(directions, side));
  std::vector<std::size_t> index(directions, 0);
  // Enumerate one value per delta-pair.
  const std::size_t pairs = directions / 2;
  std::vector<std::size_t> choice(pairs, 0);
  while (true) {
    for (std::size_t p = 0; p < pairs; ++p) index[2 * p] = index[2 * p + 1] = choice[p];
    out.at(index) = Complex{1.0, 0.0};
    std::size_t p = pairs;
    while (p > 0) {
      --p;
      if (++choice[p] < side) break;
      choice[p] = 0;
      if (p == 0) return out;
    }
  }
}

}  // namespace hyperinv

#endif  // HYPERINV_HYPERMATRIX_HPP
