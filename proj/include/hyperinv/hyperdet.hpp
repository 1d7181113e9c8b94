// SPDX-License-Identifier: Apache-2.0
#ifndef HYPERINV_HYPERDET_HPP
#define HYPERINV_HYPERDET_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "hyperinv/hypermatrix.hpp"

namespace hyperinv {

/// p(lambda) = sum_k coeffs[k] lambda^k, highest exact-zero coefficients trimmed.
class LambdaPolynomial {
 public:
  LambdaPolynomial() : coeffs_{Complex{}} {}
  explicit LambdaPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Complex{});
    while (coeffs_.size() > 1 && coeffs_.back() == Complex{}) coeffs_.pop_back();
  }

  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }

  /// Coefficient of lambda^k, zero beyond the degree.
  Complex coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }

  Complex operator()(Complex lambda) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lambda + *it;
    return acc;
  }

 private:
  std::vector<Complex> coeffs_;
};

struct HdetOptions {
  /// Maximum number of leaf products (N!)^(m-1) a single evaluation may visit.
  double budget = 1e9;
  /// Workers for the outermost branch loop; results do not depend on it.
  unsigned threads = 1;
};

/// (N!)^(m-1): leaves of the permutation sum with the first permutation fixed.
inline double hdet_leaf_count(std::size_t side, std::size_t directions) {
  double factorial = 1.0;
  for (std::size_t i = 2; i <= side; ++i) factorial *= static_cast<double>(i);
  return std::pow(factorial, static_cast<double>(directions - 1));
}

namespace detail {

inline void require_hdet_shape(const HyperMatrix& a, const HdetOptions& options, const char* who) {
  require(a.order() >= 2 && a.order() % 2 == 0,
          std::string(who) + ": the first hyperdeterminant needs an even number of directions");
  require(a.is_cubical(), std::string(who) + ": hypermatrix must be cubical (all extents equal)");
  const double leaves = hdet_leaf_count(a.format()[0], a.order());
  if (leaves > options.budget)
    throw BudgetError(std::string(who) + ": " + std::to_string(leaves) + " leaf products exceed budget " +
                      std::to_string(options.budget));
}

/// Fixed-order pairwise summation.
template <class T, class Add>
T pairwise_sum(std::span<const T> values, const T& zero, Add add) {
  if (values.empty()) return zero;
  if (values.size() == 1) return values[0];
  const std::size_t half = values.size() / 2;
  return add(pairwise_sum(values.first(half), zero, add), pairwise_sum(values.subspan(half), zero, add));
}

/**
 * Signed permutation sum over tau_2..tau_m in S_N with tau_1 = id of
 * prod_i (c0 + lambda c1)[i, tau_2(i), ..., tau_m(i)].
 *
 * Position i of the search selects one entry of the direction-0 slice i whose
 * remaining indices are all unused. A slice is scanned through its nonzero
 * list when that list is shorter than the number of unused index tuples,
 * otherwise unused tuples are enumerated and looked up densely.
 */
class PermutationSum {
 public:
  PermutationSum(const HyperMatrix& constant, const HyperMatrix* linear)
      : side_(constant.format()[0]), others_(constant.order() - 1), slice_size_(constant.size() / side_) {
    c0_.assign(constant.entries().begin(), constant.entries().end());
    if (linear != nullptr) c1_.assign(linear->entries().begin(), linear->entries().end());
    poly_ = linear != nullptr;

    inner_strides_.assign(others_, 1);
    for (std::size_t k = others_ - 1; k > 0; --k) inner_strides_[k - 1] = inner_strides_[k] * side_;

    nonzero_.resize(side_);
    for (std::size_t i = 0; i < side_; ++i)
      for (std::size_t off = 0; off < slice_size_; ++off)
        if (is_nonzero(i * slice_size_ + off)) nonzero_[i].push_back(off);
  }

  Complex scalar(unsigned threads) const {
    std::vector<Complex> branches = run_branches<Complex>(threads);
    return pairwise_sum<Complex>(branches, Complex{}, [](Complex a, Complex b) { return a + b; });
  }

  std::vector<Complex> polynomial(unsigned threads) const {
    std::vector<std::vector<Complex>> branches = run_branches<std::vector<Complex>>(threads);
    std::vector<Complex> zero(side_ + 1, Complex{});
    return pairwise_sum<std::vector<Complex>>(branches, zero, [](std::vector<Complex> a, const std::vector<Complex>& b) {
      for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
      return a;
    });
  }

 private:
  struct Cursor {
    std::vector<std::uint64_t> masks;
    // Per-depth polynomial scratch: sums[d] holds the completion sum below depth d.
    std::vector<std::vector<Complex>> sums;
  };

  bool is_nonzero(std::size_t flat) const {
    return c0_[flat] != Complex{} || (poly_ && c1_[flat] != Complex{});
  }

  std::size_t index_of(std::size_t off, std::size_t k) const { return (off / inner_strides_[k]) % side_; }

  /// Parity contribution of placing `value` after the values already in `mask`.
  static int inversions(std::uint64_t mask, std::size_t value) {
    return std::popcount(value + 1 >= 64 ? std::uint64_t{0} : mask >> (value + 1)) & 1;
  }

  Cursor make_cursor() const {
    Cursor cur;
    cur.masks.assign(others_, 0);
    if (poly_) cur.sums.assign(side_ + 1, std::vector<Complex>(side_ + 1, Complex{}));
    return cur;
  }

  template <class T>
  std::vector<T> run_branches(unsigned threads) const {
    const std::vector<std::size_t>& top = nonzero_[0];
    std::vector<T> results(top.size(), T{});
    auto worker = [&](unsigned w, unsigned stride) {
      Cursor cur = make_cursor();
      for (std::size_t b = w; b < top.size(); b += stride) results[b] = branch<T>(cur, top[b]);
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(top.size(), 1))));
    if (threads == 1) {
      worker(0, 1);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w, threads);
    }
    return results;
  }

  /// Contribution of all completions that start with entry `off` of slice 0.
  template <class T>
  T branch(Cursor& cur, std::size_t off) const {
    for (std::size_t k = 0; k < others_; ++k) cur.masks[k] = std::uint64_t{1} << index_of(off, k);
    T out{};
    if constexpr (std::is_same_v<T, Complex>) {
      out = c0_[off] * descend_scalar(cur, 1);
    } else {
      descend_poly(cur, 1);
      out.assign(side_ + 1, Complex{});
      multiply_linear(cur.sums[1], c0_[off], c1_[off], 1.0, out);
    }
    std::fill(cur.masks.begin(), cur.masks.end(), 0);
    return out;
  }

  // acc += sign * (c0 + lambda c1) * sub
  static void multiply_linear(const std::vector<Complex>& sub, Complex c0, Complex c1, double sign,
                              std::vector<Complex>& acc) {
    for (std::size_t k = 0; k + 1 < acc.size(); ++k) {
      if (sub[k] == Complex{}) continue;
      acc[k] += sign * c0 * sub[k];
      acc[k + 1] += sign * c1 * sub[k];
    }
  }

  bool use_list(std::size_t depth) const {
    double free_tuples = std::pow(static_cast<double>(side_ - depth), static_cast<double>(others_));
    return static_cast<double>(nonzero_[depth].size()) <= free_tuples;
  }

  /// Visits every admissible entry of slice `depth`, calling fn(offset, parity) with masks updated.
  template <class Fn>
  void for_each_admissible(Cursor& cur, std::size_t depth, Fn&& fn) const {
    if (use_list(depth)) {
      for (std::size_t off : nonzero_[depth]) {
        int parity = 0;
        bool ok = true;
        for (std::size_t k = 0; k < others_ && ok; ++k) {
          const std::size_t v = index_of(off, k);
          if ((cur.masks[k] >> v) & 1u) ok = false;
          else parity ^= inversions(cur.masks[k], v);
        }
        if (!ok) continue;
        for (std::size_t k = 0; k < others_; ++k) cur.masks[k] |= std::uint64_t{1} << index_of(off, k);
        fn(depth * slice_size_ + off, parity);
        for (std::size_t k = 0; k < others_; ++k) cur.masks[k] &= ~(std::uint64_t{1} << index_of(off, k));
      }
    } else {
      enumerate_tuples(cur, depth, 0, 0, 0, fn);
    }
  }

  template <class Fn>
  void enumerate_tuples(Cursor& cur, std::size_t depth, std::size_t k, std::size_t off, int parity, Fn& fn) const {
    if (k == others_) {
      const std::size_t flat = depth * slice_size_ + off;
      if (is_nonzero(flat)) fn(flat, parity);
      return;
    }
    for (std::size_t v = 0; v < side_; ++v) {
      const std::uint64_t bit = std::uint64_t{1} << v;
      if (cur.masks[k] & bit) continue;
      const int p = parity ^ inversions(cur.masks[k], v);
      cur.masks[k] |= bit;
      enumerate_tuples(cur, depth, k + 1, off + v * inner_strides_[k], p, fn);
      cur.masks[k] &= ~bit;
    }
  }

  Complex descend_scalar(Cursor& cur, std::size_t depth) const {
    if (depth == side_) return Complex{1.0, 0.0};
    Complex acc{};
    for_each_admissible(cur, depth, [&](std::size_t flat, int parity) {
      const Complex sub = descend_scalar(cur, depth + 1);
      if (sub == Complex{}) return;
      const Complex term = c0_[flat] * sub;
      acc += parity ? -term : term;
    });
    return acc;
  }

  /// Fills cur.sums[depth] with the completion polynomial below `depth`.
  void descend_poly(Cursor& cur, std::size_t depth) const {
    std::vector<Complex>& acc = cur.sums[depth];
    std::fill(acc.begin(), acc.end(), Complex{});
    if (depth == side_) {
      acc[0] = Complex{1.0, 0.0};
      return;
    }
    for_each_admissible(cur, depth, [&](std::size_t flat, int parity) {
      descend_poly(cur, depth + 1);
      multiply_linear(cur.sums[depth + 1], c0_[flat], c1_[flat], parity ? -1.0 : 1.0, acc);
    });
  }

  std::size_t side_;
  std::size_t others_;
  std::size_t slice_size_;
  bool poly_ = false;
  std::vector<Complex> c0_;
  std::vector<Complex> c1_;
  std::vector<std::size_t> inner_strides_;
  std::vector<std::vector<std::size_t>> nonzero_;
};

/// True when some direction has an all-zero slice.
inline bool has_zero_slice(const HyperMatrix& a) {
  for (std::size_t k = 0; k < a.order(); ++k) {
    std::vector<bool> live(a.format()[k], false);
    for (std::size_t flat = 0; flat < a.size(); ++flat)
      if (a.entries()[flat] != Complex{}) live[(flat / a.strides()[k]) % a.format()[k]] = true;
    if (std::find(live.begin(), live.end(), false) != live.end()) return true;
  }
  return false;
}

}  // namespace detail

/**
 * Cayley's first hyperdeterminant of a cubical hypermatrix with an even
 * number m of directions and side N:
 *
 *   hdet(A) = sum_{tau_2..tau_m in S_N} prod_k sgn(tau_k) prod_i A[i, tau_2(i), ..., tau_m(i)]
 *
 * which equals the symmetric (1/N!) sum over all m permutations because m is
 * even. For m = 2 this is the ordinary determinant. Throws BudgetError when
 * (N!)^(m-1) exceeds options.budget.
 */
inline Complex hdet(const HyperMatrix& a, const HdetOptions& options = {}) {
  detail::require_hdet_shape(a, options, "hdet");
  if (detail::has_zero_slice(a)) return Complex{};
  return detail::PermutationSum(a, nullptr).scalar(options.threads);
}

/**
 * Coefficients of hdet(lambda I - A) with I the paired identity, accumulated
 * exactly: every search position contributes the linear factor
 * (lambda I[..] - A[..]).
 */
inline LambdaPolynomial hyper_charpoly(const HyperMatrix& a, const HdetOptions& options = {}) {
  detail::require_hdet_shape(a, options, "hyper_charpoly");
  const HyperMatrix identity = paired_identity(a.format()[0], a.order());
  const HyperMatrix negated = Complex{-1.0, 0.0} * a;
  return LambdaPolynomial(detail::PermutationSum(negated, &identity).polynomial(options.threads));
}

/**
 * Cross-check for hyper_charpoly: evaluates hdet(lambda_j I - A) at N + 1
 * Chebyshev points scaled by 1 + max|A| and solves the Vandermonde system.
 * Conditioning degrades quickly for N > 6.
 */
inline LambdaPolynomial hyper_charpoly_by_interpolation(const HyperMatrix& a, const HdetOptions& options = {}) {
  detail::require_hdet_shape(a, options, "hyper_charpoly_by_interpolation");
  const std::size_t side = a.format()[0];
  const std::size_t points = side + 1;
  const HyperMatrix identity = paired_identity(side, a.order());
  const double scale = 1.0 + max_abs(a);
  Matrix vandermonde(static_cast<Eigen::Index>(points), static_cast<Eigen::Index>(points));
  Vector values(static_cast<Eigen::Index>(points));
  for (std::size_t j = 0; j < points; ++j) {
    const double lambda =
        scale * std::cos(std::numbers::pi * (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(points)));
    for (std::size_t k = 0; k < points; ++k)
      vandermonde(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = std::pow(lambda, static_cast<double>(k));
    values(static_cast<Eigen::Index>(j)) = hdet(Complex{lambda, 0.0} * identity - a, options);
  }
  const Vector solved = vandermonde.partialPivLu().solve(values);
  return LambdaPolynomial(std::vector<Complex>(solved.data(), solved.data() + solved.size()));
}

namespace detail {
inline void require_222(const HyperMatrix& a, const char* who) {
  require(a.format() == Format{2, 2, 2}, std::string(who) + ": hypermatrix must have format 2x2x2");
}
}  // namespace detail

/// Cayley's second hyperdeterminant of a 2x2x2 hypermatrix, explicit quartic.
inline Complex det222(const HyperMatrix& a) {
  detail::require_222(a, "det222");
  auto x = [&](std::size_t i, std::size_t j, std::size_t k) { return a.at({i, j, k}); };
  const Complex a000 = x(0, 0, 0), a001 = x(0, 0, 1), a010 = x(0, 1, 0), a011 = x(0, 1, 1);
  const Complex a100 = x(1, 0, 0), a101 = x(1, 0, 1), a110 = x(1, 1, 0), a111 = x(1, 1, 1);
  return a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
         a100 * a100 * a011 * a011                                                      //
         - 2.0 * a000 * a001 * a110 * a111 - 2.0 * a000 * a010 * a101 * a111            //
         - 2.0 * a000 * a011 * a100 * a111 - 2.0 * a001 * a010 * a101 * a110            //
         - 2.0 * a001 * a011 * a110 * a100 - 2.0 * a010 * a011 * a101 * a100            //
         + 4.0 * a000 * a011 * a101 * a110 + 4.0 * a001 * a010 * a100 * a111;
}

/**
 * Same invariant through Levi-Civita contractions:
 *   b_kn = (1/2) eps^il eps^jm a_ijk a_lmn,   Det = -2 eps^il eps^jm b_ij b_lm.
 * The prefactor on the second contraction makes it agree with det222.
 */
inline Complex det222_epsilon(const HyperMatrix& a) {
  detail::require_222(a, "det222_epsilon");
  constexpr double eps[2][2] = {{0.0, 1.0}, {-1.0, 0.0}};
  Complex b[2][2] = {};
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t n = 0; n < 2; ++n)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t l = 0; l < 2; ++l) {
          if (eps[i][l] == 0.0) continue;
          for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t m = 0; m < 2; ++m) {
              if (eps[j][m] == 0.0) continue;
              b[k][n] += 0.5 * eps[i][l] * eps[j][m] * a.at({i, j, k}) * a.at({l, m, n});
            }
        }
  Complex contraction{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t l = 0; l < 2; ++l)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t m = 0; m < 2; ++m) contraction += eps[i][l] * eps[j][m] * b[i][j] * b[l][m];
  return -2.0 * contraction;
}

/// det(lambda I - A) by the Faddeev-LeVerrier recurrence; coefficients are polynomial in the entries.
inline LambdaPolynomial charpoly_coeffs(const Matrix& a) {
  detail::require(a.rows() == a.cols(), "charpoly_coeffs: matrix must be square");
  const Eigen::Index n = a.rows();
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex{});
  c[static_cast<std::size_t>(n)] = 1.0;
  Matrix m = Matrix::Zero(n, n);
  const Matrix identity = Matrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<std::size_t>(n - k + 1)] * identity;
    c[static_cast<std::size_t>(n - k)] = -(a * m).trace() / static_cast<double>(k);
  }
  return LambdaPolynomial(std::move(c));
}

/// Sum of all k x k principal minors (k is 1-based order, 1 <= k <= dim).
inline Complex principal_minor_sum(const Matrix& a, std::size_t k) {
  detail::require(a.rows() == a.cols(), "principal_minor_sum: matrix must be square");
  const auto n = static_cast<std::size_t>(a.rows());
  detail::require(k >= 1 && k <= n, "principal_minor_sum: order out of range");
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  std::vector<Eigen::Index> rows;
  Complex total{};
  do {
    rows.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) rows.push_back(static_cast<Eigen::Index>(i));
    Matrix sub(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c)
        sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(rows[r], rows[c]);
    total += sub.determinant();
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return total;
}

}  // namespace hyperinv

#endif  // HYPERINV_HYPERDET_HPP
