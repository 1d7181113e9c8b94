// SPDX-License-Identifier: Apache-2.0
#ifndef HYPERINV_BLOCH_HPP
#define HYPERINV_BLOCH_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hyperinv/hypermatrix.hpp"

namespace hyperinv {

using Dims = std::vector<std::size_t>;

/**
 * Hermitian operator basis sigma_0, ..., sigma_{d^2-1} of d x d matrices with
 * sigma_0 = I and tr(sigma_i sigma_j) = d delta_ij.
 */
struct BlochBasis {
  std::size_t d = 0;
  std::vector<Matrix> ops;
};

namespace detail {

inline double hermitian_defect(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

inline std::size_t total_dim(const Dims& dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

inline void require_dims(const Dims& dims) {
  require(!dims.empty(), "dims must name at least one party");
  for (std::size_t d : dims) require(d >= 1 && d <= 8, "local dimensions must lie in [1, 8]");
}

}  // namespace detail

/// Checks the basis invariants; throws ValidationError on the first violation.
inline void validate_basis(const BlochBasis& basis, double tol = 1e-12) {
  const auto d = static_cast<Eigen::Index>(basis.d);
  detail::require(basis.ops.size() == basis.d * basis.d, "BlochBasis: expected d^2 operators");
  for (const auto& op : basis.ops) {
    detail::require(op.rows() == d && op.cols() == d, "BlochBasis: operator has wrong size");
    detail::require(detail::hermitian_defect(op) <= tol, "BlochBasis: operator is not Hermitian");
  }
  detail::require(basis.ops[0] == Matrix::Identity(d, d), "BlochBasis: sigma_0 must be the identity");
  for (std::size_t i = 0; i < basis.ops.size(); ++i)
    for (std::size_t j = 0; j < basis.ops.size(); ++j) {
      const Complex hs = (basis.ops[i] * basis.ops[j]).trace();
      const double expected = i == j ? static_cast<double>(basis.d) : 0.0;
      detail::require(std::abs(hs - expected) <= tol * static_cast<double>(basis.d),
                      "BlochBasis: Hilbert-Schmidt products violate tr(s_i s_j) = d delta_ij");
    }
}

/**
 * Generalized Gell-Mann basis rescaled so that tr(s_i s_j) = d delta_ij.
 * Order: identity, symmetric (j<k lexicographic), antisymmetric (same pair
 * order), diagonal (l = 1..d-1). For d = 2 this is I, X, Y, Z.
 */
inline BlochBasis gell_mann_basis(std::size_t d) {
  detail::require(d >= 2, "gell_mann_basis: dimension must be at least 2");
  const auto n = static_cast<Eigen::Index>(d);
  const double scale = std::sqrt(static_cast<double>(d) / 2.0);
  const Complex i_unit{0.0, 1.0};

  BlochBasis basis{d, {}};
  basis.ops.reserve(d * d);
  basis.ops.push_back(Matrix::Identity(n, n));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) {
      Matrix m = Matrix::Zero(n, n);
      m(j, k) = m(k, j) = scale;
      basis.ops.push_back(std::move(m));
    }
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) {
      Matrix m = Matrix::Zero(n, n);
      m(j, k) = -i_unit * scale;
      m(k, j) = i_unit * scale;
      basis.ops.push_back(std::move(m));
    }
  for (Eigen::Index l = 1; l < n; ++l) {
    const double norm = scale * std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < l; ++j) m(j, j) = norm;
    m(l, l) = -static_cast<double>(l) * norm;
    basis.ops.push_back(std::move(m));
  }
  return basis;
}

/// Basis sigma'_i = sum_j R_ij sigma_j for a real orthogonal R with R e_0 = e_0.
inline BlochBasis rotate_basis(const BlochBasis& basis, const RealMatrix& rotation) {
  const auto n = static_cast<Eigen::Index>(basis.ops.size());
  detail::require(rotation.rows() == n && rotation.cols() == n, "rotate_basis: rotation must be d^2 x d^2");
  detail::require((rotation.transpose() * rotation - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10,
                  "rotate_basis: rotation is not orthogonal");
  detail::require(std::abs(rotation(0, 0) - 1.0) <= 1e-10 &&
                      rotation.row(0).tail(n - 1).cwiseAbs().maxCoeff() <= 1e-10 &&
                      rotation.col(0).tail(n - 1).cwiseAbs().maxCoeff() <= 1e-10,
                  "rotate_basis: rotation must fix index 0");
  BlochBasis out{basis.d, {}};
  out.ops.reserve(basis.ops.size());
  out.ops.push_back(basis.ops[0]);
  for (Eigen::Index i = 1; i < n; ++i) {
    Matrix m = Matrix::Zero(basis.ops[0].rows(), basis.ops[0].cols());
    for (Eigen::Index j = 1; j < n; ++j) m += rotation(i, j) * basis.ops[static_cast<std::size_t>(j)];
    out.ops.push_back(std::move(m));
  }
  return out;
}

/**
 * Density operator on H_1 (x) ... (x) H_n. Positivity and unit trace are not
 * required. Construction rejects matrices further than `tol` from Hermitian
 * and stores the Hermitian part.
 */
class DensityState {
 public:
  DensityState(Dims dims, const Matrix& matrix, double tol = 1e-10) : dims_(std::move(dims)) {
    detail::require_dims(dims_);
    const auto n = static_cast<Eigen::Index>(detail::total_dim(dims_));
    detail::require(matrix.rows() == n && matrix.cols() == n,
                    "DensityState: matrix must be " + std::to_string(n) + " x " + std::to_string(n));
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    detail::require(detail::hermitian_defect(matrix) <= tol * scale, "DensityState: matrix is not Hermitian");
    matrix_ = (matrix + matrix.adjoint()) / 2.0;
  }

  const Dims& dims() const noexcept { return dims_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  std::size_t parties() const noexcept { return dims_.size(); }

 private:
  Dims dims_;
  Matrix matrix_;
};

/// Pure state |phi> = sum a_{i1..in} |i1 ... in>, amplitudes of format dims.
class PureState {
 public:
  explicit PureState(HyperMatrix amplitudes) : amplitudes_(std::move(amplitudes)) {
    dims_ = amplitudes_.format();
    detail::require_dims(dims_);
  }

  const Dims& dims() const noexcept { return dims_; }
  const HyperMatrix& amplitudes() const noexcept { return amplitudes_; }
  std::size_t parties() const noexcept { return dims_.size(); }

  Vector vector() const { return Eigen::Map<const Vector>(amplitudes_.entries().data(), static_cast<Eigen::Index>(amplitudes_.size())); }

  /// |phi><phi| as a density state.
  DensityState density() const {
    const Vector v = vector();
    return DensityState(dims_, v * v.adjoint());
  }

 private:
  Dims dims_;
  HyperMatrix amplitudes_;
};

enum class GroupTag { Unitary, SpecialLinear, GeneralLinear };

inline const char* to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::Unitary: return "unitary";
    case GroupTag::SpecialLinear: return "special-linear";
    case GroupTag::GeneralLinear: return "general-linear";
  }
  return "?";
}

/// Local operation g = A_1 (x) ... (x) A_n, validated against its group tag.
class LocalOperatorChain {
 public:
  LocalOperatorChain(std::vector<Matrix> ops, GroupTag tag, double tol = 1e-10) : ops_(std::move(ops)), tag_(tag) {
    detail::require(!ops_.empty(), "LocalOperatorChain: need at least one operator");
    for (const auto& op : ops_) {
      detail::require(op.rows() == op.cols() && op.rows() >= 1, "LocalOperatorChain: operators must be square");
      const auto n = op.rows();
      if (tag_ == GroupTag::Unitary)
        detail::require((op * op.adjoint() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tol,
                        "LocalOperatorChain: operator tagged unitary is not unitary");
      if (tag_ == GroupTag::SpecialLinear)
        detail::require(std::abs(op.determinant() - 1.0) <= tol,
                        "LocalOperatorChain: operator tagged special-linear has det != 1");
    }
  }

  static LocalOperatorChain identity(const Dims& dims) {
    std::vector<Matrix> ops;
    for (std::size_t d : dims) ops.push_back(Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
    return LocalOperatorChain(std::move(ops), GroupTag::Unitary);
  }

  const std::vector<Matrix>& ops() const noexcept { return ops_; }
  GroupTag tag() const noexcept { return tag_; }

  Dims dims() const {
    Dims out;
    for (const auto& op : ops_) out.push_back(static_cast<std::size_t>(op.rows()));
    return out;
  }

  /// A_1 (x) ... (x) A_n.
  Matrix tensor() const {
    Matrix out = ops_.front();
    for (std::size_t k = 1; k < ops_.size(); ++k) out = kronecker(out, ops_[k]);
    return out;
  }

 private:
  std::vector<Matrix> ops_;
  GroupTag tag_;
};

/// Real d^2 x d^2 matrix of X -> A X A^dagger in a Bloch basis (column convention).
struct InducedMatrix {
  std::size_t d = 0;
  RealMatrix b;

  Matrix complex() const { return b.cast<Complex>(); }
};

/**
 * B(i, j) = tr(A s_j A^dagger s_i) / d so that A s_j A^dagger = sum_i B(i, j) s_i.
 */
inline InducedMatrix induced_matrix(const Matrix& a, const BlochBasis& basis) {
  detail::require(a.rows() == a.cols() && static_cast<std::size_t>(a.rows()) == basis.d,
                  "induced_matrix: operator size does not match basis dimension");
  const auto n = static_cast<Eigen::Index>(basis.ops.size());
  const double inv_d = 1.0 / static_cast<double>(basis.d);
  Matrix complex_b(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Matrix conj = a * basis.ops[static_cast<std::size_t>(j)] * a.adjoint();
    for (Eigen::Index i = 0; i < n; ++i)
      complex_b(i, j) = (conj * basis.ops[static_cast<std::size_t>(i)]).trace() * inv_d;
  }
  const double scale = std::max(1.0, complex_b.cwiseAbs().maxCoeff());
  detail::require(complex_b.imag().cwiseAbs().maxCoeff() <= 1e-12 * scale,
                  "induced_matrix: imaginary residue exceeds 1e-12");
  return InducedMatrix{basis.d, complex_b.real()};
}

inline InducedMatrix induced_matrix(const Matrix& a) {
  return induced_matrix(a, gell_mann_basis(static_cast<std::size_t>(a.rows())));
}

namespace detail {

/// Gell-Mann basis for each party.
inline std::vector<BlochBasis> default_bases(const Dims& dims) {
  std::vector<BlochBasis> bases;
  for (std::size_t d : dims) bases.push_back(gell_mann_basis(d));
  return bases;
}

/**
 * Reorders rho[(r_1..r_n), (c_1..c_n)] into a hypermatrix with one combined
 * index (r_k, c_k) per party, format d_1^2 x ... x d_n^2.
 */
inline HyperMatrix pair_party_indices(const Dims& dims, const Matrix& rho) {
  Format format;
  for (std::size_t d : dims) format.push_back(d * d);
  HyperMatrix out(format);
  const std::size_t total = total_dim(dims);
  const std::size_t n = dims.size();
  std::vector<std::size_t> r(n), c(n), index(n);
  for (std::size_t row = 0; row < total; ++row) {
    for (std::size_t col = 0; col < total; ++col) {
      std::size_t rr = row, cc = col;
      for (std::size_t k = n; k-- > 0;) {
        r[k] = rr % dims[k];
        rr /= dims[k];
        c[k] = cc % dims[k];
        cc /= dims[k];
      }
      for (std::size_t k = 0; k < n; ++k) index[k] = r[k] * dims[k] + c[k];
      out.at(index) = rho(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }
  }
  return out;
}

inline Matrix unpair_party_indices(const Dims& dims, const HyperMatrix& paired) {
  const std::size_t total = total_dim(dims);
  const std::size_t n = dims.size();
  Matrix rho(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  std::vector<std::size_t> index(n);
  for (std::size_t row = 0; row < total; ++row) {
    for (std::size_t col = 0; col < total; ++col) {
      std::size_t rr = row, cc = col;
      for (std::size_t k = n; k-- > 0;) {
        index[k] = (rr % dims[k]) * dims[k] + cc % dims[k];
        rr /= dims[k];
        cc /= dims[k];
      }
      rho(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = paired.at(index);
    }
  }
  return rho;
}

inline void require_bases(const Dims& dims, const std::vector<BlochBasis>& bases) {
  require(bases.size() == dims.size(), "need one Bloch basis per party");
  for (std::size_t k = 0; k < dims.size(); ++k)
    require(bases[k].d == dims[k], "Bloch basis dimension does not match party " + std::to_string(k));
}

}  // namespace detail

/**
 * Bloch hypermatrix [rho]: a_I = tr(rho s_{i1} (x) ... (x) s_{in}) / (d_1 ... d_n),
 * format d_1^2 x ... x d_n^2. Entries are real; imaginary residue above
 * 1e-12 (relative to the largest entry of rho) is an error.
 */
inline HyperMatrix represent(const DensityState& rho, const std::vector<BlochBasis>& bases) {
  detail::require_bases(rho.dims(), bases);
  // Map (r, c) -> i with coefficient s_i(c, r) / d, i.e. tr(rho s_i)/d per party.
  std::vector<Matrix> maps;
  for (const auto& basis : bases) {
    const auto d = static_cast<Eigen::Index>(basis.d);
    Matrix t(d * d, d * d);
    for (Eigen::Index i = 0; i < d * d; ++i)
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c)
          t(i, r * d + c) = basis.ops[static_cast<std::size_t>(i)](c, r) / static_cast<double>(basis.d);
    maps.push_back(std::move(t));
  }
  HyperMatrix a = chain_multiply(maps, detail::pair_party_indices(rho.dims(), rho.matrix()));
  const double scale = std::max(1.0, rho.matrix().cwiseAbs().maxCoeff());
  for (auto& e : a.entries()) {
    detail::require(std::abs(e.imag()) <= 1e-12 * scale, "represent: Bloch coefficient has imaginary residue");
    e = Complex{e.real(), 0.0};
  }
  return a;
}

inline HyperMatrix represent(const DensityState& rho) { return represent(rho, detail::default_bases(rho.dims())); }

/// rho = sum_I a_I s_{i1} (x) ... (x) s_{in}.
inline DensityState reconstruct(const HyperMatrix& a, const Dims& dims, const std::vector<BlochBasis>& bases) {
  detail::require_dims(dims);
  detail::require_bases(dims, bases);
  Format expected;
  for (std::size_t d : dims) expected.push_back(d * d);
  detail::require(a.format() == expected, "reconstruct: hypermatrix format must be (d_1^2, ..., d_n^2)");
  std::vector<Matrix> maps;
  for (const auto& basis : bases) {
    const auto d = static_cast<Eigen::Index>(basis.d);
    Matrix s(d * d, d * d);
    for (Eigen::Index i = 0; i < d * d; ++i)
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) s(r * d + c, i) = basis.ops[static_cast<std::size_t>(i)](r, c);
    maps.push_back(std::move(s));
  }
  return DensityState(dims, detail::unpair_party_indices(dims, chain_multiply(maps, a)));
}

inline DensityState reconstruct(const HyperMatrix& a, const Dims& dims) {
  return reconstruct(a, dims, detail::default_bases(dims));
}

/// g rho g^dagger.
inline DensityState apply_local(const DensityState& rho, const LocalOperatorChain& g) {
  detail::require(g.dims() == rho.dims(), "apply_local: operator dimensions do not match state");
  const Matrix k = g.tensor();
  return DensityState(rho.dims(), k * rho.matrix() * k.adjoint());
}

/// (A_1 *_1 ... A_n *_n) applied to the amplitude tensor.
inline PureState apply_local(const PureState& phi, const LocalOperatorChain& g) {
  detail::require(g.dims() == phi.dims(), "apply_local: operator dimensions do not match state");
  return PureState(chain_multiply(g.ops(), phi.amplitudes()));
}

/// Induced matrices B_1, ..., B_n of a chain in the given bases, as complex matrices.
inline std::vector<Matrix> induced_chain(const LocalOperatorChain& g, const std::vector<BlochBasis>& bases) {
  detail::require_bases(g.dims(), bases);
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < g.ops().size(); ++k) out.push_back(induced_matrix(g.ops()[k], bases[k]).complex());
  return out;
}

inline std::vector<Matrix> induced_chain(const LocalOperatorChain& g) {
  return induced_chain(g, detail::default_bases(g.dims()));
}

}  // namespace hyperinv

#endif  // HYPERINV_BLOCH_HPP
