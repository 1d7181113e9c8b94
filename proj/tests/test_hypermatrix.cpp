// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <array>

#include "hyperinv/hyperdet.hpp"
#include "hyperinv/hypermatrix.hpp"
#include "hyperinv/sampling.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hyperinv;

namespace {

std::vector<Vector> random_vectors(const Format& format, Rng& rng) {
  std::vector<Vector> xs;
  for (std::size_t f : format) xs.push_back(ginibre(f, 1, rng).col(0));
  return xs;
}

}  // namespace

TEST(HyperMatrix, RejectsInconsistentEntryCount) {
  EXPECT_THROW(HyperMatrix(Format{2, 3}, std::vector<Complex>(5)), ValidationError);
  EXPECT_THROW(HyperMatrix(Format{}), ValidationError);
  EXPECT_THROW(HyperMatrix(Format{2, 0}), ValidationError);
  EXPECT_THROW(HyperMatrix(Format{65}), ValidationError);
}

TEST(HyperMatrix, IndexAccessIsBoundsChecked) {
  HyperMatrix a(Format{2, 3, 4});
  a.at({1, 2, 3}) = 7.0;
  EXPECT_EQ(a.entries().back(), Complex(7.0));
  EXPECT_THROW(a.at({2, 0, 0}), ValidationError);
  EXPECT_THROW(a.at({0, 0}), ValidationError);
  EXPECT_EQ(a.unravel(a.size() - 1), (std::vector<std::size_t>{1, 2, 3}));
}

TEST(HyperMatrix, RowMajorLastIndexFastest) {
  HyperMatrix a(Format{2, 3}, {0, 1, 2, 3, 4, 5});
  EXPECT_EQ(a.at({1, 0}), Complex(3.0));
  EXPECT_EQ(a.strides(), (std::vector<std::size_t>{3, 1}));
}

TEST(ModeMultiply, IdentityLeavesTensorUnchanged) {
  Rng rng = make_rng(1);
  const HyperMatrix a = random_hypermatrix({3, 2, 4}, rng);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto n = static_cast<Eigen::Index>(a.format()[k]);
    EXPECT_EQ(mode_multiply(Matrix::Identity(n, n), k, a), a);
  }
}

TEST(ModeMultiply, MatrixCaseIsLeftAndTransposedRightProduct) {
  Rng rng = make_rng(2);
  const Matrix m = ginibre(3, rng);
  const Matrix b = ginibre(3, rng);
  const HyperMatrix a = HyperMatrix::from_matrix(m);
  EXPECT_LT(testutil::matrix_err(mode_multiply(b, 0, a).to_matrix(), b * m), 1e-12);
  EXPECT_LT(testutil::matrix_err(mode_multiply(b, 1, a).to_matrix(), m * b.transpose()), 1e-12);
}

TEST(ModeMultiply, AllOnesTensorWithShear) {
  const HyperMatrix ones(Format{2, 2, 2}, std::vector<Complex>(8, 1.0));
  Matrix b(2, 2);
  b << 1, 1, 0, 1;
  const HyperMatrix c = mode_multiply(b, 0, ones);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_EQ(c.at({0, j, k}), Complex(2.0));
      EXPECT_EQ(c.at({1, j, k}), Complex(1.0));
    }
}

TEST(ModeMultiply, RejectsDimensionMismatch) {
  const HyperMatrix a(Format{2, 3});
  EXPECT_THROW(mode_multiply(Matrix::Identity(3, 3), 0, a), ValidationError);
  EXPECT_THROW(mode_multiply(Matrix::Identity(3, 3), 2, a), ValidationError);
  EXPECT_THROW(mode_multiply(Matrix::Identity(2, 3), 0, a), ValidationError);
}

TEST(ModeMultiply, ComposesWithinOneDirection) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng = make_rng(seed, 10);
    const Format format{2 + seed % 3, 3, 1 + seed % 4};
    const HyperMatrix a = random_hypermatrix(format, rng);
    const std::size_t k = seed % 3;
    const Matrix b1 = ginibre(format[k], rng);
    const Matrix b2 = ginibre(format[k], rng);
    const HyperMatrix lhs = mode_multiply(b2, k, mode_multiply(b1, k, a));
    const HyperMatrix rhs = mode_multiply(b2 * b1, k, a);
    EXPECT_LT(testutil::relative_tensor_err(lhs, rhs), 1e-12) << "seed " << seed;
  }
}

TEST(ModeMultiply, DistinctDirectionsCommute) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng = make_rng(seed, 11);
    const Format format{3, 2, 4, 2};
    const HyperMatrix a = random_hypermatrix(format, rng);
    const std::size_t k = seed % 4;
    const std::size_t l = (k + 1 + seed % 3) % 4;
    const Matrix bk = ginibre(format[k], rng);
    const Matrix bl = ginibre(format[l], rng);
    const HyperMatrix kl = mode_multiply(bl, l, mode_multiply(bk, k, a));
    const HyperMatrix lk = mode_multiply(bk, k, mode_multiply(bl, l, a));
    EXPECT_LT(testutil::relative_tensor_err(kl, lk), 1e-12) << "seed " << seed;
  }
}

TEST(ChainMultiply, IdentityChainIsIdentity) {
  Rng rng = make_rng(3);
  const HyperMatrix a = random_hypermatrix({2, 3, 2}, rng);
  const std::vector<Matrix> ids{Matrix::Identity(2, 2), Matrix::Identity(3, 3), Matrix::Identity(2, 2)};
  EXPECT_EQ(chain_multiply(ids, a), a);
}

TEST(ChainMultiply, TwoDirectionsGiveBACt) {
  Rng rng = make_rng(4);
  const Matrix m = ginibre(3, 2, rng);
  const std::vector<Matrix> bs{ginibre(3, rng), ginibre(2, rng)};
  const Matrix got = chain_multiply(bs, HyperMatrix::from_matrix(m)).to_matrix();
  EXPECT_LT(testutil::matrix_err(got, bs[0] * m * bs[1].transpose()), 1e-12);
}

TEST(ChainMultiply, OrderIndependent) {
  Rng rng = make_rng(5);
  const HyperMatrix a = random_hypermatrix({2, 2, 2}, rng);
  const std::vector<Matrix> bs{ginibre(2, rng), ginibre(2, rng), ginibre(2, rng)};
  const std::array<std::size_t, 3> forward{0, 1, 2};
  const std::array<std::size_t, 3> rotated{2, 0, 1};
  EXPECT_LT(testutil::relative_tensor_err(chain_multiply(bs, a, forward), chain_multiply(bs, a, rotated)), 1e-12);
}

TEST(ChainMultiply, RejectsBadChains) {
  const HyperMatrix a(Format{2, 2});
  const std::vector<Matrix> one{Matrix::Identity(2, 2)};
  EXPECT_THROW(chain_multiply(one, a), ValidationError);
  const std::vector<Matrix> two{Matrix::Identity(2, 2), Matrix::Identity(2, 2)};
  const std::array<std::size_t, 2> repeated{0, 0};
  EXPECT_THROW(chain_multiply(two, a, repeated), ValidationError);
}

TEST(EvaluateForm, BasisTensorGivesProductOfCoordinates) {
  Rng rng = make_rng(6);
  HyperMatrix e(Format{2, 3, 2});
  e.at({1, 2, 0}) = 1.0;
  const auto xs = random_vectors(e.format(), rng);
  EXPECT_LT(std::abs(evaluate_form(e, xs) - xs[0](1) * xs[1](2) * xs[2](0)), 1e-14);
}

TEST(EvaluateForm, BasisVectorsPickEntry) {
  Rng rng = make_rng(7);
  const HyperMatrix a = random_hypermatrix({2, 3, 2}, rng);
  std::vector<Vector> xs{Vector::Unit(2, 1), Vector::Unit(3, 0), Vector::Unit(2, 1)};
  EXPECT_EQ(evaluate_form(a, xs), a.at({1, 0, 1}));
}

TEST(EvaluateForm, MatrixCaseIsBilinearForm) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng = make_rng(seed, 12);
    const Matrix m = ginibre(3, 4, rng);
    const std::vector<Vector> xs{ginibre(3, 1, rng).col(0), ginibre(4, 1, rng).col(0)};
    const Complex want = (xs[0].transpose() * m * xs[1])(0, 0);
    EXPECT_LT(testutil::rel_err(evaluate_form(HyperMatrix::from_matrix(m), xs), want), 1e-12);
  }
}

TEST(EvaluateForm, RejectsWrongLengths) {
  const HyperMatrix a(Format{2, 2});
  const std::vector<Vector> xs{Vector::Zero(2), Vector::Zero(3)};
  EXPECT_THROW(evaluate_form(a, xs), ValidationError);
}

TEST(VecRealign, StacksColumns) {
  Matrix b(2, 2);
  b << 1, 2, 3, 4;
  Vector want(4);
  want << 1, 3, 2, 4;
  EXPECT_EQ(vec_realign(b), want);
  EXPECT_TRUE(vec_realign(Matrix::Zero(3, 2)).isZero());
}

TEST(VecRealign, KroneckerIdentityOnRandomShapes) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng = make_rng(seed, 13);
    const std::size_t m = 1 + seed % 5;
    const std::size_t n = 1 + (seed / 5) % 5;
    const Matrix a = ginibre(m, rng);
    const Matrix b = ginibre(m, n, rng);
    const Matrix c = ginibre(n, rng);
    const Vector lhs = vec_realign(a * b * c);
    const Vector rhs = kronecker(c.transpose(), a) * vec_realign(b);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, lhs.cwiseAbs().maxCoeff()), 1e-12) << "seed " << seed;
  }
}

TEST(Kronecker, IdentitiesAndBlocks) {
  EXPECT_EQ(kronecker(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), Matrix::Identity(6, 6));
  Matrix a(2, 2);
  a << 1, 2, 3, 4;
  const Matrix c = Matrix::Constant(2, 2, Complex(0.0, 1.0));
  const Matrix k = kronecker(a, c);
  EXPECT_EQ(k.block(2, 0, 2, 2), 3.0 * c);
}

TEST(Kronecker, DeterminantLaw) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = make_rng(seed, 14);
    const Matrix a = random_gl(3, rng);
    const Matrix c = random_gl(2, rng);
    const Complex want = std::pow(a.determinant(), 2) * std::pow(c.determinant(), 3);
    EXPECT_LT(testutil::rel_err(kronecker(c.transpose(), a).determinant(), want), 1e-10);
  }
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = 2.0;
  EXPECT_NEAR(std::abs(kronecker(Matrix::Identity(2, 2), diag).determinant() - 4.0), 0.0, 1e-14);
}

TEST(PairedIdentity, TwoDirectionsIsIdentityMatrix) {
  EXPECT_EQ(paired_identity(3, 2).to_matrix(), Matrix::Identity(3, 3));
}

TEST(PairedIdentity, FourDirectionsSupport) {
  const HyperMatrix p = paired_identity(2, 4);
  std::size_t nonzero = 0;
  for (const auto& e : p.entries()) {
    if (e != Complex{}) {
      ++nonzero;
      EXPECT_EQ(e, Complex(1.0));
    }
  }
  EXPECT_EQ(nonzero, 4u);
  EXPECT_EQ(p.at({1, 1, 0, 0}), Complex(1.0));
  EXPECT_EQ(p.at({1, 0, 0, 1}), Complex{});
}

TEST(PairedIdentity, FirstHyperdeterminantByBruteForce) {
  EXPECT_LT(std::abs(oracle::hdet_unreduced(paired_identity(2, 4)) - 2.0), 1e-12);
  EXPECT_LT(std::abs(oracle::hdet_unreduced(paired_identity(4, 4)) - 24.0), 1e-12);
  EXPECT_EQ(hdet(paired_identity(4, 4)), Complex(24.0));
}

TEST(PairedIdentity, RejectsOddDirections) {
  EXPECT_THROW(paired_identity(2, 3), ValidationError);
  EXPECT_THROW(paired_identity(2, 0), ValidationError);
}
