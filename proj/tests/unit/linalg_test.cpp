#include <gtest/gtest.h>

#include <random>

#include "opk/linalg/chain_complex.hpp"
#include "opk/linalg/elimination.hpp"
#include "opk/linalg/smith.hpp"

namespace {

using namespace opk::linalg;

const CoefficientRing Z = CoefficientRing::integers();
const CoefficientRing Q = CoefficientRing::rationals();

/// Fraction-free Bareiss determinant over the integers, independent of the library elimination.
Integer bareiss_det(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::vector<std::vector<Integer>> integer_rows(const ExactMatrix& m) {
  std::vector<std::vector<Integer>> out(static_cast<std::size_t>(m.rows()), std::vector<Integer>(static_cast<std::size_t>(m.cols())));
  const auto dense = m.to_dense();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out[r][c] = dense[r][c].get_num();
  return out;
}

ExactMatrix random_matrix(std::mt19937& rng, const CoefficientRing& ring, int rows, int cols, int density_percent = 60) {
  std::uniform_int_distribution<int> val(-5, 5);
  std::uniform_int_distribution<int> pct(0, 99);
  ExactMatrix m(ring, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (pct(rng) < density_percent) m.set(r, c, ring.from_int(val(rng)));
  return m;
}

/// Dense Gaussian rank over Q, as an oracle for the sparse elimination.
int dense_rank(const ExactMatrix& m) {
  auto a = m.to_dense();
  int rank = 0;
  for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
    int p = rank;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[rank], a[p]);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Scalar f = a[r][c] / a[rank][c];
      for (int k = c; k < m.cols(); ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

TEST(Ring, ParsesNamesAndNormalizes) {
  EXPECT_EQ(CoefficientRing::parse("Z"), Z);
  EXPECT_EQ(CoefficientRing::parse("F3").prime(), 3);
  EXPECT_THROW(CoefficientRing::parse("F4"), std::invalid_argument);
  const auto f5 = CoefficientRing::prime_field(5);
  EXPECT_EQ(f5.normalize(Scalar(-1)), Scalar(4));
  EXPECT_EQ(f5.normalize(Scalar(1, 2)), Scalar(3));
  EXPECT_EQ(f5.mul(f5.inverse(Scalar(2)), Scalar(2)), Scalar(1));
  EXPECT_FALSE(Z.is_unit(Scalar(2)));
  EXPECT_EQ(to_string(Scalar(-1, 2)), "-1/2");
}

TEST(Matrix, ArithmeticMatchesDense) {
  const auto a = ExactMatrix::from_rows(Z, {{1, 2}, {3, 4}});
  const auto b = ExactMatrix::from_rows(Z, {{0, 1}, {1, 0}});
  EXPECT_EQ(a * b, ExactMatrix::from_rows(Z, {{2, 1}, {4, 3}}));
  EXPECT_EQ(a.transpose(), ExactMatrix::from_rows(Z, {{1, 3}, {2, 4}}));
  EXPECT_EQ(a.trace(), Scalar(5));
  EXPECT_TRUE((a - a).is_zero());
}

TEST(Elimination, RankAgreesWithDenseOracle) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + trial % 12;
    const int cols = 1 + (trial * 7) % 13;
    const auto m = random_matrix(rng, Q, rows, cols, 30 + trial % 50);
    EXPECT_EQ(rank(m), dense_rank(m));
    const auto k = kernel_basis(m);
    EXPECT_EQ(k.cols(), cols - dense_rank(m));
    EXPECT_TRUE((m * k).is_zero());
  }
}

TEST(Elimination, SpanSolverRecoversCoefficients) {
  std::mt19937 rng(11);
  const auto g = random_matrix(rng, Q, 10, 4, 80);
  ASSERT_EQ(rank(g), 4);
  const auto x = random_matrix(rng, Q, 4, 3, 70);
  const SpanSolver s(g);
  EXPECT_EQ(s.solve_columns(g * x), x);
}

TEST(Smith, RandomizedIdentityAndUnimodularity) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> size(1, 30);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = trial < 10 ? 1 + trial : size(rng);
    const int cols = trial < 10 ? 10 - trial : size(rng);
    const auto a = random_matrix(rng, Z, rows, cols, trial % 2 ? 25 : 70);
    const auto s = smith_normal_form(a);
    ASSERT_EQ(s.U * a * s.V, s.D) << "trial " << trial;
    EXPECT_EQ(abs(bareiss_det(integer_rows(s.U))), 1);
    EXPECT_EQ(abs(bareiss_det(integer_rows(s.V))), 1);
    const auto d = s.D.to_dense();
    const auto diag = s.diagonal();
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (r != c) {
          EXPECT_EQ(d[r][c], 0);
        }
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) EXPECT_EQ(diag[i + 1] % diag[i], 0);
    EXPECT_EQ(static_cast<int>(diag.size()), dense_rank(a.change_ring(Q)));
  }
}

TEST(Smith, DeterminantOfSquareMatricesIsProductOfFactors) {
  std::mt19937 rng(5);
  for (int n = 1; n <= 8; ++n) {
    const auto a = random_matrix(rng, Z, n, n, 90);
    const Integer det = bareiss_det(integer_rows(a));
    const auto diag = smith_normal_form(a).diagonal();
    Integer prod = 1;
    for (const auto& x : diag) prod *= x;
    if (det == 0) {
      EXPECT_LT(static_cast<int>(diag.size()), n);
    } else {
      EXPECT_EQ(static_cast<int>(diag.size()), n);
      EXPECT_EQ(abs(det), abs(prod));
    }
  }
}

TEST(Homology, KleinBottleHasTwoTorsion) {
  // Cellular chains: one 0-cell, two 1-cells a, b, one 2-cell with boundary 2b.
  std::map<int, ExactMatrix> bd;
  bd.emplace(1, ExactMatrix(Z, 1, 2));
  bd.emplace(2, ExactMatrix::from_rows(Z, {{0}, {2}}));
  const ChainComplexData c(Z, 0, {1, 2, 1}, bd);
  const auto h = homology(c);
  EXPECT_EQ(h.betti.at(0), 1);
  EXPECT_EQ(h.betti.at(1), 1);
  EXPECT_EQ(h.torsion.at(1), std::vector<Integer>{2});
  EXPECT_EQ(h.betti.count(2) ? h.betti.at(2) : 0, 0);

  const auto f2 = homology(c.change_ring(CoefficientRing::prime_field(2)));
  EXPECT_EQ(f2.betti.at(1), 2);
  EXPECT_EQ(f2.betti.at(2), 1);
  EXPECT_EQ(euler_characteristic(c), 0);
}

TEST(Homology, RejectsNonComplexes) {
  std::map<int, ExactMatrix> bd;
  bd.emplace(1, ExactMatrix::from_rows(Z, {{1}}));
  bd.emplace(2, ExactMatrix::from_rows(Z, {{1}}));
  EXPECT_THROW(ChainComplexData(Z, 0, {1, 1, 1}, bd), std::exception);
}

TEST(Homology, DualComplexSwapsDegrees) {
  std::map<int, ExactMatrix> bd;
  bd.emplace(1, ExactMatrix::from_rows(Z, {{2}}));
  const ChainComplexData c(Z, 0, {1, 1}, bd);
  const auto d = dualize_complex(c);
  EXPECT_EQ(d.min_degree(), -1);
  const auto h = homology(d);
  EXPECT_EQ(h.torsion.at(-1), std::vector<Integer>{2});
}

}  // namespace
