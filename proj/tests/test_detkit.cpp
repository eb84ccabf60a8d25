#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "sixv/detkit.hpp"

using namespace sixv;

namespace {

Matrix<cplx> random_matrix(std::size_t r, std::size_t c, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1, 1);
  Matrix<cplx> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(u(g), u(g));
  return m;
}

// Leibniz sum over permutations; independent of LU.
cplx leibniz(const Matrix<cplx>& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  cplx total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    cplx term(inversions % 2 ? -1.0 : 1.0);
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST(LuDet, AgreesWithLeibnizSum) {
  std::mt19937_64 g(42);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto m = random_matrix(n, n, g);
    EXPECT_LT(rel_err(lu_det(m), leibniz(m)), 1e-13) << "n=" << n;
  }
}

TEST(LuDet, EmptyMatrixIsOne) { EXPECT_EQ(lu_det(Matrix<cplx>(0, 0)), cplx(1)); }

TEST(LuDet, RankDeficientGivesZero) {
  Matrix<cplx> m(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    m(0, j) = cplx(j + 1.0);
    m(1, j) = cplx(2.0 * (j + 1.0));
    m(2, j) = cplx(0.5, j);
  }
  EXPECT_LT(std::abs(lu_det(m)), 1e-14);
}

TEST(LuDet, NonSquareThrows) { EXPECT_THROW(lu_det(Matrix<cplx>(2, 3)), IndexOutOfRange); }

TEST(Minor, DropsRowsAndColumnsInOrder) {
  Matrix<cplx> m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = cplx(10.0 * i + j);
  const auto s = submatrix(m, {1}, {0});
  ASSERT_EQ(s.rows(), 2u);
  EXPECT_EQ(s(0, 0), cplx(1));
  EXPECT_EQ(s(1, 1), cplx(22));
  EXPECT_LT(rel_err(minor_det(m, {1}, {0}), cplx(1.0 * 22 - 2.0 * 21)), 1e-14);
}

TEST(Minor, RejectsBadIndices) {
  Matrix<cplx> m(3, 3);
  EXPECT_THROW(submatrix(m, {3}, {0}), IndexOutOfRange);
  EXPECT_THROW(submatrix(m, {1, 1}, {0, 2}), IndexOutOfRange);
  EXPECT_THROW(minor_det(m, {0}, {0, 1}), IndexOutOfRange);
}

// With coef(p, q) = u_p v_q the expansion must reproduce det[u | v | block].
TEST(Laplace, SeparableCoefficientReproducesFullDeterminant) {
  std::mt19937_64 g(7);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto full = random_matrix(n, n, g);
    const auto block = submatrix(full, {}, {0, 1});
    const cplx d = laplace_two_column_expand(
        n, [&](std::size_t p, std::size_t q) { return full(p, 0) * full(q, 1); }, block);
    EXPECT_LT(rel_err(d, lu_det(full)), 1e-12) << "n=" << n;
  }
}

TEST(Laplace, PairSignMatchesTwoByTwo) {
  // n = 2: det[[u0, v0], [u1, v1]] = u0 v1 - u1 v0.
  EXPECT_EQ(laplace_pair_sign(0, 1), 1);
  EXPECT_EQ(laplace_pair_sign(1, 0), -1);
}

// For f(e1, e2) = g(e1) h(e2) the operator columns become [g^(p)] and [h^(q)].
TEST(Laplace, OperatorColumnsOnSeparableJet) {
  const std::size_t n = 4;
  std::mt19937_64 g(3);
  const auto block = random_matrix(n, n - 2, g);
  const std::array<cplx, 2> base{cplx(0), cplx(0)};
  const auto e1 = Series2<cplx>::variable(0, base, {n - 1, n - 1});
  const auto e2 = Series2<cplx>::variable(1, base, {n - 1, n - 1});
  const cplx a(0.3, 0.1), b(-0.7, 0.2);
  const auto f = exp(e1 * a) * sinh(e2 * b + cplx(0.4));
  Matrix<cplx> full(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    full(p, 0) = std::pow(a, double(p));
    full(p, 1) = std::pow(b, double(p)) * (p % 2 ? std::cosh(cplx(0.4)) : std::sinh(cplx(0.4)));
    for (std::size_t k = 0; k < n - 2; ++k) full(p, k + 2) = block(p, k);
  }
  EXPECT_LT(rel_err(laplace_two_column_det(f, block), lu_det(full)), 1e-13);
}

TEST(Laplace, OrderTooLowThrows) {
  Matrix<cplx> block(3, 1);
  const auto f = Series2<cplx>::variable(0, {cplx(0), cplx(0)}, {1, 2});
  EXPECT_THROW(laplace_two_column_det(f, block), OrderExceeded);
}
