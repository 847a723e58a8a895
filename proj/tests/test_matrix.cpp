#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hairy/matrix.hpp"

using namespace hairy;

namespace {

// Dense Gaussian elimination over Q, independent of the sparse code.
std::size_t dense_rank(const RationalMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) a[r][c] = v;
  std::size_t rk = 0;
  for (std::size_t c = 0; c < m.cols() && rk < m.rows(); ++c) {
    std::size_t p = rk;
    while (p < m.rows() && sgn(a[p][c]) == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[rk]);
    for (std::size_t r = rk + 1; r < m.rows(); ++r) {
      if (sgn(a[r][c]) == 0) continue;
      const Rational f = a[r][c] / a[rk][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[r][j] -= f * a[rk][j];
    }
    ++rk;
  }
  return rk;
}

RationalMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, double density, bool fractions) {
  RationalMatrix m(rows, cols);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 4);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (u(rng) > density) continue;
      if (fractions)
        m.add(r, c, Rational(num(rng)) / Rational(den(rng)));
      else
        m.add(r, c, u(rng) < 0.5 ? 1 : -1);
    }
  return m;
}

}  // namespace

TEST(Matrix, RankMatchesDenseEliminationAndTranspose) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> sz(1, 14);
    const auto m = random_matrix(rng, sz(rng), sz(rng), trial % 3 == 0 ? 0.7 : 0.25, trial % 2 == 0);
    const auto expect = dense_rank(m);
    EXPECT_EQ(rank(m), expect);
    EXPECT_EQ(rank(m.transpose()), expect);
  }
}

TEST(Matrix, RankOfDependentRows) {
  RationalMatrix m(3, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    m.add(0, c, Rational(static_cast<long>(c) + 1));
    m.add(1, c, Rational(2 * (static_cast<long>(c) + 1)));
    m.add(2, c, Rational(1) / Rational(3));
  }
  EXPECT_EQ(rank(m), 2u);
  EXPECT_EQ(rank(RationalMatrix(4, 5)), 0u);
}

TEST(Matrix, KernelBasisSpansTheNullSpace) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> sz(1, 10);
    const auto m = random_matrix(rng, sz(rng), sz(rng), 0.4, trial % 2 == 1);
    const auto ker = kernel_basis(m);
    ASSERT_EQ(ker.size(), m.cols() - rank(m));
    RationalMatrix k(m.cols(), 0);
    for (const auto& v : ker) k.append_column(v);
    EXPECT_TRUE((m * k).is_zero());
    EXPECT_EQ(rank(k), ker.size());
  }
}

TEST(Matrix, DumpRoundTrip) {
  std::mt19937 rng(3);
  const auto m = random_matrix(rng, 6, 9, 0.5, true);
  std::stringstream s;
  m.write(s);
  EXPECT_EQ(RationalMatrix::read(s), m);
  std::stringstream bad("2 2 3\n0 0 1/1\n");
  EXPECT_THROW(RationalMatrix::read(bad), std::invalid_argument);
}

TEST(Matrix, HomologyRejectsNonComplexes) {
  RationalMatrix a(1, 1), b(1, 1);
  a.add(0, 0, 1);
  b.add(0, 0, 1);
  EXPECT_THROW(homology_dim(a, b), ComplexIntegrityError);
  EXPECT_THROW(homology_dim(RationalMatrix(1, 2), RationalMatrix(3, 1)), std::invalid_argument);
  const auto rep = homology_dim(RationalMatrix(0, 3), RationalMatrix(3, 0));
  EXPECT_EQ(rep.betti, 3);
}
