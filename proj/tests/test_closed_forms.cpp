#include <gtest/gtest.h>

#include "hairy/closed_forms.hpp"

using namespace hairy;

namespace {

// Weyl modules (k, l)^m with k + l <= 14 in rank-2 first homology, by column.
const std::map<long, std::vector<std::pair<std::pair<long, long>, long>>> kPublishedTable = {
    {2, {}},
    {4, {{{3, 1}, 1}}},
    {6, {{{5, 1}, 1}}},
    {8, {{{7, 1}, 1}, {{5, 3}, 1}}},
    {10, {{{10, 0}, 1}, {{9, 1}, 1}, {{7, 3}, 1}}},
    {12, {{{11, 1}, 2}, {{9, 3}, 1}, {{7, 5}, 1}}},
    {14, {{{14, 0}, 1}, {{13, 1}, 1}, {{12, 2}, 1}, {{11, 3}, 1}, {{9, 5}, 1}}},
};

// Dimension of the GL(V) irreducible with highest weight (k, l, 0, ...) by the Weyl
// dimension formula prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i).
Integer weyl_character_dim(long k, long l, long n) {
  std::vector<long> lam(static_cast<std::size_t>(n), 0);
  lam[0] = k;
  if (n > 1) lam[1] = l;
  Rational r = 1;
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) r *= Rational(lam[static_cast<std::size_t>(i)] - lam[static_cast<std::size_t>(j)] + j - i) / Rational(j - i);
  return r.get_num();
}

}  // namespace

TEST(ClosedForms, CuspDimensions) {
  EXPECT_EQ(cusp_dim(12), 1);
  EXPECT_EQ(cusp_dim(14), 0);
  EXPECT_EQ(cusp_dim(26), 1);
  EXPECT_EQ(cusp_dim(24), 2);
  EXPECT_EQ(cusp_dim(2), 0);
  EXPECT_EQ(cusp_dim(13), 0);
  // classical values for weights 0..30
  const std::vector<long> known{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2, 0, 1, 0, 2, 0, 2};
  for (long k = 0; k <= 30; ++k) EXPECT_EQ(cusp_dim(k), known[static_cast<std::size_t>(k)]) << k;
  EXPECT_THROW(cusp_dim(-1), std::domain_error);
}

TEST(ClosedForms, LambdaMultiplicities) {
  EXPECT_EQ(lambda(3, 1), 1);
  EXPECT_EQ(lambda(11, 1), 2);
  EXPECT_EQ(lambda(10, 0), 1);
  EXPECT_EQ(lambda(5, 5), 0);
  EXPECT_EQ(lambda(4, 1), 0);
  EXPECT_THROW(lambda(1, 2), std::domain_error);
}

TEST(ClosedForms, PartitionTableMatchesPublishedTable) {
  for (const auto& [h, rows] : kPublishedTable) EXPECT_EQ(rank2_partitions(h), rows) << h;
  for (long h = 1; h <= 13; h += 2) EXPECT_TRUE(rank2_partitions(h).empty());
}

TEST(ClosedForms, WeylDimensions) {
  EXPECT_EQ(weyl_dim_two_row(1, 0, 7), 7);
  EXPECT_EQ(weyl_dim_two_row(3, 1, 2), 3);
  EXPECT_EQ(weyl_dim_two_row(3, 1, 4), 45);
  for (long k = 0; k <= 12; ++k)
    for (long l = 0; l <= k; ++l) {
      EXPECT_EQ(weyl_dim_two_row(k, l, 2), k - l + 1);
      for (long n = 1; n <= 5; ++n) EXPECT_EQ(weyl_dim_two_row(k, l, n), n == 1 && l > 0 ? Integer(0) : weyl_character_dim(k, l, n));
    }
}

TEST(ClosedForms, H12ClosedForm) {
  for (long dimV : {2, 4, 6}) EXPECT_EQ(h12_dim_closed(dimV, 2), 0);
  EXPECT_EQ(h12_dim_closed(2, 4), 3);
  EXPECT_EQ(h12_dim_closed(2, 12), 32);
}

TEST(ClosedForms, PolynomialModelAgreesWithClosedForm) {
  for (int n = 1; n <= 2; ++n)
    for (int h = 0; h <= (n == 1 ? 14 : 10); ++h) {
      const long poly = rank2_poly_dim(n, h);
      if (h % 2 == 1) {
        EXPECT_EQ(poly, 0) << n << " " << h;
      }
      EXPECT_EQ(Integer(poly), h12_dim_closed(2 * n, h)) << n << " " << h;
    }
  EXPECT_EQ(rank2_poly_dim(1, 4), 3);
  EXPECT_EQ(rank2_poly_dim(1, 12), 32);
  for (int h = 0; h <= 8; ++h) EXPECT_EQ(rank2_poly_dim(2, h, false), rank2_poly_dim(2, h, true));
}

TEST(ClosedForms, F2kSatisfiesConditions) {
  for (int k = 2; k <= 5; ++k) {
    const auto f = f2k(k, 2);
    EXPECT_FALSE(f.empty());
    EXPECT_TRUE(satisfies_rank2_conditions(f, 2)) << k;
    for (const auto& [m, c] : f) {
      EXPECT_EQ(m[0] + m[1] + m[2] + m[3], 2 * k);
      EXPECT_EQ((m[0] + m[1]) % 2, 1);
      EXPECT_EQ((m[2] + m[3]) % 2, 1);
    }
    // a perturbation is detected
    auto g = f;
    add_term(g, f.begin()->first, 1);
    EXPECT_FALSE(satisfies_rank2_conditions(g, 2));
  }
  EXPECT_THROW(f2k(1, 2), std::domain_error);
}

TEST(ClosedForms, ExpectedH1) {
  EXPECT_EQ(expected_h1(OperadKind::Com, 2, 1), 4);
  EXPECT_EQ(expected_h1(OperadKind::Com, 4, 1), 20);
  EXPECT_EQ(expected_h1(OperadKind::Com, 4, 2), 0);
  EXPECT_EQ(expected_h1(OperadKind::Assoc, 2, 1), 6);
  EXPECT_EQ(expected_h1(OperadKind::Assoc, 2, 2), 1);
  EXPECT_EQ(expected_h1(OperadKind::Assoc, 2, 3), 0);
  EXPECT_EQ(expected_h1(OperadKind::Lie, 4, 3, 1), 20);
  EXPECT_EQ(expected_h1(OperadKind::Lie, 2, 4, 1), 0);
  EXPECT_EQ(expected_h1(OperadKind::Lie, 4, 1, 0), 4);
  EXPECT_EQ(expected_h1(OperadKind::Lie, 2, 6, 2), 3);
  EXPECT_THROW(expected_h1(OperadKind::Lie, 2, 6), std::domain_error);
  EXPECT_THROW(expected_h1(OperadKind::Lie, 2, 6, 3), std::domain_error);
}
