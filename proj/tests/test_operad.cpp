#include <gtest/gtest.h>

#include <map>
#include <random>

#include "hairy/operad.hpp"

using namespace hairy;

namespace {

// Independent oracle: expand every planar binary tree on leaves 1..m-1 into the tensor
// algebra and compute the rank of the span with plain rational Gaussian elimination.
using Word = std::vector<int>;
using Poly = std::map<Word, Rational>;

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      add_term(out, w, ca * cb);
    }
  return out;
}

Poly lie_bracket(const Poly& a, const Poly& b) {
  Poly out = mul(a, b);
  add_scaled(out, mul(b, a), -1);
  return out;
}

std::vector<Poly> all_trees(std::vector<int> leaves) {
  if (leaves.size() == 1) return {Poly{{Word{leaves[0]}, 1}}};
  std::vector<Poly> out;
  const int n = static_cast<int>(leaves.size());
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    std::vector<int> l, r;
    for (int i = 0; i < n; ++i) (mask >> i & 1 ? l : r).push_back(leaves[static_cast<std::size_t>(i)]);
    for (const auto& a : all_trees(l))
      for (const auto& b : all_trees(r)) out.push_back(lie_bracket(a, b));
  }
  return out;
}

std::size_t span_rank(const std::vector<Poly>& polys) {
  std::map<Word, int> index;
  for (const auto& p : polys)
    for (const auto& [w, c] : p) index.try_emplace(w, static_cast<int>(index.size()));
  std::vector<std::vector<Rational>> rows;
  for (const auto& p : polys) {
    std::vector<Rational> row(index.size());
    for (const auto& [w, c] : p) row[static_cast<std::size_t>(index[w])] = c;
    rows.push_back(row);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < index.size() && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && sgn(rows[piv][col]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][col]) == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < index.size(); ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

Poly left_normed_poly(const std::vector<int>& word) {
  Poly p{{Word{word[0]}, 1}};
  for (std::size_t i = 1; i < word.size(); ++i) p = lie_bracket(p, Poly{{Word{word[i]}, 1}});
  return p;
}

// Tensor-algebra image of a Lie element rooted at slot 0.
Poly expand(const OperadElement& e) {
  Poly out;
  for (const auto& [idx, c] : e.terms())
    add_scaled(out, left_normed_poly(OperadBasisElement{OperadKind::Lie, e.arity(), idx}.payload()), c);
  return out;
}

std::vector<Permutation> all_perms(int m) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(m);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Rational trace_of_action(OperadKind kind, int m, const Permutation& p) {
  Rational t = 0;
  for (const auto& b : basis(kind, m)) t += act(p, OperadElement(b)).coefficient(b.index);
  return t;
}

}  // namespace

TEST(Operad, BasisSizes) {
  EXPECT_EQ(basis(OperadKind::Com, 5).size(), 1u);
  EXPECT_EQ(basis(OperadKind::Assoc, 3).size(), 2u);
  EXPECT_EQ(dim(OperadKind::Assoc, 4), 6u);
  EXPECT_EQ(dim(OperadKind::Com, 9), 1u);
  EXPECT_THROW(basis(OperadKind::Lie, 1), std::domain_error);
}

TEST(Operad, LieDimensionMatchesTreeSpan) {
  for (int m = 3; m <= 6; ++m) {
    std::vector<int> leaves;
    for (int i = 1; i < m; ++i) leaves.push_back(i);
    EXPECT_EQ(span_rank(all_trees(leaves)), dim(OperadKind::Lie, m)) << "m=" << m;
  }
  EXPECT_EQ(dim(OperadKind::Lie, 3), 1u);
  EXPECT_EQ(dim(OperadKind::Lie, 4), 2u);
}

TEST(Operad, LieNormalFormAgreesWithTensorExpansion) {
  const int m = 6;
  std::vector<int> leaves{1, 2, 3, 4, 5};
  // Random bracketings parsed through the normal form must expand to the same tensor.
  const char* exprs[] = {"[[1,[2,3]],[4,5]]", "[[5,4],[[3,1],2]]", "[1,[2,[3,[4,5]]]]", "[[[[5,1],4],2],3]"};
  for (const char* text : exprs) {
    const auto e = lie_from_bracket(m, text);
    // Build the oracle polynomial directly from the text.
    std::function<Poly(std::string_view, std::size_t&)> parse = [&](std::string_view s, std::size_t& pos) -> Poly {
      if (s[pos] == '[') {
        ++pos;
        Poly a = parse(s, pos);
        ++pos;
        Poly b = parse(s, pos);
        ++pos;
        return lie_bracket(a, b);
      }
      const int v = s[pos++] - '0';
      return Poly{{Word{v}, 1}};
    };
    std::size_t pos = 0;
    EXPECT_EQ(expand(e), parse(text, pos)) << text;
  }
}

TEST(Operad, NormalFormIdempotentAndAntisymmetric) {
  const auto e = lie_from_bracket(4, "[[1,2],3]");
  EXPECT_EQ(e.terms().size(), 1u);
  EXPECT_EQ(e.terms().begin()->second, 1);
  EXPECT_TRUE((lie_from_bracket(4, "[[1,2],3]") + lie_from_bracket(4, "[[2,1],3]")).is_zero());
  EXPECT_TRUE((lie_from_bracket(3, "[1,2]") + lie_from_bracket(3, "[2,1]")).is_zero());
  for (const auto& b : basis(OperadKind::Lie, 5)) {
    const auto w = b.payload();
    std::string text = "1";
    for (std::size_t i = 1; i < w.size(); ++i) text = "[" + text + "," + std::to_string(w[i]) + "]";
    EXPECT_EQ(lie_from_bracket(5, text), OperadElement(b));
  }
}

TEST(Operad, JacobiIHX) {
  const auto j = lie_from_bracket(4, "[[1,2],3]") + lie_from_bracket(4, "[[2,3],1]") + lie_from_bracket(4, "[[3,1],2]");
  EXPECT_TRUE(j.is_zero());
  // IHX around the internal edge of an unrooted 4-leaf tree, written with slot 0 as root:
  // <[0,1],[2,3]> - <[0,2],[1,3]> + <[0,3],[1,2]> = 0, and <[a,b],c> = <a,[b,c]>.
  const auto i = lie_from_bracket(4, "[1,[2,3]]");
  const auto h = lie_from_bracket(4, "[2,[1,3]]");
  const auto x = lie_from_bracket(4, "[3,[1,2]]");
  EXPECT_TRUE((i - h + x).is_zero());
}

TEST(Operad, ActionExamples) {
  const OperadElement tripod(OperadBasisElement{OperadKind::Lie, 3, 0});
  EXPECT_EQ(act({0, 2, 1}, tripod), Rational(-1) * tripod);
  EXPECT_EQ(act({1, 2, 0}, tripod), tripod);
  EXPECT_EQ(act({1, 0, 2}, tripod), Rational(-1) * tripod);
  for (const auto& b : basis(OperadKind::Assoc, 3)) {
    const auto r = act({1, 2, 0}, OperadElement(b));
    ASSERT_EQ(r.terms().size(), 1u);
    EXPECT_EQ(r.terms().begin()->second, 1);
    EXPECT_EQ(r.terms().begin()->first, b.index);
  }
  const auto swapped = act({0, 2, 1}, OperadElement(OperadBasisElement{OperadKind::Assoc, 3, 0}));
  EXPECT_EQ(swapped.coefficient(1), 1);
  EXPECT_THROW(act({0, 1}, tripod), std::invalid_argument);
}

TEST(Operad, ActionIsGroupAction) {
  for (auto kind : {OperadKind::Com, OperadKind::Assoc, OperadKind::Lie})
    for (int m = 3; m <= 4; ++m) {
      const auto perms = all_perms(m);
      for (const auto& b : basis(kind, m)) {
        const OperadElement e(b);
        EXPECT_EQ(act(identity_permutation(m), e), e);
        for (const auto& s : perms)
          for (const auto& t : perms) ASSERT_EQ(act(compose(s, t), e), act(s, act(t, e)));
      }
    }
}

TEST(Operad, LieRelabellingFixingRootAndFirstLetterIsMonomial) {
  for (int m = 4; m <= 6; ++m)
    for (const auto& p : all_perms(m)) {
      if (p[0] != 0 || p[1] != 1) {
        EXPECT_FALSE(detail::acts_monomially(OperadKind::Lie, m, p));
        continue;
      }
      EXPECT_TRUE(detail::acts_monomially(OperadKind::Lie, m, p));
      for (std::uint32_t i = 0; i < dim(OperadKind::Lie, m); ++i) {
        detail::LieArena arena;
        const auto [root, e] = detail::lie_tree(arena, m, i, p);
        const auto [expr, s] = arena.reroot(root, e, 0);
        const auto general = detail::lie_coordinates(arena, expr, m, s);
        const auto fast = detail::act_basis(OperadKind::Lie, m, p, i);
        ASSERT_EQ(fast, general) << "m=" << m << " index " << i;
        ASSERT_EQ(fast.size(), 1u);
      }
    }
}

TEST(Operad, LieActionIsGroupActionInArityFive) {
  const auto perms = all_perms(5);
  std::mt19937 rng(7);
  for (const auto& b : basis(OperadKind::Lie, 5)) {
    const OperadElement e(b);
    for (int trial = 0; trial < 400; ++trial) {
      const auto& s = perms[rng() % perms.size()];
      const auto& t = perms[rng() % perms.size()];
      ASSERT_EQ(act(compose(s, t), e), act(s, act(t, e)));
    }
  }
}

TEST(Operad, CharactersMatchKnownRepresentations) {
  // Lie((3)) is the sign representation; Lie((4)) is the irreducible of shape (2,2).
  for (const auto& p : all_perms(3)) EXPECT_EQ(trace_of_action(OperadKind::Lie, 3, p), sign(p));
  EXPECT_EQ(trace_of_action(OperadKind::Lie, 4, {1, 0, 2, 3}), 0);
  EXPECT_EQ(trace_of_action(OperadKind::Lie, 4, {1, 2, 0, 3}), -1);
  EXPECT_EQ(trace_of_action(OperadKind::Lie, 4, {1, 0, 3, 2}), 2);
  EXPECT_EQ(trace_of_action(OperadKind::Lie, 4, {1, 2, 3, 0}), 0);
  // Lie((5)) has dimension 6 and the 5-cycle acts with trace 1 (it is the (3,1,1) irreducible).
  EXPECT_EQ(trace_of_action(OperadKind::Lie, 5, {1, 2, 3, 4, 0}), 1);
  EXPECT_EQ(trace_of_action(OperadKind::Lie, 5, {1, 0, 2, 3, 4}), 0);
  // Assoc((m)) is a permutation representation on cyclic orders.
  EXPECT_EQ(trace_of_action(OperadKind::Assoc, 4, {1, 2, 3, 0}), 2);
  EXPECT_EQ(trace_of_action(OperadKind::Assoc, 4, {1, 0, 3, 2}), 2);
}

TEST(Operad, ComposeExamples) {
  const OperadElement c3(OperadBasisElement{OperadKind::Com, 3, 0});
  const auto c4 = compose(c3, 0, c3, 1);
  EXPECT_EQ(c4.arity(), 4);
  EXPECT_EQ(c4.coefficient(0), 1);

  const OperadElement a3(OperadBasisElement{OperadKind::Assoc, 3, 0});
  const auto a4 = compose(a3, 1, a3, 0);
  ASSERT_EQ(a4.terms().size(), 1u);
  EXPECT_EQ(a4.terms().begin()->second, 1);
  // (0 1 2) glued at 1 to (0 1 2) at 0: residual a-slots 0,2 -> 0,1 and b-slots 1,2 -> 2,3.
  EXPECT_EQ((OperadBasisElement{OperadKind::Assoc, 4, a4.terms().begin()->first}.payload()), (std::vector<int>{0, 2, 3, 1}));

  const OperadElement l3(OperadBasisElement{OperadKind::Lie, 3, 0});
  for (int sa = 0; sa < 3; ++sa)
    for (int sb = 0; sb < 3; ++sb) {
      const auto l4 = compose(l3, sa, l3, sb);
      EXPECT_FALSE(l4.is_zero());
      for (const auto& [idx, c] : l4.terms()) EXPECT_TRUE(c == 1 || c == -1);
    }
  // <[0,1],x> glued to <x,[2,3]>  is <[0,1],[2,3]> = [1,[2,3]] rooted at 0.
  EXPECT_EQ(compose(l3, 2, l3, 0), lie_from_bracket(4, "[1,[2,3]]"));
  EXPECT_THROW(compose(l3, 3, l3, 0), std::out_of_range);
  EXPECT_THROW(compose(l3, 0, c3, 0), std::invalid_argument);
}

TEST(Operad, ComposeIsAssociative) {
  for (auto kind : {OperadKind::Com, OperadKind::Assoc, OperadKind::Lie}) {
    for (int ma = 3; ma <= 4; ++ma)
      for (int mb = 3; mb <= 4; ++mb) {
        const int mc = 3;
        if (ma + mb + mc - 4 > 6) continue;
        for (const auto& ba : basis(kind, ma))
          for (const auto& bb : basis(kind, mb))
            for (const auto& bc : basis(kind, mc))
              for (int sa = 0; sa < ma; ++sa)
                for (int sb = 0; sb < mb; ++sb)
                  for (int t = 0; t < mb; ++t) {
                    if (t == sb) continue;
                    const int sc = (sa + t) % mc;
                    const OperadElement a(ba), b(bb), c(bc);
                    const int t_in_ab = (ma - 1) + (t < sb ? t : t - 1);
                    const auto left = compose(compose(a, sa, b, sb), t_in_ab, c, sc);
                    const int sb_in_bc = sb < t ? sb : sb - 1;
                    const auto right = compose(a, sa, compose(b, t, c, sc), sb_in_bc);
                    ASSERT_EQ(left, right);
                  }
      }
  }
}

TEST(Operad, ComposeIsSymmetric) {
  for (auto kind : {OperadKind::Assoc, OperadKind::Lie})
    for (const auto& ba : basis(kind, 4))
      for (const auto& bb : basis(kind, 3))
        for (int sa = 0; sa < 4; ++sa)
          for (int sb = 0; sb < 3; ++sb) {
            const auto ab = compose(OperadElement(ba), sa, OperadElement(bb), sb);
            const auto ba_ = compose(OperadElement(bb), sb, OperadElement(ba), sa);
            // ba_ numbers b's residual slots first (0,1), then a's (2,3,4).
            const Permutation block{3, 4, 0, 1, 2};
            ASSERT_EQ(act(block, ba_), ab);
          }
}

TEST(Operad, PayloadRoundTrip) {
  for (auto kind : {OperadKind::Com, OperadKind::Assoc, OperadKind::Lie})
    for (const auto& b : basis(kind, 5)) EXPECT_EQ(basis_element_from_payload(kind, 5, b.payload()), b);
  EXPECT_THROW(basis_element_from_payload(OperadKind::Lie, 4, std::vector<int>{2, 1, 3}), std::invalid_argument);
}
