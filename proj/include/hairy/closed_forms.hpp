#pragma once

// Closed-form dimension counts for first hairy graph homology and the rank-2
// polynomial model used to cross-check them.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hairy/matrix.hpp"
#include "hairy/operad.hpp"
#include "hairy/rational.hpp"

namespace hairy {

/// Generalized binomial coefficient C(a, b) for integer a and b >= 0.
inline Integer binomial(long a, long b) {
  if (b < 0) return 0;
  Rational r = 1;
  for (long i = 0; i < b; ++i) r = r * Rational(a - i) / Rational(i + 1);
  return r.get_num();
}

/// Dimension of weight k cusp forms for SL2(Z).
inline long cusp_dim(long k) {
  if (k < 0) throw std::domain_error("cusp_dim: negative weight");
  if (k % 2 != 0 || k == 2) return 0;
  return k % 12 == 2 ? k / 12 - 1 : k / 12;
}

/// Multiplicity of the two-row Weyl module (k, l) in rank-2 first homology.
inline long lambda(long k, long l) {
  if (l < 0 || k < l) throw std::domain_error("lambda: need k >= l >= 0");
  if ((k + l) % 2 != 0 || k == l) return 0;
  return l % 2 == 0 ? cusp_dim(k - l + 2) : cusp_dim(k - l + 2) + 1;
}

/// dim S_{(k,l)} V for dim V = dimV.
inline Integer weyl_dim_two_row(long k, long l, long dimV) {
  if (l < 0 || k < l) throw std::domain_error("weyl_dim_two_row: need k >= l >= 0");
  if (dimV < 1) throw std::domain_error("weyl_dim_two_row: dim V must be positive");
  const Rational r = Rational(k - l + 1) / Rational(k + 1) * Rational(binomial(dimV - 2 + l, l)) * Rational(binomial(dimV + k - 1, k));
  if (r.get_den() != 1) throw std::logic_error("weyl_dim_two_row: non-integral result");
  return r.get_num();
}

/// Partitions (k, l) of h with k > l and positive multiplicity, largest k first.
inline std::vector<std::pair<std::pair<long, long>, long>> rank2_partitions(long h) {
  std::vector<std::pair<std::pair<long, long>, long>> out;
  for (long l = 0; 2 * l < h; ++l)
    if (const long m = lambda(h - l, l); m > 0) out.push_back({{h - l, l}, m});
  return out;
}

/// dim H_{1,2} with h hairs predicted by the modular-form decomposition.
inline Integer h12_dim_closed(long dimV, long h) {
  if (h < 0) throw std::domain_error("h12_dim_closed: negative hair count");
  Integer total = 0;
  for (const auto& [p, m] : rank2_partitions(h)) total += m * weyl_dim_two_row(p.first, p.second, dimV);
  return total;
}

// Polynomials on V + V. A monomial stores exponents of x_1..x_dimV then y_1..y_dimV.

using Monomial = std::vector<int>;
using Polynomial = std::map<Monomial, Rational>;

namespace detail {

/// Image of a monomial under the per-coordinate linear substitution
/// x_i -> a x_i + b y_i, y_i -> c x_i + e y_i.
inline Polynomial substitute(const Monomial& mono, int dimV, int a, int b, int c, int e) {
  Polynomial acc{{Monomial(static_cast<std::size_t>(2 * dimV), 0), 1}};
  for (int i = 0; i < dimV; ++i) {
    const int px = mono[static_cast<std::size_t>(i)], py = mono[static_cast<std::size_t>(dimV + i)];
    // (a x + b y)^px (c x + e y)^py as coefficients of x^j y^(px+py-j)
    std::vector<Integer> f(static_cast<std::size_t>(px + py + 1), 0);
    for (int s = 0; s <= px; ++s)
      for (int t = 0; t <= py; ++t) {
        Integer v = binomial(px, s) * binomial(py, t);
        Integer w;
        mpz_pow_ui(w.get_mpz_t(), Integer(a).get_mpz_t(), static_cast<unsigned long>(s));
        v *= w;
        mpz_pow_ui(w.get_mpz_t(), Integer(b).get_mpz_t(), static_cast<unsigned long>(px - s));
        v *= w;
        mpz_pow_ui(w.get_mpz_t(), Integer(c).get_mpz_t(), static_cast<unsigned long>(t));
        v *= w;
        mpz_pow_ui(w.get_mpz_t(), Integer(e).get_mpz_t(), static_cast<unsigned long>(py - t));
        v *= w;
        f[static_cast<std::size_t>(s + t)] += v;
      }
    Polynomial next;
    for (const auto& [m, coef] : acc)
      for (int j = 0; j <= px + py; ++j) {
        if (f[static_cast<std::size_t>(j)] == 0) continue;
        Monomial n = m;
        n[static_cast<std::size_t>(i)] = j;
        n[static_cast<std::size_t>(dimV + i)] = px + py - j;
        add_term(next, n, coef * Rational(f[static_cast<std::size_t>(j)]));
      }
    acc.swap(next);
  }
  return acc;
}

inline Polynomial substitute(const Polynomial& p, int dimV, int a, int b, int c, int e) {
  Polynomial out;
  for (const auto& [m, coef] : p) add_scaled(out, substitute(m, dimV, a, b, c, e), coef);
  return out;
}

}  // namespace detail

/// f(y, x)
inline Polynomial swap_xy(const Polynomial& f, int dimV) { return detail::substitute(f, dimV, 0, 1, 1, 0); }
/// f(-x, y)
inline Polynomial negate_x(const Polynomial& f, int dimV) { return detail::substitute(f, dimV, -1, 0, 0, 1); }
/// f(y, -x-y)
inline Polynomial rotate_once(const Polynomial& f, int dimV) { return detail::substitute(f, dimV, 0, 1, -1, -1); }
/// f(-x-y, x)
inline Polynomial rotate_twice(const Polynomial& f, int dimV) { return detail::substitute(f, dimV, -1, -1, 1, 0); }

/// The three defining conditions of the rank-2 model, each as a polynomial that must vanish.
inline std::vector<Polynomial> rank2_conditions(const Polynomial& f, int dimV) {
  Polynomial c1 = f, c2 = f, c3 = f;
  add_scaled(c1, swap_xy(f, dimV), -1);
  add_scaled(c2, negate_x(f, dimV), 1);
  add_scaled(c3, rotate_once(f, dimV), 1);
  add_scaled(c3, rotate_twice(f, dimV), 1);
  return {c1, c2, c3};
}

inline bool satisfies_rank2_conditions(const Polynomial& f, int dimV) {
  for (const auto& c : rank2_conditions(f, dimV))
    if (!c.empty()) return false;
  return true;
}

namespace detail {

/// Solution dimension inside the block where x_i and y_i have total degree a[i].
inline long rank2_block_dim(const std::vector<int>& a) {
  const int dimV = static_cast<int>(a.size());
  std::vector<Monomial> unknowns;
  Monomial m(static_cast<std::size_t>(2 * dimV), 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == dimV) {
      unknowns.push_back(m);
      return;
    }
    for (int j = 0; j <= a[static_cast<std::size_t>(i)]; ++j) {
      m[static_cast<std::size_t>(i)] = j;
      m[static_cast<std::size_t>(dimV + i)] = a[static_cast<std::size_t>(i)] - j;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::map<Monomial, std::size_t> row_of;
  std::vector<std::vector<std::pair<Monomial, Rational>>> columns;
  for (const auto& u : unknowns) {
    const auto conds = rank2_conditions(Polynomial{{u, 1}}, dimV);
    std::vector<std::pair<Monomial, Rational>> col;
    for (std::size_t c = 0; c < conds.size(); ++c)
      for (const auto& [mono, v] : conds[c]) {
        Monomial key = mono;
        key.push_back(static_cast<int>(c));
        col.emplace_back(key, v);
        row_of.emplace(key, 0);
      }
    columns.push_back(std::move(col));
  }
  std::size_t next = 0;
  for (auto& [k, v] : row_of) v = next++;
  RationalMatrix mat(row_of.size(), unknowns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [k, v] : columns[j]) mat.add(row_of.at(k), j, v);
  return static_cast<long>(unknowns.size()) - static_cast<long>(rank(mat));
}

}  // namespace detail

/// Dimension of the space of degree-h polynomials on V + V (dim V = 2n) satisfying the
/// rank-2 conditions. The conditions commute with permutations of the coordinates of V,
/// so with use_symmetry only sorted degree blocks are solved.
inline long rank2_poly_dim(int n, int h, bool use_symmetry = true) {
  if (n < 1) throw std::domain_error("rank2_poly_dim: n must be positive");
  if (h < 0) throw std::domain_error("rank2_poly_dim: negative degree");
  const int dimV = 2 * n;
  long total = 0;
  std::vector<int> a(static_cast<std::size_t>(dimV), 0);
  std::map<std::vector<int>, long> cache;
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == dimV - 1) {
      a[static_cast<std::size_t>(i)] = left;
      if (!use_symmetry) {
        total += detail::rank2_block_dim(a);
        return;
      }
      auto key = a;
      std::sort(key.begin(), key.end());
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, detail::rank2_block_dim(key)).first;
      total += it->second;
      return;
    }
    for (int j = 0; j <= left; ++j) {
      a[static_cast<std::size_t>(i)] = j;
      self(self, i + 1, left - j);
    }
  };
  rec(rec, 0, h);
  return total;
}

/// x_1 y_2^{2k-1} - x_2 y_1 y_2^{2k-2} + y_1 x_2^{2k-1} - y_2 x_1 x_2^{2k-2} on V + V.
inline Polynomial f2k(int k, int dimV) {
  if (k < 2) throw std::domain_error("f2k: need k >= 2");
  if (dimV < 2) throw std::domain_error("f2k: need at least two coordinates");
  auto mono = [&](std::vector<std::pair<int, int>> powers) {
    Monomial m(static_cast<std::size_t>(2 * dimV), 0);
    for (const auto& [var, e] : powers) m[static_cast<std::size_t>(var)] += e;
    return m;
  };
  const int x1 = 0, x2 = 1, y1 = dimV, y2 = dimV + 1;
  Polynomial f;
  add_term(f, mono({{x1, 1}, {y2, 2 * k - 1}}), 1);
  add_term(f, mono({{x2, 1}, {y1, 1}, {y2, 2 * k - 2}}), -1);
  add_term(f, mono({{y1, 1}, {x2, 2 * k - 1}}), 1);
  add_term(f, mono({{y2, 1}, {x1, 1}, {x2, 2 * k - 2}}), -1);
  return f;
}

namespace detail {

/// Number of rotation classes of words of length 3 over an alphabet of size D.
inline long cyclic_word_count(long D) {
  long count = 0;
  for (long a = 0; a < D; ++a)
    for (long b = 0; b < D; ++b)
      for (long c = 0; c < D; ++c) {
        const std::array<long, 3> w{a, b, c}, r1{b, c, a}, r2{c, a, b};
        if (w <= r1 && w <= r2) ++count;
      }
  return count;
}

}  // namespace detail

/// Predicted dimension of first homology of connected hairy graphs. For Com and Assoc the
/// count is summed over all ranks and r is ignored; for Lie the rank is required and the
/// degree d equals the hair count plus 2r - 2.
inline Integer expected_h1(OperadKind kind, long dimV, int d, std::optional<int> r = std::nullopt) {
  if (dimV < 1 || d < 1) throw std::domain_error("expected_h1: need dim V >= 1 and d >= 1");
  switch (kind) {
    case OperadKind::Com:
      return d == 1 ? binomial(dimV + 2, 3) : Integer(0);
    case OperadKind::Assoc:
      if (d == 1) return detail::cyclic_word_count(dimV) + dimV;
      if (d == 2) return binomial(dimV, 2);
      return 0;
    case OperadKind::Lie:
      if (!r) throw std::domain_error("expected_h1: the Lie case needs a rank");
      if (*r == 0) return d == 1 ? binomial(dimV, 3) : Integer(0);
      if (*r == 1) return d % 2 == 1 ? binomial(dimV - 1 + d, d) : Integer(0);
      if (*r == 2) return d >= 2 ? h12_dim_closed(dimV, d - 2) : Integer(0);
      throw std::domain_error("expected_h1: no closed form for rank " + std::to_string(*r));
  }
  throw std::domain_error("expected_h1: unknown operad");
}

}  // namespace hairy
