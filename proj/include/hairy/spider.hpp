#pragma once

// Spiders, the Lie algebra of positive-degree spiders, and the Chevalley-Eilenberg
// differential on its exterior algebra.
//
// A basic spider is an operad basis element with one symplectic basis symbol per slot.
// Spiders are identified up to the simultaneous action of the symmetric group on slots
// and labels. The canonical representative puts labels in a fixed order (rarer labels
// first, then by symbol) and reduces the operad part modulo the stabilizer of that label
// sequence, which is a Young subgroup.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hairy/coinvariants.hpp"
#include "hairy/operad.hpp"
#include "hairy/symplectic.hpp"

namespace hairy {

struct BasicSpider {
  OperadBasisElement op;
  std::vector<Symbol> labels;

  BasicSpider() = default;
  BasicSpider(OperadBasisElement o, std::vector<Symbol> l) : op(o), labels(std::move(l)) {
    if (op.arity < 3) throw std::domain_error("spiders of degree 0 are not in the positive part");
    if (labels.size() != static_cast<std::size_t>(op.arity)) throw std::invalid_argument("spider label count differs from arity");
    if (op.index >= dim(op.kind, op.arity)) throw std::out_of_range("spider operad index out of range");
  }

  int arity() const { return op.arity; }
  int degree() const { return op.arity - 2; }
  OperadKind kind() const { return op.kind; }

  auto operator<=>(const BasicSpider&) const = default;

  std::string str() const {
    std::string s(to_string(op.kind));
    s += '#' + std::to_string(op.index) + '(';
    for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + labels[i].str();
    return s + ')';
  }
};

using LieElement = Combination<BasicSpider>;

inline int degree(const BasicSpider& s) { return s.degree(); }

namespace detail {

/// Slot order putting labels by (multiplicity, symbol); returns new position of each
/// slot and the sizes of the equal-label blocks.
inline std::pair<Permutation, std::vector<int>> label_order(std::span<const Symbol> labels) {
  const int m = static_cast<int>(labels.size());
  std::map<Symbol, int> count;
  for (auto s : labels) ++count[s];
  std::vector<int> slots(static_cast<std::size_t>(m));
  std::iota(slots.begin(), slots.end(), 0);
  std::stable_sort(slots.begin(), slots.end(), [&](int a, int b) {
    const auto la = labels[static_cast<std::size_t>(a)], lb = labels[static_cast<std::size_t>(b)];
    return std::pair(count[la], la) < std::pair(count[lb], lb);
  });
  Permutation perm(static_cast<std::size_t>(m));
  for (int pos = 0; pos < m; ++pos) perm[static_cast<std::size_t>(slots[static_cast<std::size_t>(pos)])] = pos;
  std::vector<int> blocks;
  for (int pos = 0; pos < m; ++pos) {
    if (pos > 0 && labels[static_cast<std::size_t>(slots[static_cast<std::size_t>(pos)])] ==
                       labels[static_cast<std::size_t>(slots[static_cast<std::size_t>(pos - 1)])])
      ++blocks.back();
    else
      blocks.push_back(1);
  }
  return {perm, blocks};
}

/// Quotient of O((m)) by the Young subgroup permuting slots inside consecutive blocks.
inline const CoinvariantReducer& young_reducer(OperadKind kind, int m, const std::vector<int>& blocks) {
  struct Entry {
    std::once_flag once;
    std::unique_ptr<CoinvariantReducer> reducer;
  };
  static std::mutex mutex;
  static std::map<std::tuple<OperadKind, int, std::vector<int>>, std::shared_ptr<Entry>> cache;
  std::shared_ptr<Entry> entry;
  {
    std::lock_guard lock(mutex);
    auto& e = cache[{kind, m, blocks}];
    if (!e) e = std::make_shared<Entry>();
    entry = e;
  }
  std::call_once(entry->once, [&] {
    std::vector<Permutation> gens;
    int start = 0;
    for (int b : blocks) {
      for (int i = start; i + 1 < start + b; ++i) {
        Permutation t = identity_permutation(m);
        std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(i + 1)]);
        gens.push_back(t);
      }
      start += b;
    }
    entry->reducer = std::make_unique<CoinvariantReducer>(
        dim(kind, m), gens.size(), [&](std::size_t g, std::uint64_t code, CoinvariantReducer::Image& out) {
          for (const auto& [j, c] : act_basis(kind, m, gens[g], static_cast<std::uint32_t>(code))) out.emplace_back(j, c);
        });
  });
  return *entry->reducer;
}

}  // namespace detail

/// Adds scale * (operad terms with the given labels) in canonical form to `out`.
inline void add_spider_terms(OperadKind kind, int m, const IntTerms& terms, std::span<const Symbol> labels,
                             const Rational& scale, LieElement& out) {
  if (m < 3) throw std::domain_error("spiders of degree 0 are not in the positive part");
  const auto [perm, blocks] = detail::label_order(labels);
  std::vector<Symbol> sorted(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) sorted[static_cast<std::size_t>(perm[i])] = labels[i];
  const auto& reducer = detail::young_reducer(kind, m, blocks);
  for (const auto& [idx, c] : terms)
    for (const auto& [j, d] : detail::act_basis(kind, m, perm, idx))
      reducer.accumulate(j, scale * c * d, [&](std::uint32_t pos, const Rational& coeff) {
        add_term(out, BasicSpider({kind, m, static_cast<std::uint32_t>(reducer.basis()[pos])}, sorted), coeff);
      });
}

inline LieElement canonicalize(const BasicSpider& s) {
  LieElement out;
  add_spider_terms(s.kind(), s.arity(), {{s.op.index, 1}}, s.labels, 1, out);
  return out;
}

inline LieElement canonicalize(const LieElement& e) {
  LieElement out;
  for (const auto& [s, c] : e) add_spider_terms(s.kind(), s.arity(), {{s.op.index, 1}}, s.labels, c, out);
  return out;
}

inline bool is_canonical(const BasicSpider& s) {
  const auto c = canonicalize(s);
  return c.size() == 1 && c.begin()->first == s && c.begin()->second == 1;
}

/// Spider from an operad element and labels, in canonical form.
inline LieElement make_spider(const OperadElement& e, std::vector<Symbol> labels) {
  if (labels.size() != static_cast<std::size_t>(e.arity())) throw std::invalid_argument("spider label count differs from arity");
  LieElement out;
  for (const auto& [idx, c] : e.terms()) add_spider_terms(e.kind(), e.arity(), {{idx, 1}}, labels, c, out);
  return out;
}

/// Operad composition at the two legs, weighted by omega of their labels.
inline LieElement fuse(const BasicSpider& a, int leg_a, const BasicSpider& b, int leg_b) {
  if (leg_a < 0 || leg_a >= a.arity() || leg_b < 0 || leg_b >= b.arity()) throw std::out_of_range("fuse: invalid leg");
  if (a.kind() != b.kind()) throw std::invalid_argument("fuse: operad kinds differ");
  LieElement out;
  const int w = omega(a.labels[static_cast<std::size_t>(leg_a)], b.labels[static_cast<std::size_t>(leg_b)]);
  if (w == 0) return out;
  std::vector<Symbol> labels;
  for (int i = 0; i < a.arity(); ++i)
    if (i != leg_a) labels.push_back(a.labels[static_cast<std::size_t>(i)]);
  for (int i = 0; i < b.arity(); ++i)
    if (i != leg_b) labels.push_back(b.labels[static_cast<std::size_t>(i)]);
  const auto terms = detail::compose_basis(a.kind(), a.arity(), a.op.index, leg_a, b.arity(), b.op.index, leg_b);
  add_spider_terms(a.kind(), a.arity() + b.arity() - 2, terms, labels, w, out);
  return out;
}

inline LieElement bracket(const BasicSpider& a, const BasicSpider& b) {
  LieElement out;
  for (int i = 0; i < a.arity(); ++i)
    for (int j = 0; j < b.arity(); ++j) {
      if (omega(a.labels[static_cast<std::size_t>(i)], b.labels[static_cast<std::size_t>(j)]) == 0) continue;
      add_scaled(out, fuse(a, i, b, j), 1);
    }
  return out;
}

inline LieElement bracket(const LieElement& a, const LieElement& b) {
  LieElement out;
  for (const auto& [sa, ca] : a)
    for (const auto& [sb, cb] : b) add_scaled(out, bracket(sa, sb), ca * cb);
  return out;
}

// Exterior algebra. A canonical wedge is a strictly increasing sequence of canonical spiders.

using Wedge = std::vector<BasicSpider>;
using WedgeChain = Combination<Wedge>;

inline int degree(const Wedge& w) {
  int d = 0;
  for (const auto& s : w) d += s.degree();
  return d;
}

/// Sorts factors, returning the sign of the sorting permutation, or 0 on a repeat.
inline int sort_factors(Wedge& w) {
  int s = 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
      std::swap(w[j], w[j - 1]);
      s = -s;
    }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return 0;
  return s;
}

/// Wedge product of arbitrary factors, expanded multilinearly into canonical wedges.
inline WedgeChain wedge(const std::vector<LieElement>& factors, const Rational& scale = 1) {
  WedgeChain out;
  Wedge current;
  auto rec = [&](auto&& self, std::size_t i, const Rational& c) -> void {
    if (i == factors.size()) {
      Wedge w = current;
      const int s = sort_factors(w);
      if (s != 0) add_term(out, w, s * c);
      return;
    }
    for (const auto& [sp, coeff] : factors[i]) {
      current.push_back(sp);
      self(self, i + 1, c * coeff);
      current.pop_back();
    }
  };
  rec(rec, 0, scale);
  return out;
}

inline WedgeChain wedge(const std::vector<BasicSpider>& factors, const Rational& scale = 1) {
  std::vector<LieElement> f;
  for (const auto& s : factors) f.push_back(canonicalize(s));
  return wedge(f, scale);
}

inline WedgeChain ce_boundary(const Wedge& w) {
  WedgeChain out;
  const std::size_t k = w.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const LieElement b = bracket(w[i], w[j]);
      if (b.empty()) continue;
      std::vector<LieElement> factors{b};
      for (std::size_t l = 0; l < k; ++l)
        if (l != i && l != j) factors.push_back(LieElement{{w[l], 1}});
      add_scaled(out, wedge(factors), (i + j + 1) % 2 == 0 ? 1 : -1);
    }
  return out;
}

inline WedgeChain ce_boundary(const WedgeChain& c) {
  WedgeChain out;
  for (const auto& [w, coeff] : c) add_scaled(out, ce_boundary(w), coeff);
  return out;
}

/// All canonical basic spiders of the given kind and degree with labels from V.
inline std::vector<BasicSpider> spider_basis(OperadKind kind, int deg, const SymplecticSpace& V) {
  const int m = deg + 2;
  const auto symbols = V.basis();
  std::vector<BasicSpider> out;
  std::vector<Symbol> labels;
  // label multisets in sorted order of symbols; the canonical order is recomputed anyway
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (labels.size() == static_cast<std::size_t>(m)) {
      const auto [perm, blocks] = detail::label_order(labels);
      std::vector<Symbol> sorted(labels.size());
      for (std::size_t i = 0; i < labels.size(); ++i) sorted[static_cast<std::size_t>(perm[i])] = labels[i];
      for (auto code : detail::young_reducer(kind, m, blocks).basis())
        out.emplace_back(OperadBasisElement{kind, m, static_cast<std::uint32_t>(code)}, sorted);
      return;
    }
    for (std::size_t i = from; i < symbols.size(); ++i) {
      labels.push_back(symbols[i]);
      self(self, i);
      labels.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// All canonical wedges of k factors with total degree d and labels from V.
inline std::vector<Wedge> wedge_basis(OperadKind kind, int k, int d, const SymplecticSpace& V) {
  std::vector<Wedge> out;
  if (k < 1 || d < k) return out;
  std::vector<std::vector<BasicSpider>> by_degree(static_cast<std::size_t>(d + 1));
  for (int e = 1; e <= d - k + 1; ++e) by_degree[static_cast<std::size_t>(e)] = spider_basis(kind, e, V);
  std::vector<BasicSpider> all;
  for (const auto& b : by_degree) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  Wedge cur;
  auto rec = [&](auto&& self, std::size_t from, int left) -> void {
    if (static_cast<int>(cur.size()) == k) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const int slots = k - static_cast<int>(cur.size());
    for (std::size_t i = from; i < all.size(); ++i) {
      const int e = all[i].degree();
      if (e > left - (slots - 1)) continue;
      cur.push_back(all[i]);
      self(self, i + 1, left - e);
      cur.pop_back();
    }
  };
  rec(rec, 0, d);
  return out;
}

inline std::string to_string(const Wedge& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " ^ " : "") + w[i].str();
  return s.empty() ? "1" : s;
}

}  // namespace hairy
