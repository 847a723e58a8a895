#pragma once

// Cyclic operads Com, Assoc and Lie: bases, symmetric-group actions and compositions.
//
// Com((m)) is one-dimensional. Assoc((m)) has the cyclic orders of {0..m-1} as basis,
// stored rotated so that slot 0 leads. Lie((m)) is realised as planar trivalent trees
// modulo AS and IHX; rooting a tree at slot 0 identifies it with a multilinear element
// of the free Lie algebra on the remaining slots, and the basis is the left-normed
// monomials [...[[x1, x_s2], x_s3], ..., x_sm-1] of dimension (m-2)!.
//
// Slot relabelling uses the invariant form <[a,b],c> = <a,[b,c]>, which is what makes
// the Lie structure cyclic.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hairy/permutation.hpp"
#include "hairy/rational.hpp"

namespace hairy {

enum class OperadKind : std::uint8_t { Com, Assoc, Lie };

inline std::string_view to_string(OperadKind kind) {
  switch (kind) {
    case OperadKind::Com: return "Com";
    case OperadKind::Assoc: return "Assoc";
    case OperadKind::Lie: return "Lie";
  }
  return "?";
}

inline OperadKind parse_operad_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "com" || lower == "comm" || lower == "commutative") return OperadKind::Com;
  if (lower == "assoc" || lower == "associative") return OperadKind::Assoc;
  if (lower == "lie") return OperadKind::Lie;
  throw std::invalid_argument("unknown operad kind: " + std::string(text));
}

inline constexpr int kMaxArity = 14;

inline void check_arity(int m) {
  if (m < 2) throw std::domain_error("operad arity must be at least 2");
  if (m > kMaxArity) throw std::domain_error("operad arity exceeds supported maximum");
}

inline std::size_t dim(OperadKind kind, int m) {
  check_arity(m);
  switch (kind) {
    case OperadKind::Com: return 1;
    case OperadKind::Assoc: return factorial(m - 1);
    case OperadKind::Lie: return factorial(m - 2);
  }
  return 0;
}

struct OperadBasisElement {
  OperadKind kind = OperadKind::Com;
  int arity = 0;
  std::uint32_t index = 0;

  auto operator<=>(const OperadBasisElement&) const = default;

  /// Assoc: the cyclic order read from slot 0. Lie: the leaf word of the left-normed
  /// monomial (starts with 1). Com: empty.
  std::vector<int> payload() const;
};

inline std::vector<OperadBasisElement> basis(OperadKind kind, int m) {
  const std::size_t n = dim(kind, m);
  std::vector<OperadBasisElement> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({kind, m, static_cast<std::uint32_t>(i)});
  return out;
}

namespace detail {

inline std::vector<int> assoc_cycle(int m, std::uint32_t index) {
  std::vector<int> rest(static_cast<std::size_t>(m - 1));
  unrank_permutation(index, rest);
  std::vector<int> cycle{0};
  for (int x : rest) cycle.push_back(x + 1);
  return cycle;
}

inline std::uint32_t assoc_index(std::span<const int> cycle) {
  const auto m = cycle.size();
  const auto zero = static_cast<std::size_t>(std::find(cycle.begin(), cycle.end(), 0) - cycle.begin());
  std::vector<int> rest;
  rest.reserve(m - 1);
  for (std::size_t i = 1; i < m; ++i) rest.push_back(cycle[(zero + i) % m] - 1);
  return static_cast<std::uint32_t>(rank_permutation(rest));
}

inline std::vector<int> lie_word(int m, std::uint32_t index) {
  std::vector<int> tail(static_cast<std::size_t>(m - 2));
  unrank_permutation(index, tail);
  std::vector<int> word{1};
  for (int x : tail) word.push_back(x + 2);
  return word;
}

inline constexpr int kGlue = 15;

struct LieNode {
  int left = -1;
  int right = -1;
  int leaf = -1;
  std::uint32_t mask = 0;
};

/// Arena of bracket expressions whose leaves are slot labels (0..15).
class LieArena {
 public:
  int leaf(int label) {
    nodes_.push_back({-1, -1, label, 1u << label});
    return static_cast<int>(nodes_.size()) - 1;
  }
  int bracket(int a, int b) {
    nodes_.push_back({a, b, -1, node(a).mask | node(b).mask});
    return static_cast<int>(nodes_.size()) - 1;
  }
  const LieNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  bool is_leaf(int i) const { return node(i).leaf >= 0; }
  bool contains(int i, int label) const { return (node(i).mask >> label) & 1u; }

  int left_normed(std::span<const int> word) {
    int e = leaf(word[0]);
    for (std::size_t i = 1; i < word.size(); ++i) e = bracket(e, leaf(word[i]));
    return e;
  }

  int relabel(int i, std::span<const int> map) {
    const LieNode n = node(i);
    if (n.leaf >= 0) return leaf(map[static_cast<std::size_t>(n.leaf)]);
    const int l = relabel(n.left, map);
    const int r = relabel(n.right, map);
    return bracket(l, r);
  }

  /// The unrooted tree <left, right> equals sign * <x_target, expr>.
  std::pair<int, int> reroot(int left, int right, int target) {
    int s = 1;
    for (;;) {
      if (is_leaf(left) && node(left).leaf == target) return {right, s};
      if (is_leaf(right) && node(right).leaf == target) return {left, s};
      if (!contains(left, target)) std::swap(left, right);
      if (is_leaf(left)) throw std::logic_error("reroot: target leaf not present");
      const int l1 = node(left).left;
      const int l2 = node(left).right;
      if (contains(l1, target)) {
        right = bracket(l2, right);
        left = l1;
      } else {
        s = -s;
        right = bracket(l1, right);
        left = l2;
      }
    }
  }

  /// Full expansion of a bracket expression into associative words (4 bits per letter).
  void words(int i, std::vector<std::pair<std::uint64_t, int>>& out) const {
    out.clear();
    const LieNode& n = node(i);
    if (n.leaf >= 0) {
      out.emplace_back(static_cast<std::uint64_t>(n.leaf), 1);
      return;
    }
    std::vector<std::pair<std::uint64_t, int>> a, b;
    words(n.left, a);
    words(n.right, b);
    const int la = std::popcount(node(n.left).mask);
    const int lb = std::popcount(node(n.right).mask);
    out.reserve(2 * a.size() * b.size());
    for (const auto& [wa, ca] : a)
      for (const auto& [wb, cb] : b) {
        out.emplace_back(wa | (wb << (4 * la)), ca * cb);
        out.emplace_back(wb | (wa << (4 * lb)), -ca * cb);
      }
  }

  /// Only the words whose first letter is `first`.
  void words_starting_with(int i, int first, std::vector<std::pair<std::uint64_t, int>>& out) const {
    out.clear();
    const LieNode& n = node(i);
    if (n.leaf >= 0) {
      if (n.leaf == first) out.emplace_back(static_cast<std::uint64_t>(first), 1);
      return;
    }
    std::vector<std::pair<std::uint64_t, int>> head, tail;
    const bool in_left = contains(n.left, first);
    const int head_node = in_left ? n.left : n.right;
    const int tail_node = in_left ? n.right : n.left;
    words_starting_with(head_node, first, head);
    words(tail_node, tail);
    const int lh = std::popcount(node(head_node).mask);
    const int s = in_left ? 1 : -1;
    out.reserve(head.size() * tail.size());
    for (const auto& [wh, ch] : head)
      for (const auto& [wt, ct] : tail) out.emplace_back(wh | (wt << (4 * lh)), s * ch * ct);
  }

 private:
  std::vector<LieNode> nodes_;
};

/// Coordinates in the left-normed basis of a multilinear bracket expression over
/// leaves 1..m-1 (rooted at slot 0), scaled by `scale`.
inline IntTerms lie_coordinates(const LieArena& arena, int expr, int m, int scale) {
  std::vector<std::pair<std::uint64_t, int>> ws;
  arena.words_starting_with(expr, 1, ws);
  IntTerms out;
  out.reserve(ws.size());
  std::vector<int> tail(static_cast<std::size_t>(m - 2));
  for (const auto& [w, c] : ws) {
    for (int i = 1; i < m - 1; ++i)
      tail[static_cast<std::size_t>(i - 1)] = static_cast<int>((w >> (4 * i)) & 0xF) - 2;
    out.emplace_back(static_cast<std::uint32_t>(rank_permutation(tail)), static_cast<std::int64_t>(c * scale));
  }
  std::sort(out.begin(), out.end());
  IntTerms merged;
  for (const auto& t : out) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second += t.second;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const auto& t) { return t.second == 0; });
  return merged;
}

/// Builds <x_root, E> for a Lie basis element with slots relabelled through `map`;
/// returns the pair (root leaf node, E).
inline std::pair<int, int> lie_tree(LieArena& arena, int m, std::uint32_t index, std::span<const int> map) {
  const auto word = lie_word(m, index);
  std::vector<int> mapped(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) mapped[i] = map[static_cast<std::size_t>(word[i])];
  const int e = arena.left_normed(mapped);
  return {arena.leaf(map[0]), e};
}

/// True when relabelling slots by `perm` sends every basis element to a single basis
/// element with coefficient ±1.
inline bool acts_monomially(OperadKind kind, int m, std::span<const int> perm) {
  if (kind != OperadKind::Lie || m <= 3) return true;
  return perm[0] == 0 && perm[1] == 1;
}

inline IntTerms act_basis(OperadKind kind, int m, std::span<const int> perm, std::uint32_t index) {
  if (kind == OperadKind::Lie && m > 3 && perm[0] == 0 && perm[1] == 1) {
    // root and first letter stay put, so the left-normed word is just relabelled
    std::vector<int> tail(static_cast<std::size_t>(m - 2));
    unrank_permutation(index, tail);
    for (int& x : tail) x = perm[static_cast<std::size_t>(x + 2)] - 2;
    return {{static_cast<std::uint32_t>(rank_permutation(tail)), 1}};
  }
  switch (kind) {
    case OperadKind::Com: return {{0, 1}};
    case OperadKind::Assoc: {
      auto cycle = assoc_cycle(m, index);
      for (int& x : cycle) x = perm[static_cast<std::size_t>(x)];
      return {{assoc_index(cycle), 1}};
    }
    case OperadKind::Lie: {
      LieArena arena;
      const auto [root, e] = lie_tree(arena, m, index, perm);
      const auto [expr, s] = arena.reroot(root, e, 0);
      return lie_coordinates(arena, expr, m, s);
    }
  }
  return {};
}

/// Cyclic composition: glue slot sa of a to slot sb of b. Remaining slots are numbered
/// a's residual slots in order, then b's.
inline IntTerms compose_basis(OperadKind kind, int ma, std::uint32_t ia, int sa, int mb, std::uint32_t ib,
                              int sb) {
  const int m = ma + mb - 2;
  std::vector<int> map_a(static_cast<std::size_t>(ma)), map_b(static_cast<std::size_t>(mb));
  for (int s = 0, next = 0; s < ma; ++s) map_a[static_cast<std::size_t>(s)] = s == sa ? kGlue : next++;
  for (int s = 0, next = ma - 1; s < mb; ++s) map_b[static_cast<std::size_t>(s)] = s == sb ? kGlue : next++;
  switch (kind) {
    case OperadKind::Com: return {{0, 1}};
    case OperadKind::Assoc: {
      const auto ca = assoc_cycle(ma, ia);
      const auto cb = assoc_cycle(mb, ib);
      const auto pa = static_cast<std::size_t>(std::find(ca.begin(), ca.end(), sa) - ca.begin());
      const auto pb = static_cast<std::size_t>(std::find(cb.begin(), cb.end(), sb) - cb.begin());
      std::vector<int> cycle;
      cycle.reserve(static_cast<std::size_t>(m));
      for (std::size_t i = 1; i < ca.size(); ++i) cycle.push_back(map_a[static_cast<std::size_t>(ca[(pa + i) % ca.size()])]);
      for (std::size_t i = 1; i < cb.size(); ++i) cycle.push_back(map_b[static_cast<std::size_t>(cb[(pb + i) % cb.size()])]);
      return {{assoc_index(cycle), 1}};
    }
    case OperadKind::Lie: {
      LieArena arena;
      const auto [root_a, ea] = lie_tree(arena, ma, ia, map_a);
      const auto [rest_a, s_a] = arena.reroot(root_a, ea, kGlue);
      const auto [root_b, eb] = lie_tree(arena, mb, ib, map_b);
      const auto [rest_b, s_b] = arena.reroot(root_b, eb, kGlue);
      const auto [expr, s] = arena.reroot(rest_a, rest_b, 0);
      return lie_coordinates(arena, expr, m, s * s_a * s_b);
    }
  }
  return {};
}

}  // namespace detail

inline std::vector<int> OperadBasisElement::payload() const {
  switch (kind) {
    case OperadKind::Com: return {};
    case OperadKind::Assoc: return detail::assoc_cycle(arity, index);
    case OperadKind::Lie: return detail::lie_word(arity, index);
  }
  return {};
}

/// Inverse of payload(); validates the payload shape.
inline OperadBasisElement basis_element_from_payload(OperadKind kind, int m, std::span<const int> payload) {
  check_arity(m);
  switch (kind) {
    case OperadKind::Com:
      if (!payload.empty()) throw std::invalid_argument("Com payload must be empty");
      return {kind, m, 0};
    case OperadKind::Assoc: {
      if (payload.size() != static_cast<std::size_t>(m) || !is_permutation(payload))
        throw std::invalid_argument("Assoc payload must be a cyclic order of all slots");
      return {kind, m, detail::assoc_index(payload)};
    }
    case OperadKind::Lie: {
      if (payload.size() != static_cast<std::size_t>(m - 1) || payload[0] != 1)
        throw std::invalid_argument("Lie payload must be a left-normed word starting with 1");
      std::vector<int> tail;
      for (std::size_t i = 1; i < payload.size(); ++i) tail.push_back(payload[i] - 2);
      if (!is_permutation(tail)) throw std::invalid_argument("Lie payload is not a permutation of 1..m-1");
      return {kind, m, static_cast<std::uint32_t>(rank_permutation(tail))};
    }
  }
  throw std::invalid_argument("bad operad kind");
}

/// Element of O((m)) as an exact linear combination of basis elements.
class OperadElement {
 public:
  OperadElement(OperadKind kind, int arity) : kind_(kind), arity_(arity) { check_arity(arity); }
  explicit OperadElement(const OperadBasisElement& b) : OperadElement(b.kind, b.arity) { add(b.index, 1); }

  OperadKind kind() const { return kind_; }
  int arity() const { return arity_; }
  const std::map<std::uint32_t, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(std::uint32_t index, const Rational& coeff) {
    if (index >= dim(kind_, arity_)) throw std::out_of_range("operad basis index out of range");
    add_term(terms_, index, coeff);
  }
  void add(const OperadElement& other, const Rational& scale = 1) {
    check_compatible(other);
    add_scaled(terms_, other.terms_, scale);
  }
  Rational coefficient(std::uint32_t index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const OperadElement& a, const OperadElement& b) {
    return a.kind_ == b.kind_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }
  friend OperadElement operator+(OperadElement a, const OperadElement& b) {
    a.add(b);
    return a;
  }
  friend OperadElement operator-(OperadElement a, const OperadElement& b) {
    a.add(b, -1);
    return a;
  }
  friend OperadElement operator*(const Rational& s, OperadElement a) {
    for (auto& [k, v] : a.terms_) v *= s;
    std::erase_if(a.terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
    return a;
  }

 private:
  void check_compatible(const OperadElement& other) const {
    if (other.kind_ != kind_ || other.arity_ != arity_)
      throw std::invalid_argument("operad elements of different kind or arity");
  }

  OperadKind kind_;
  int arity_;
  std::map<std::uint32_t, Rational> terms_;
};

/// Σ_m action: slot i of e becomes slot perm[i].
inline OperadElement act(const Permutation& perm, const OperadElement& e) {
  if (perm.size() != static_cast<std::size_t>(e.arity()) || !is_permutation(perm))
    throw std::invalid_argument("act: permutation does not match arity");
  OperadElement out(e.kind(), e.arity());
  for (const auto& [index, coeff] : e.terms())
    for (const auto& [j, c] : detail::act_basis(e.kind(), e.arity(), perm, index)) out.add(j, coeff * c);
  return out;
}

inline OperadElement compose(const OperadElement& a, int slot_a, const OperadElement& b, int slot_b) {
  if (a.kind() != b.kind()) throw std::invalid_argument("compose: operad kinds differ");
  if (slot_a < 0 || slot_a >= a.arity() || slot_b < 0 || slot_b >= b.arity())
    throw std::out_of_range("compose: invalid slot");
  OperadElement out(a.kind(), a.arity() + b.arity() - 2);
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms())
      for (const auto& [j, c] : detail::compose_basis(a.kind(), a.arity(), ia, slot_a, b.arity(), ib, slot_b))
        out.add(j, ca * cb * c);
  return out;
}

namespace detail {

inline int parse_bracket(LieArena& arena, std::string_view text, std::size_t& pos, std::uint32_t& seen) {
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos >= text.size()) throw std::invalid_argument("bracket: unexpected end");
  if (text[pos] == '[') {
    ++pos;
    const int l = parse_bracket(arena, text, pos, seen);
    skip();
    if (pos >= text.size() || text[pos] != ',') throw std::invalid_argument("bracket: expected ','");
    ++pos;
    const int r = parse_bracket(arena, text, pos, seen);
    skip();
    if (pos >= text.size() || text[pos] != ']') throw std::invalid_argument("bracket: expected ']'");
    ++pos;
    return arena.bracket(l, r);
  }
  std::size_t end = pos;
  while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
  if (end == pos) throw std::invalid_argument("bracket: expected slot number");
  const int label = std::stoi(std::string(text.substr(pos, end - pos)));
  if (label <= 0 || label >= kMaxArity) throw std::invalid_argument("bracket: slot out of range");
  if (seen & (1u << label)) throw std::invalid_argument("bracket: repeated slot");
  seen |= 1u << label;
  pos = end;
  return arena.leaf(label);
}

}  // namespace detail

/// Lie((m)) element of a bracket expression over slots 1..m-1, with slot 0 as root,
/// e.g. "[[1,3],2]". The expression need not be in normal form.
inline OperadElement lie_from_bracket(int m, std::string_view text) {
  check_arity(m);
  detail::LieArena arena;
  std::size_t pos = 0;
  std::uint32_t seen = 0;
  const int e = detail::parse_bracket(arena, text, pos, seen);
  if (seen != ((1u << m) - 2u)) throw std::invalid_argument("bracket: slots must be exactly 1..m-1");
  OperadElement out(OperadKind::Lie, m);
  for (const auto& [j, c] : detail::lie_coordinates(arena, e, m, 1)) out.add(j, c);
  return out;
}

}  // namespace hairy
