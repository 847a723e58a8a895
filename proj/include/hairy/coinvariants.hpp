#pragma once

// Normal forms in a space of coinvariants D / span{t - g.t}, where D has basis codes
// 0..dim-1 and a finite group acts linearly through a list of generators.
//
// Signed-monomial relations (g.t = ±u) are merged with a parity union-find; the rest are
// fed to an echelon form whose pivot is always the largest code of a row, so smaller
// codes survive as the quotient basis.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hairy/rational.hpp"

namespace hairy {

class CoinvariantReducer {
 public:
  using Image = std::vector<std::pair<std::uint64_t, std::int64_t>>;
  /// Writes the image of basis code `code` under generator `gen` into `out`.
  using Action = std::function<void(std::size_t gen, std::uint64_t code, Image& out)>;
  using NormalForm = std::vector<std::pair<std::uint32_t, Rational>>;

  /// Generators [0, monomial) must act as signed monomials on every code; they are
  /// applied to all codes. The remaining generators are applied only to one code per
  /// orbit of the group K generated by the first ones, which is enough when that set is
  /// closed under conjugation by K. With monomial == 0 every generator meets every code.
  CoinvariantReducer(std::uint64_t dim, std::size_t generators, const Action& action, std::size_t monomial = 0) : dim_(dim) {
    if (monomial > generators) throw std::invalid_argument("more monomial generators than generators");
    root_.resize(dim);
    sign_.assign(dim, 1);
    zero_.assign(dim, 0);
    for (std::uint64_t i = 0; i < dim; ++i) root_[i] = i;

    Image img;
    auto is_monomial = [&] { return img.size() == 1 && (img[0].second == 1 || img[0].second == -1); };
    for (std::size_t g = 0; g < monomial; ++g)
      for (std::uint64_t t = 0; t < dim; ++t) {
        img.clear();
        action(g, t, img);
        if (!is_monomial()) throw std::logic_error("generator declared monomial is not");
        unite(t, img[0].first, static_cast<int>(img[0].second));
      }
    std::vector<std::uint64_t> reps;
    for (std::uint64_t t = 0; t < dim; ++t)
      if (find(t).first == t) reps.push_back(t);

    // monomial images first, so that the rows below are written in final representatives
    bool needs_rows = false;
    for (std::size_t g = monomial; g < generators; ++g)
      for (const auto t : reps) {
        img.clear();
        action(g, t, img);
        if (is_monomial())
          unite(t, img[0].first, static_cast<int>(img[0].second));
        else
          needs_rows = true;
      }
    for (std::uint64_t t = 0; t < dim; ++t) find(t);

    std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint64_t, Rational>>> rows;
    if (needs_rows) {
      std::map<std::uint64_t, Rational> v;
      for (std::size_t g = monomial; g < generators; ++g)
        for (const auto t : reps) {
          img.clear();
          action(g, t, img);
          if (is_monomial()) continue;
          v.clear();
          add_rep(v, t, 1);
          for (const auto& [u, c] : img) add_rep(v, u, -c);
          reduce(v, rows);
          if (v.empty()) continue;
          const auto pivot = v.rbegin()->first;
          const Rational lead = v.rbegin()->second;
          auto& row = rows[pivot];
          for (const auto& [k, c] : v) row.emplace_back(k, c / lead);
        }
    }

    std::vector<std::uint32_t> position(dim, UINT32_MAX);
    for (std::uint64_t t = 0; t < dim; ++t)
      if (root_[t] == t && !zero_[t] && !rows.contains(t)) {
        position[t] = static_cast<std::uint32_t>(basis_.size());
        basis_.push_back(t);
      }

    forms_.resize(dim);
    for (std::uint64_t t = 0; t < dim; ++t) {
      if (root_[t] != t || zero_[t]) continue;
      if (position[t] != UINT32_MAX) {
        forms_[t].emplace_back(position[t], Rational(1));
        continue;
      }
      std::map<std::uint32_t, Rational> acc;
      for (const auto& [k, c] : rows.at(t)) {
        if (k == t) continue;
        for (const auto& [pos, d] : forms_[k]) add_term(acc, pos, -c * d);
      }
      forms_[t].assign(acc.begin(), acc.end());
    }
  }

  std::uint64_t dimension() const { return dim_; }
  /// Codes of the surviving basis, ascending.
  const std::vector<std::uint64_t>& basis() const { return basis_; }

  /// Normal form of a code as a combination of positions in basis(), with `scale`
  /// folded in and accumulated into `out`.
  template <class Out>
  void accumulate(std::uint64_t code, const Rational& scale, Out&& out) const {
    if (code >= dim_) throw std::out_of_range("coinvariant code out of range");
    const auto r = root_[code];
    if (zero_[r]) return;
    for (const auto& [pos, c] : forms_[r]) out(pos, sign_[code] > 0 ? Rational(c * scale) : Rational(-c * scale));
  }

  NormalForm normal_form(std::uint64_t code) const {
    NormalForm out;
    accumulate(code, Rational(1), [&](std::uint32_t pos, const Rational& c) { out.emplace_back(pos, c); });
    return out;
  }

 private:
  std::pair<std::uint64_t, int> find(std::uint64_t x) {
    std::uint64_t r = x;
    int s = 1;
    while (root_[r] != r) {
      s *= sign_[r];
      r = root_[r];
    }
    // path compression: every node on the path now points straight at r
    std::uint64_t cur = x;
    int cs = s;
    while (root_[cur] != cur) {
      const auto next = root_[cur];
      const int ns = cs * sign_[cur];
      root_[cur] = r;
      sign_[cur] = static_cast<std::int8_t>(cs);
      cur = next;
      cs = ns;
    }
    return {r, s};
  }

  // a = s * b
  void unite(std::uint64_t a, std::uint64_t b, int s) {
    const auto [ra, sa] = find(a);
    const auto [rb, sb] = find(b);
    if (ra == rb) {
      if (sa != s * sb) zero_[ra] = 1;
      return;
    }
    const int rel = sa * s * sb;  // ra = rel * rb
    if (ra < rb) {
      root_[rb] = ra;
      sign_[rb] = static_cast<std::int8_t>(rel);
      zero_[ra] |= zero_[rb];
    } else {
      root_[ra] = rb;
      sign_[ra] = static_cast<std::int8_t>(rel);
      zero_[rb] |= zero_[ra];
    }
  }

  void add_rep(std::map<std::uint64_t, Rational>& v, std::uint64_t code, std::int64_t c) const {
    const auto r = root_[code];
    if (zero_[r]) return;
    add_term(v, r, Rational(sign_[code] * c));
  }

  static void reduce(std::map<std::uint64_t, Rational>& v,
                     const std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint64_t, Rational>>>& rows) {
    auto it = v.end();
    while (it != v.begin()) {
      --it;
      const auto found = rows.find(it->first);
      if (found == rows.end()) continue;
      const auto key = it->first;
      const Rational f = it->second;
      for (const auto& [k, c] : found->second) add_term(v, k, -f * c);
      it = v.lower_bound(key);
    }
  }

  std::uint64_t dim_;
  std::vector<std::uint64_t> root_;
  std::vector<std::int8_t> sign_;
  std::vector<std::uint8_t> zero_;
  std::vector<std::uint64_t> basis_;
  std::vector<NormalForm> forms_;
};

}  // namespace hairy
