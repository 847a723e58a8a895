#pragma once

// Membership checks in the image of the boundary for two families of single-vertex Lie
// graphs: graphs split by a bridge into two non-trivial pieces, and differences of
// graphs whose hairs are permuted along the same tree edge.

#include <map>
#include <utility>
#include <vector>

#include "hairy/enumerate.hpp"

namespace hairy {

/// Image of the boundary into one label-content block of a single-vertex slice.
class BoundaryImage {
 public:
  BoundaryImage(const SliceKey& key, const LabelContent& content) {
    if (key.k != 1) throw std::invalid_argument("BoundaryImage: target slice must have one vertex");
    basis_ = enumerate_basis(key, true, &content);
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
    SliceKey upper = key;
    upper.k = 2;
    matrix_ = boundary_matrix(enumerate_basis(upper, true, &content), basis_);
    rank_ = rank(matrix_);
  }

  const std::vector<GraphKey>& basis() const { return basis_; }

  bool contains(const Chain& c) const {
    std::map<std::size_t, Rational> v;
    for (const auto& [g, x] : c) {
      auto it = index_.find(g);
      if (it == index_.end()) throw std::invalid_argument("BoundaryImage: chain outside the block");
      v.emplace(it->second, x);
    }
    if (v.empty()) return true;
    RationalMatrix aug = matrix_;
    aug.append_column(v);
    return rank(aug) == rank_;
  }

 private:
  std::vector<GraphKey> basis_;
  std::map<GraphKey, std::size_t, GraphKeyLess> index_;
  RationalMatrix matrix_;
  std::size_t rank_ = 0;
};

/// Single-vertex Lie graphs obtained by composing the two vertices of a two-vertex
/// graph across its only bridge, built directly from the operad composition.
inline std::vector<Chain> separated_graphs(const SliceKey& key, const LabelContent& content) {
  SliceKey two = key;
  two.k = 2;
  std::vector<Chain> out;
  for (const auto& h : enumerate_basis(two, true, &content)) {
    const auto g = h.graph();
    int bridges = 0;
    Edge bridge;
    for (const auto& e : g.edges)
      if (!e.is_loop()) {
        ++bridges;
        bridge = e;
      }
    if (bridges != 1) continue;
    const int a = bridge.tail_vertex, b = bridge.head_vertex;
    const auto& va = g.vertices[static_cast<std::size_t>(a)];
    const auto& vb = g.vertices[static_cast<std::size_t>(b)];
    auto slot = [&](int v, int s) {
      if (v == a) return s < bridge.tail_slot ? s : s - 1;
      return (va.arity - 1) + (s < bridge.head_slot ? s : s - 1);
    };
    const auto fused = compose(OperadElement(va), bridge.tail_slot, OperadElement(vb), bridge.head_slot);
    Skeleton skel;
    skel.arity = {fused.arity()};
    for (const auto& e : g.edges)
      if (e.is_loop()) skel.edges.push_back({0, slot(e.tail_vertex, e.tail_slot), 0, slot(e.head_vertex, e.head_slot)});
    for (const auto& x : g.hairs) skel.hairs.push_back({0, slot(x.vertex, x.slot), x.label});
    IntTerms deco;
    for (const auto& [j, c] : fused.terms()) deco.emplace_back(j, c.get_num().get_si());
    Chain c;
    const std::vector<IntTerms> decos{deco};
    add_graph_terms(OperadKind::Lie, skel, decos, 1, c);
    if (!c.empty()) out.push_back(std::move(c));
  }
  return out;
}

/// Differences G - G' where G is a basis graph of the single-vertex slice and G' swaps
/// two adjacent hair letters of its left-normed word (past the first letter).
inline std::vector<Chain> hair_swap_differences(const SliceKey& key, const LabelContent& content) {
  std::vector<Chain> out;
  for (const auto& key1 : enumerate_basis(key, true, &content)) {
    const auto g = key1.graph();
    const auto& v = g.vertices[0];
    std::vector<char> is_hair(static_cast<std::size_t>(v.arity), 0);
    for (const auto& h : g.hairs) is_hair[static_cast<std::size_t>(h.slot)] = 1;
    const auto word = v.payload();
    for (std::size_t p = 1; p + 1 < word.size(); ++p) {
      if (!is_hair[static_cast<std::size_t>(word[p])] || !is_hair[static_cast<std::size_t>(word[p + 1])]) continue;
      auto swapped = word;
      std::swap(swapped[p], swapped[p + 1]);
      HairyGraph other = g;
      other.vertices[0] = basis_element_from_payload(OperadKind::Lie, v.arity, swapped);
      Chain diff = canonicalize(g);
      add_scaled(diff, canonicalize(other), -1);
      if (!diff.empty()) out.push_back(std::move(diff));
    }
  }
  return out;
}

}  // namespace hairy
