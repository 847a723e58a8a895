#pragma once

// Graded pieces of the hairy graph complex: enumeration of canonical bases, boundary
// matrices and homology.
//
// The boundary never looks at hair labels, so it preserves the label content (how many
// hairs carry each symbol) and commutes with any permutation of the 2n symbols. Slices
// are therefore split into label-content blocks, and homology is computed once per orbit
// of contents under symbol permutations.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hairy/graph.hpp"
#include "hairy/matrix.hpp"
#include "hairy/symplectic.hpp"

namespace hairy {

struct SliceKey {
  OperadKind kind = OperadKind::Com;
  int n = 1;  // V has dimension 2n
  int k = 1;  // vertices
  int d = 1;  // degree
  int r = 0;  // first Betti number of the graph
  int h = 0;  // hairs

  auto operator<=>(const SliceKey&) const = default;

  /// Internal edge count implied by the key, or -1 when no graph has these gradings.
  int edge_count() const {
    const int twice = d + 2 * k - h;
    if (twice < 0 || twice % 2) return -1;
    return twice / 2;
  }
  /// Number of components, or -1 when inconsistent.
  int components() const {
    const int e = edge_count();
    if (e < 0) return -1;
    const int c = r - e + k;
    return c >= 1 && c <= k ? c : -1;
  }
  void validate() const {
    if (n < 1) throw std::invalid_argument("slice: n must be positive");
    if (k < 1) throw std::invalid_argument("slice: vertex count must be positive");
    if (d < 1) throw std::invalid_argument("slice: degree must be positive");
    if (r < 0 || h < 0) throw std::invalid_argument("slice: rank and hair count must be non-negative");
  }
  std::string str() const {
    return std::string(to_string(kind)) + " n=" + std::to_string(n) + " k=" + std::to_string(k) + " d=" + std::to_string(d) +
           " r=" + std::to_string(r) + " h=" + std::to_string(h);
  }
};

/// Hair label content: count of each symbol p1,q1,p2,q2,... (length 2n).
using LabelContent = std::vector<int>;

inline std::vector<Symbol> content_symbols(int n) { return SymplecticSpace{n}.basis(); }

inline LabelContent label_content(const Skeleton& g, int n) {
  LabelContent w(static_cast<std::size_t>(2 * n), 0);
  for (const auto& h : g.hairs) {
    if (h.label.primed() || h.label.index() > n) throw std::invalid_argument("hair label outside V");
    ++w[static_cast<std::size_t>(2 * (h.label.index() - 1) + (h.label.is_q() ? 1 : 0))];
  }
  return w;
}

/// All label contents of total h over 2n symbols.
inline std::vector<LabelContent> all_contents(int n, int h) {
  std::vector<LabelContent> out;
  LabelContent w(static_cast<std::size_t>(2 * n), 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == w.size()) {
      w[i] = left;
      out.push_back(w);
      return;
    }
    for (int x = left; x >= 0; --x) {
      w[i] = x;
      self(self, i + 1, left - x);
    }
  };
  rec(rec, 0, h);
  return out;
}

/// Orbit representatives of contents under symbol permutations (non-increasing vectors)
/// with orbit sizes.
inline std::vector<std::pair<LabelContent, long>> content_orbits(int n, int h) {
  std::vector<std::pair<LabelContent, long>> out;
  for (auto& w : all_contents(n, h)) {
    if (!std::is_sorted(w.begin(), w.end(), std::greater<>())) continue;
    std::map<int, int> mult;
    for (int x : w) ++mult[x];
    long size = static_cast<long>(factorial(static_cast<int>(w.size())));
    for (auto [x, m] : mult) size /= static_cast<long>(factorial(m));
    out.emplace_back(w, size);
  }
  return out;
}

namespace detail {

/// Unlabelled skeleton: arities, loops, edge multiplicities and hair counts.
struct Frame {
  std::vector<int> arity;
  std::vector<std::vector<int>> adj;  // adj[v][v] = loops, adj[v][w] = edges for v < w
  std::vector<int> hairs;
};

inline Skeleton frame_skeleton(const Frame& f, const std::vector<std::vector<Symbol>>& labels) {
  Skeleton s;
  s.arity = f.arity;
  const int k = static_cast<int>(f.arity.size());
  std::vector<int> next(static_cast<std::size_t>(k), 0);
  for (int v = 0; v < k; ++v)
    for (int w = v; w < k; ++w)
      for (int c = 0; c < f.adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]; ++c) {
        const int a = next[static_cast<std::size_t>(v)]++;
        const int b = next[static_cast<std::size_t>(w)]++;
        s.edges.push_back({v, a, w, b});
      }
  for (int v = 0; v < k; ++v)
    for (auto l : labels[static_cast<std::size_t>(v)]) s.hairs.push_back({v, next[static_cast<std::size_t>(v)]++, l});
  return s;
}

/// Frames for the gradings, up to isomorphism.
inline std::vector<Frame> frames(int k, int d, int r, int h, bool connected_only) {
  const SliceKey key{OperadKind::Com, 1, k, d, r, h};
  const int edges = key.edge_count();
  const int comps = key.components();
  std::vector<Frame> out;
  if (edges < 0 || comps < 0 || (connected_only && comps != 1)) return out;

  std::set<std::string> seen;
  std::vector<int> parts;
  auto emit = [&](const Frame& f) {
    std::vector<std::vector<Symbol>> dummy(f.arity.size());
    for (std::size_t v = 0; v < f.arity.size(); ++v) dummy[v].assign(static_cast<std::size_t>(f.hairs[v]), Symbol::p(1));
    const auto skel = frame_skeleton(f, dummy);
    if (skel.components() != comps) return;
    const auto order = minimal_orderings(skel, false).front();
    const auto code = skeleton_code(OperadKind::Com, renumber(skel, order).result);
    if (seen.insert(code).second) out.push_back(f);
  };

  auto place_edges = [&](Frame& f) {
    std::vector<int> cap(f.arity);
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v < k; ++v)
      for (int w = v; w < k; ++w) pairs.emplace_back(v, w);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
      if (left == 0) {
        f.hairs = cap;
        emit(f);
        return;
      }
      if (i == pairs.size()) return;
      const auto [v, w] = pairs[i];
      auto& cell = f.adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
      const int per = v == w ? 2 : 1;
      const int most = v == w ? cap[static_cast<std::size_t>(v)] / 2
                              : std::min(cap[static_cast<std::size_t>(v)], cap[static_cast<std::size_t>(w)]);
      for (int c = std::min(most, left); c >= 0; --c) {
        cell = c;
        cap[static_cast<std::size_t>(v)] -= per == 2 ? 2 * c : c;
        if (v != w) cap[static_cast<std::size_t>(w)] -= c;
        self(self, i + 1, left - c);
        cap[static_cast<std::size_t>(v)] += per == 2 ? 2 * c : c;
        if (v != w) cap[static_cast<std::size_t>(w)] += c;
      }
      cell = 0;
    };
    rec(rec, 0, edges);
  };

  auto rec_parts = [&](auto&& self, int left, int maxpart) -> void {
    if (static_cast<int>(parts.size()) == k) {
      if (left != 0) return;
      Frame f;
      for (int p : parts) f.arity.push_back(p + 2);
      f.adj.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
      place_edges(f);
      return;
    }
    const int remaining = k - static_cast<int>(parts.size());
    for (int p = std::min(maxpart, left - (remaining - 1)); p >= 1; --p) {
      parts.push_back(p);
      self(self, left - p, p);
      parts.pop_back();
    }
  };
  rec_parts(rec_parts, d, d);
  return out;
}

}  // namespace detail

/// Canonical basis of a slice, optionally restricted to one label content.
inline std::vector<GraphKey> enumerate_basis(const SliceKey& key, bool connected_only, const LabelContent* content = nullptr) {
  key.validate();
  if (content && content->size() != static_cast<std::size_t>(2 * key.n)) throw std::invalid_argument("label content has the wrong length");
  const auto symbols = content_symbols(key.n);
  std::set<const Shape*> shapes;
  for (const auto& f : detail::frames(key.k, key.d, key.r, key.h, connected_only)) {
    const std::size_t k = f.arity.size();
    std::vector<std::vector<Symbol>> labels(k);
    LabelContent left = content ? *content : LabelContent{};
    auto rec_vertex = [&](auto&& self, std::size_t v) -> void {
      if (v == k) {
        shapes.insert(canonical_shape(key.kind, detail::frame_skeleton(f, labels)).first);
        return;
      }
      const int need = f.hairs[v];
      auto rec_label = [&](auto&& inner, std::size_t from, int remaining) -> void {
        if (remaining == 0) {
          self(self, v + 1);
          return;
        }
        for (std::size_t s = from; s < symbols.size(); ++s) {
          if (content && left[s] == 0) continue;
          if (content) --left[s];
          labels[v].push_back(symbols[s]);
          inner(inner, s, remaining - 1);
          labels[v].pop_back();
          if (content) ++left[s];
        }
      };
      rec_label(rec_label, 0, need);
    };
    rec_vertex(rec_vertex, 0);
  }
  std::vector<GraphKey> out;
  for (const Shape* s : shapes)
    for (auto c : s->basis()) out.push_back({s, c});
  std::sort(out.begin(), out.end(), GraphKeyLess{});
  return out;
}

/// Matrix of the boundary from basis `from` (columns) to basis `to` (rows).
inline RationalMatrix boundary_matrix(const std::vector<GraphKey>& from, const std::vector<GraphKey>& to) {
  std::map<GraphKey, std::size_t, GraphKeyLess> index;
  for (std::size_t i = 0; i < to.size(); ++i) index.emplace(to[i], i);
  RationalMatrix m(to.size(), from.size());
  for (std::size_t j = 0; j < from.size(); ++j)
    for (const auto& [g, c] : boundary(from[j])) {
      auto it = index.find(g);
      if (it == index.end()) throw ComplexIntegrityError("boundary term outside the target slice: " + to_string(g));
      m.add(it->second, j, c);
    }
  return m;
}

/// Boundary from the slice at k vertices to the slice at k-1 vertices.
inline RationalMatrix slice_boundary_matrix(const SliceKey& key, bool connected_only, const LabelContent* content = nullptr) {
  const auto cols = enumerate_basis(key, connected_only, content);
  if (key.k == 1) return RationalMatrix(0, cols.size());
  SliceKey lower = key;
  --lower.k;
  return boundary_matrix(cols, enumerate_basis(lower, connected_only, content));
}

struct SliceHomology {
  SliceKey slice;
  bool connected_only = true;
  HomologyReport report;
};

/// Homology of the slice, summed over label-content blocks. With use_symmetry each
/// orbit of contents under symbol permutations is computed once and weighted.
inline SliceHomology slice_homology(const SliceKey& key, bool connected_only, bool use_symmetry = true) {
  key.validate();
  SliceHomology out{key, connected_only, {}};
  std::vector<std::pair<LabelContent, long>> blocks;
  if (use_symmetry)
    blocks = content_orbits(key.n, key.h);
  else
    for (auto& w : all_contents(key.n, key.h)) blocks.emplace_back(w, 1);
  SliceKey lower = key, upper = key;
  --lower.k;
  ++upper.k;
  for (const auto& [w, mult] : blocks) {
    const auto mid = enumerate_basis(key, connected_only, &w);
    if (mid.empty()) continue;
    const auto below = key.k > 1 ? enumerate_basis(lower, connected_only, &w) : std::vector<GraphKey>{};
    const auto above = enumerate_basis(upper, connected_only, &w);
    const auto rep = homology_dim(boundary_matrix(mid, below), boundary_matrix(above, mid));
    out.report.dim_chains += rep.dim_chains * static_cast<std::size_t>(mult);
    out.report.rank_in += rep.rank_in * static_cast<std::size_t>(mult);
    out.report.rank_out += rep.rank_out * static_cast<std::size_t>(mult);
    out.report.betti += rep.betti * mult;
  }
  return out;
}

/// Betti number of H_1 of a connected (d, r, h) piece: C_1 modulo the image of C_2.
inline long h1_betti(OperadKind kind, int n, int d, int r, int h, bool use_symmetry = true) {
  return slice_homology({kind, n, 1, d, r, h}, true, use_symmetry).report.betti;
}

}  // namespace hairy
