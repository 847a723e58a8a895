#pragma once

// Hairy O-graphs, their canonical forms and the boundary operator.
//
// An oriented graph is determined by an ordering of its vertices and a direction on each
// internal edge; swapping two vertices or reversing an edge negates it. Hairs carry
// only a label and occupy an operad slot.
//
// The canonical form splits a graph into a bare shape (arities, incidences, hair labels)
// and a decoration in the tensor product of the vertex operad spaces. The shape is put
// in a canonical numbering; the decoration is then reduced modulo the automorphisms of
// that shape, which act linearly (and with orientation signs) on the decoration space.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hairy/coinvariants.hpp"
#include "hairy/operad.hpp"
#include "hairy/symplectic.hpp"

namespace hairy {

struct Edge {
  int tail_vertex = 0;
  int tail_slot = 0;
  int head_vertex = 0;
  int head_slot = 0;
  auto operator<=>(const Edge&) const = default;
  bool is_loop() const { return tail_vertex == head_vertex; }
};

struct Hair {
  int vertex = 0;
  int slot = 0;
  Symbol label;
  auto operator<=>(const Hair&) const = default;
};

/// Counting data shared by graphs and shapes.
struct Skeleton {
  std::vector<int> arity;
  std::vector<Edge> edges;
  std::vector<Hair> hairs;

  int vertex_count() const { return static_cast<int>(arity.size()); }
  int degree() const {
    int d = 0;
    for (int a : arity) d += a - 2;
    return d;
  }
  int hair_count() const { return static_cast<int>(hairs.size()); }
  int components() const {
    std::vector<int> parent(arity.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    int c = vertex_count();
    for (const auto& e : edges) {
      const int a = find(e.tail_vertex), b = find(e.head_vertex);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --c;
      }
    }
    return c;
  }
  int rank() const { return static_cast<int>(edges.size()) - vertex_count() + components(); }
  bool connected() const { return components() == 1; }

  /// Throws std::invalid_argument unless every slot is used exactly once.
  void validate() const {
    if (arity.empty()) throw std::invalid_argument("graph has no vertices");
    std::vector<std::vector<int>> used(arity.size());
    for (std::size_t v = 0; v < arity.size(); ++v) {
      if (arity[v] < 3) throw std::invalid_argument("internal vertices must have valence at least 3");
      if (arity[v] > kMaxArity) throw std::invalid_argument("vertex valence exceeds supported maximum");
      used[v].assign(static_cast<std::size_t>(arity[v]), 0);
    }
    auto use = [&](int v, int s) {
      if (v < 0 || v >= vertex_count()) throw std::invalid_argument("incidence names an unknown vertex");
      if (s < 0 || s >= arity[static_cast<std::size_t>(v)]) throw std::invalid_argument("incidence names an unknown slot");
      if (used[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)]++) throw std::invalid_argument("slot used twice");
    };
    for (const auto& e : edges) {
      use(e.tail_vertex, e.tail_slot);
      use(e.head_vertex, e.head_slot);
    }
    for (const auto& h : hairs) use(h.vertex, h.slot);
    for (const auto& u : used)
      for (int x : u)
        if (!x) throw std::invalid_argument("slot left unused");
  }
};

/// A basic hairy graph: every vertex carries an operad basis element.
struct HairyGraph {
  OperadKind kind = OperadKind::Com;
  std::vector<OperadBasisElement> vertices;
  std::vector<Edge> edges;
  std::vector<Hair> hairs;

  Skeleton skeleton() const {
    Skeleton s{{}, edges, hairs};
    for (const auto& v : vertices) s.arity.push_back(v.arity);
    return s;
  }
  void validate() const {
    for (const auto& v : vertices) {
      if (v.kind != kind) throw std::invalid_argument("vertex operad kind differs from graph kind");
      if (v.arity >= 2 && v.index >= dim(v.kind, v.arity)) throw std::invalid_argument("vertex operad index out of range");
    }
    skeleton().validate();
  }
  int degree() const { return skeleton().degree(); }
  int rank() const { return skeleton().rank(); }
  int hair_count() const { return static_cast<int>(hairs.size()); }
  int vertex_count() const { return static_cast<int>(vertices.size()); }
  bool connected() const { return skeleton().connected(); }
};

namespace detail {

/// Result of renumbering a skeleton along a vertex ordering.
struct Renumbering {
  std::vector<int> new_pos;              // old vertex -> new vertex
  std::vector<Permutation> slot_map;     // per old vertex: old slot -> new slot
  int sign = 1;
  Skeleton result;
};

inline std::vector<std::vector<int>> adjacency(const Skeleton& g) {
  const auto k = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<int>> a(k, std::vector<int>(k, 0));
  for (const auto& e : g.edges) {
    ++a[static_cast<std::size_t>(e.tail_vertex)][static_cast<std::size_t>(e.head_vertex)];
    if (!e.is_loop()) ++a[static_cast<std::size_t>(e.head_vertex)][static_cast<std::size_t>(e.tail_vertex)];
  }
  return a;
}

inline std::vector<std::vector<int>> vertex_invariants(const Skeleton& g, const std::vector<std::vector<int>>& adj) {
  std::vector<std::vector<int>> inv(static_cast<std::size_t>(g.vertex_count()));
  std::vector<std::vector<int>> labels(inv.size());
  for (const auto& h : g.hairs) labels[static_cast<std::size_t>(h.vertex)].push_back(h.label.code());
  for (std::size_t v = 0; v < inv.size(); ++v) {
    std::sort(labels[v].begin(), labels[v].end());
    inv[v].push_back(g.arity[v]);
    inv[v].push_back(adj[v][v]);
    inv[v].push_back(static_cast<int>(labels[v].size()));
    inv[v].insert(inv[v].end(), labels[v].begin(), labels[v].end());
  }
  return inv;
}

/// Vertex orderings (order[pos] = vertex) attaining the minimal adjacency code among
/// orderings compatible with a colour refinement. With all = false only the first is
/// returned.
inline std::vector<std::vector<int>> minimal_orderings(const Skeleton& g, bool all) {
  const int k = g.vertex_count();
  const auto adj = adjacency(g);
  const auto inv = vertex_invariants(g, adj);

  auto rank_colors = [&](const std::vector<std::vector<int>>& keys) {
    std::vector<std::vector<int>> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> color(keys.size());
    for (std::size_t v = 0; v < keys.size(); ++v)
      color[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
    return std::pair(color, static_cast<int>(sorted.size()));
  };
  auto [color, ncolors] = rank_colors(inv);
  for (;;) {
    std::vector<std::vector<int>> keys(static_cast<std::size_t>(k));
    for (int v = 0; v < k; ++v) {
      auto& key = keys[static_cast<std::size_t>(v)];
      key.push_back(color[static_cast<std::size_t>(v)]);
      std::vector<std::pair<int, int>> nb;
      for (int w = 0; w < k; ++w)
        if (w != v && adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)])
          nb.emplace_back(color[static_cast<std::size_t>(w)], adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]);
      std::sort(nb.begin(), nb.end());
      for (auto [c, m] : nb) {
        key.push_back(c);
        key.push_back(m);
      }
    }
    auto [next, n2] = rank_colors(keys);
    color = std::move(next);
    if (n2 == ncolors) break;
    ncolors = n2;
  }

  std::vector<std::vector<int>> classes(static_cast<std::size_t>(ncolors));
  for (int v = 0; v < k; ++v) classes[static_cast<std::size_t>(color[static_cast<std::size_t>(v)])].push_back(v);

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(k));
  std::vector<int> best_code, code;
  std::vector<std::vector<int>> best;
  auto leaf = [&] {
    code.clear();
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        code.push_back(adj[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])][static_cast<std::size_t>(order[static_cast<std::size_t>(j)])]);
    if (best.empty() || code < best_code) {
      best_code = code;
      best.assign(1, order);
    } else if (code == best_code && all) {
      best.push_back(order);
    }
  };
  auto rec = [&](auto&& self, std::size_t c) -> void {
    if (c == classes.size()) {
      leaf();
      return;
    }
    auto perm = classes[c];
    do {
      order.insert(order.end(), perm.begin(), perm.end());
      self(self, c + 1);
      order.resize(order.size() - perm.size());
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  rec(rec, 0);
  return best;
}

/// Renumbers vertices along `order` and slots by the canonical slot rule: half-edges are
/// sorted by (multiplicity of their descriptor, descriptor) where the descriptor is the
/// hair label, the neighbouring vertex, or "loop". Parallel edges are paired in the
/// order fixed at their lower endpoint; each loop occupies two consecutive slots, tail
/// first. Edges between distinct vertices point from the lower to the higher vertex.
inline Renumbering renumber(const Skeleton& g, const std::vector<int>& order) {
  const int k = g.vertex_count();
  Renumbering r;
  r.new_pos.assign(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < k; ++i) r.new_pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  r.slot_map.resize(static_cast<std::size_t>(k));

  // incidence: per (vertex, slot) -> (kind, index into edges/hairs, end)
  struct Inc {
    int type = -1;  // 0 hair, 1 edge tail, 2 edge head
    int index = 0;
  };
  std::vector<std::vector<Inc>> inc(static_cast<std::size_t>(k));
  for (int v = 0; v < k; ++v) inc[static_cast<std::size_t>(v)].resize(static_cast<std::size_t>(g.arity[static_cast<std::size_t>(v)]));
  for (std::size_t h = 0; h < g.hairs.size(); ++h)
    inc[static_cast<std::size_t>(g.hairs[h].vertex)][static_cast<std::size_t>(g.hairs[h].slot)] = {0, static_cast<int>(h)};
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    inc[static_cast<std::size_t>(g.edges[e].tail_vertex)][static_cast<std::size_t>(g.edges[e].tail_slot)] = {1, static_cast<int>(e)};
    inc[static_cast<std::size_t>(g.edges[e].head_vertex)][static_cast<std::size_t>(g.edges[e].head_slot)] = {2, static_cast<int>(e)};
  }

  using Key = std::array<int, 5>;  // mult, type, value, tie1, tie2
  for (int pos = 0; pos < k; ++pos) {
    const int v = order[static_cast<std::size_t>(pos)];
    const int m = g.arity[static_cast<std::size_t>(v)];
    std::vector<std::pair<Key, int>> keys;  // (key, old slot)
    for (int s = 0; s < m; ++s) {
      const Inc c = inc[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)];
      Key key{};
      if (c.type == 0) {
        key = {0, 0, g.hairs[static_cast<std::size_t>(c.index)].label.code(), s, 0};
      } else {
        const Edge& e = g.edges[static_cast<std::size_t>(c.index)];
        if (e.is_loop()) {
          key = {0, 2, 0, std::min(e.tail_slot, e.head_slot), c.type == 1 ? 0 : 1};
        } else {
          const int w = c.type == 1 ? e.head_vertex : e.tail_vertex;
          const int wslot = c.type == 1 ? e.head_slot : e.tail_slot;
          const int wpos = r.new_pos[static_cast<std::size_t>(w)];
          if (wpos < pos)
            key = {0, 1, wpos, r.slot_map[static_cast<std::size_t>(w)][static_cast<std::size_t>(wslot)], 0};
          else
            key = {0, 1, wpos, s, 0};
        }
      }
      keys.emplace_back(key, s);
    }
    std::map<std::pair<int, int>, int> mult;
    for (const auto& [key, s] : keys) ++mult[{key[1], key[2]}];
    for (auto& [key, s] : keys) key[0] = mult[{key[1], key[2]}];
    std::sort(keys.begin(), keys.end());
    auto& sm = r.slot_map[static_cast<std::size_t>(v)];
    sm.assign(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) sm[static_cast<std::size_t>(keys[static_cast<std::size_t>(i)].second)] = i;
  }

  r.sign = sign(r.new_pos);
  r.result.arity.resize(static_cast<std::size_t>(k));
  for (int v = 0; v < k; ++v) r.result.arity[static_cast<std::size_t>(r.new_pos[static_cast<std::size_t>(v)])] = g.arity[static_cast<std::size_t>(v)];
  for (const auto& e : g.edges) {
    Edge n{r.new_pos[static_cast<std::size_t>(e.tail_vertex)], r.slot_map[static_cast<std::size_t>(e.tail_vertex)][static_cast<std::size_t>(e.tail_slot)],
           r.new_pos[static_cast<std::size_t>(e.head_vertex)], r.slot_map[static_cast<std::size_t>(e.head_vertex)][static_cast<std::size_t>(e.head_slot)]};
    if (n.tail_vertex > n.head_vertex || (n.tail_vertex == n.head_vertex && n.tail_slot > n.head_slot)) {
      std::swap(n.tail_vertex, n.head_vertex);
      std::swap(n.tail_slot, n.head_slot);
      r.sign = -r.sign;
    }
    r.result.edges.push_back(n);
  }
  for (const auto& h : g.hairs)
    r.result.hairs.push_back({r.new_pos[static_cast<std::size_t>(h.vertex)], r.slot_map[static_cast<std::size_t>(h.vertex)][static_cast<std::size_t>(h.slot)], h.label});
  std::sort(r.result.edges.begin(), r.result.edges.end());
  std::sort(r.result.hairs.begin(), r.result.hairs.end());
  return r;
}

inline std::string skeleton_code(OperadKind kind, const Skeleton& g) {
  std::string s(to_string(kind));
  s += ':';
  for (int a : g.arity) s += std::to_string(a) + ',';
  s += '|';
  for (const auto& e : g.edges)
    s += std::to_string(e.tail_vertex) + '.' + std::to_string(e.tail_slot) + '-' + std::to_string(e.head_vertex) + '.' +
         std::to_string(e.head_slot) + ',';
  s += '|';
  for (const auto& h : g.hairs) s += std::to_string(h.vertex) + '.' + std::to_string(h.slot) + '=' + h.label.str() + ',';
  return s;
}

/// A symmetry of a canonical skeleton acting on decorations.
struct Symmetry {
  std::vector<int> new_pos;
  std::vector<Permutation> slot_map;
  int sign = 1;

  friend bool operator==(const Symmetry&, const Symmetry&) = default;
  friend auto operator<=>(const Symmetry&, const Symmetry&) = default;
};

/// a after b.
inline Symmetry compose(const Symmetry& a, const Symmetry& b) {
  Symmetry c;
  c.sign = a.sign * b.sign;
  c.new_pos.resize(b.new_pos.size());
  c.slot_map.resize(b.slot_map.size());
  for (std::size_t v = 0; v < b.new_pos.size(); ++v) {
    const auto w = static_cast<std::size_t>(b.new_pos[v]);
    c.new_pos[v] = a.new_pos[w];
    auto& sm = c.slot_map[v];
    sm.resize(b.slot_map[v].size());
    for (std::size_t i = 0; i < sm.size(); ++i) sm[i] = a.slot_map[w][static_cast<std::size_t>(b.slot_map[v][i])];
  }
  return c;
}

inline Symmetry inverse(const Symmetry& a) {
  Symmetry c;
  c.sign = a.sign;
  c.new_pos.resize(a.new_pos.size());
  c.slot_map.resize(a.slot_map.size());
  for (std::size_t v = 0; v < a.new_pos.size(); ++v) {
    const auto w = static_cast<std::size_t>(a.new_pos[v]);
    c.new_pos[w] = static_cast<int>(v);
    c.slot_map[w].resize(a.slot_map[v].size());
    for (std::size_t i = 0; i < a.slot_map[v].size(); ++i) c.slot_map[w][static_cast<std::size_t>(a.slot_map[v][i])] = static_cast<int>(i);
  }
  return c;
}

inline bool acts_monomially(OperadKind kind, const Skeleton& skel, const Symmetry& s) {
  for (std::size_t v = 0; v < s.slot_map.size(); ++v)
    if (!acts_monomially(kind, skel.arity[v], s.slot_map[v])) return false;
  return true;
}

}  // namespace detail

/// A canonical skeleton together with the quotient of its decoration space by its
/// automorphisms. Shapes are interned and never destroyed.
class Shape {
 public:
  Shape(OperadKind kind, Skeleton skel, std::string code);

  OperadKind kind() const { return kind_; }
  const Skeleton& skeleton() const { return skel_; }
  const std::string& code() const { return code_; }
  int vertex_count() const { return skel_.vertex_count(); }
  int degree() const { return degree_; }
  int rank() const { return rank_; }
  int hair_count() const { return skel_.hair_count(); }
  int components() const { return components_; }
  std::size_t automorphism_generators() const { return generators_; }

  /// Decoration codes that survive in the quotient (the graphs of this shape).
  const std::vector<std::uint64_t>& basis() const { return reducer_->basis(); }
  const CoinvariantReducer& reducer() const { return *reducer_; }

  std::uint64_t encode(std::span<const std::uint32_t> idx) const {
    std::uint64_t c = 0;
    for (std::size_t v = 0; v < idx.size(); ++v) c = c * dims_[v] + idx[v];
    return c;
  }
  std::vector<std::uint32_t> decode(std::uint64_t code) const {
    std::vector<std::uint32_t> idx(dims_.size());
    for (std::size_t v = dims_.size(); v-- > 0;) {
      idx[v] = static_cast<std::uint32_t>(code % dims_[v]);
      code /= dims_[v];
    }
    return idx;
  }
  std::uint64_t decoration_dim() const { return total_; }

 private:
  OperadKind kind_;
  Skeleton skel_;
  std::string code_;
  std::vector<std::uint64_t> dims_;
  std::uint64_t total_ = 1;
  int degree_ = 0, rank_ = 0, components_ = 0;
  std::size_t generators_ = 0;
  std::unique_ptr<CoinvariantReducer> reducer_;
};

/// A canonical basic graph: a shape and a surviving decoration code.
struct GraphKey {
  const Shape* shape = nullptr;
  std::uint64_t code = 0;

  HairyGraph graph() const {
    HairyGraph g{shape->kind(), {}, shape->skeleton().edges, shape->skeleton().hairs};
    const auto idx = shape->decode(code);
    for (std::size_t v = 0; v < idx.size(); ++v)
      g.vertices.push_back({shape->kind(), shape->skeleton().arity[v], idx[v]});
    return g;
  }
  friend bool operator==(const GraphKey& a, const GraphKey& b) { return a.shape == b.shape && a.code == b.code; }
};

struct GraphKeyLess {
  bool operator()(const GraphKey& a, const GraphKey& b) const {
    if (a.shape != b.shape) return a.shape->code() < b.shape->code();
    return a.code < b.code;
  }
};

using Chain = Combination<GraphKey, GraphKeyLess>;

namespace detail {

/// Image of a decoration code under a symmetry, in the same shape.
inline void apply_symmetry(OperadKind kind, const Skeleton& skel, std::span<const std::uint64_t> dims, const Symmetry& s,
                           std::uint64_t code, CoinvariantReducer::Image& out) {
  const std::size_t k = dims.size();
  std::vector<std::uint32_t> idx(k);
  for (std::size_t v = k; v-- > 0;) {
    idx[v] = static_cast<std::uint32_t>(code % dims[v]);
    code /= dims[v];
  }
  std::vector<IntTerms> at(k);
  for (std::size_t v = 0; v < k; ++v)
    at[static_cast<std::size_t>(s.new_pos[v])] = act_basis(kind, skel.arity[v], s.slot_map[v], idx[v]);
  out.clear();
  out.emplace_back(0, s.sign);
  for (std::size_t v = 0; v < k; ++v) {
    CoinvariantReducer::Image next;
    next.reserve(out.size() * at[v].size());
    for (const auto& [c, x] : out)
      for (const auto& [j, y] : at[v]) next.emplace_back(c * dims[v] + j, x * y);
    out.swap(next);
  }
  std::sort(out.begin(), out.end());
  CoinvariantReducer::Image merged;
  for (const auto& t : out) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second += t.second;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const auto& t) { return t.second == 0; });
  out.swap(merged);
}

inline std::vector<Symmetry> symmetry_generators(const Skeleton& skel) {
  std::vector<Symmetry> gens;
  const int k = skel.vertex_count();
  const auto id_pos = identity_permutation(k);
  auto local = [&]() {
    Symmetry s;
    s.new_pos = id_pos;
    for (int v = 0; v < k; ++v) s.slot_map.push_back(identity_permutation(skel.arity[static_cast<std::size_t>(v)]));
    return s;
  };
  auto swap_slots = [](Permutation& p, int a, int b) { std::swap(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)]); };

  for (const auto& order : minimal_orderings(skel, true)) {
    auto r = renumber(skel, order);
    if (r.result.arity != skel.arity || r.result.edges != skel.edges || r.result.hairs != skel.hairs)
      throw std::logic_error("canonical skeleton is not a fixed point of its own renumbering");
    bool trivial = r.sign == 1 && r.new_pos == id_pos;
    for (int v = 0; trivial && v < k; ++v) trivial = r.slot_map[static_cast<std::size_t>(v)] == identity_permutation(skel.arity[static_cast<std::size_t>(v)]);
    if (!trivial) gens.push_back({r.new_pos, r.slot_map, r.sign});
  }
  // hairs with equal labels at one vertex
  for (std::size_t a = 0; a + 1 < skel.hairs.size(); ++a) {
    const auto& h1 = skel.hairs[a];
    for (std::size_t b = a + 1; b < skel.hairs.size(); ++b) {
      const auto& h2 = skel.hairs[b];
      if (h1.vertex != h2.vertex || h1.label != h2.label) continue;
      auto s = local();
      swap_slots(s.slot_map[static_cast<std::size_t>(h1.vertex)], h1.slot, h2.slot);
      gens.push_back(std::move(s));
      break;
    }
  }
  // parallel edges, loop flips and loop swaps
  for (std::size_t a = 0; a < skel.edges.size(); ++a) {
    const auto& e = skel.edges[a];
    if (e.is_loop()) {
      auto s = local();
      swap_slots(s.slot_map[static_cast<std::size_t>(e.tail_vertex)], e.tail_slot, e.head_slot);
      s.sign = -1;
      gens.push_back(std::move(s));
    }
    for (std::size_t b = a + 1; b < skel.edges.size(); ++b) {
      const auto& f = skel.edges[b];
      if (e.tail_vertex != f.tail_vertex || e.head_vertex != f.head_vertex) continue;
      auto s = local();
      swap_slots(s.slot_map[static_cast<std::size_t>(e.tail_vertex)], e.tail_slot, f.tail_slot);
      swap_slots(s.slot_map[static_cast<std::size_t>(e.head_vertex)], e.head_slot, f.head_slot);
      gens.push_back(std::move(s));
      break;
    }
  }
  return gens;
}

}  // namespace detail

inline Shape::Shape(OperadKind kind, Skeleton skel, std::string code)
    : kind_(kind), skel_(std::move(skel)), code_(std::move(code)) {
  for (int a : skel_.arity) {
    dims_.push_back(dim(kind_, a));
    total_ *= dims_.back();
  }
  degree_ = skel_.degree();
  components_ = skel_.components();
  rank_ = static_cast<int>(skel_.edges.size()) - skel_.vertex_count() + components_;
  const auto all = detail::symmetry_generators(skel_);
  generators_ = all.size();
  // Monomial generators go first and meet every code; the others are closed under
  // conjugation by them and only meet orbit representatives.
  std::vector<detail::Symmetry> gens, others;
  for (const auto& g : all) (detail::acts_monomially(kind_, skel_, g) ? gens : others).push_back(g);
  const std::size_t monomial = gens.size();
  std::set<detail::Symmetry> seen(others.begin(), others.end());
  for (std::size_t i = 0; i < others.size(); ++i)
    for (std::size_t j = 0; j < monomial; ++j) {
      auto c = detail::compose(detail::compose(gens[j], others[i]), detail::inverse(gens[j]));
      if (seen.insert(c).second) others.push_back(std::move(c));
    }
  gens.insert(gens.end(), others.begin(), others.end());
  reducer_ = std::make_unique<CoinvariantReducer>(
      total_, gens.size(),
      [&](std::size_t g, std::uint64_t c, CoinvariantReducer::Image& out) { detail::apply_symmetry(kind_, skel_, dims_, gens[g], c, out); },
      monomial);
}

namespace detail {

class ShapeRegistry {
 public:
  static ShapeRegistry& instance() {
    static ShapeRegistry r;
    return r;
  }
  const Shape* intern(OperadKind kind, Skeleton&& skel) {
    auto code = skeleton_code(kind, skel);
    std::shared_ptr<Entry> entry;
    {
      std::lock_guard lock(mutex_);
      auto& e = shapes_[code];
      if (!e) e = std::make_shared<Entry>();
      entry = e;
    }
    // built outside the registry lock so that other shapes stay available meanwhile
    std::call_once(entry->once, [&] { entry->shape = std::make_unique<Shape>(kind, std::move(skel), std::move(code)); });
    return entry->shape.get();
  }
  std::size_t size() {
    std::lock_guard lock(mutex_);
    return shapes_.size();
  }

 private:
  struct Entry {
    std::once_flag once;
    std::unique_ptr<Shape> shape;
  };
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> shapes_;
};

}  // namespace detail

/// Canonical shape of a skeleton together with the renumbering that reaches it.
inline std::pair<const Shape*, detail::Renumbering> canonical_shape(OperadKind kind, const Skeleton& g) {
  const auto order = detail::minimal_orderings(g, false).front();
  auto r = detail::renumber(g, order);
  auto skel = r.result;
  return {detail::ShapeRegistry::instance().intern(kind, std::move(skel)), std::move(r)};
}

/// Adds scale * (graph with per-vertex decoration combinations) in canonical form.
inline void add_graph_terms(OperadKind kind, const Skeleton& g, std::span<const IntTerms> deco, const Rational& scale,
                            Chain& out) {
  if (sgn(scale) == 0) return;
  const auto res = canonical_shape(kind, g);
  const Shape* shape = res.first;
  const auto& r = res.second;
  const std::size_t k = deco.size();
  std::vector<IntTerms> at(k);
  for (std::size_t v = 0; v < k; ++v) {
    std::map<std::uint32_t, std::int64_t> acc;
    for (const auto& [idx, c] : deco[v])
      for (const auto& [j, d] : detail::act_basis(kind, g.arity[v], r.slot_map[v], idx)) acc[j] += c * d;
    auto& t = at[static_cast<std::size_t>(r.new_pos[v])];
    for (const auto& [j, c] : acc)
      if (c != 0) t.emplace_back(j, c);
    if (t.empty()) return;
  }
  const auto& red = shape->reducer();
  const auto& basis = red.basis();
  if (basis.empty()) return;
  const Rational s = scale * r.sign;
  std::vector<std::uint32_t> idx(k);
  auto rec = [&](auto&& self, std::size_t v, std::int64_t c) -> void {
    if (v == k) {
      red.accumulate(shape->encode(idx), s * c, [&](std::uint32_t pos, const Rational& x) {
        add_term(out, GraphKey{shape, basis[pos]}, x);
      });
      return;
    }
    for (const auto& [j, d] : at[v]) {
      idx[v] = j;
      self(self, v + 1, c * d);
    }
  };
  rec(rec, 0, 1);
}

inline Chain canonicalize(const HairyGraph& g) {
  g.validate();
  std::vector<IntTerms> deco;
  for (const auto& v : g.vertices) deco.push_back({{v.index, 1}});
  Chain out;
  add_graph_terms(g.kind, g.skeleton(), deco, 1, out);
  return out;
}

inline Chain canonicalize(const HairyGraph& g, const Rational& scale) {
  Chain out = canonicalize(g);
  for (auto& [key, c] : out) c *= scale;
  return out;
}

/// The canonical graph and sign when g canonicalizes to a single basis graph with a
/// unit coefficient; nullopt when g is zero.
inline std::optional<std::pair<GraphKey, int>> canonical_form(const HairyGraph& g) {
  const auto c = canonicalize(g);
  if (c.empty()) return std::nullopt;
  if (c.size() != 1 || abs(c.begin()->second) != 1)
    throw std::logic_error("graph does not reduce to a single signed basis graph");
  return std::pair(c.begin()->first, sgn(c.begin()->second));
}

/// Boundary of a basic graph: sum over non-loop edges of the contraction of that edge,
/// with the fused vertex placed first.
inline void add_boundary(const HairyGraph& g, const Rational& scale, Chain& out) {
  const int k = g.vertex_count();
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    Edge e = g.edges[ei];
    if (e.is_loop()) continue;
    int s = 1;
    if (e.tail_vertex > e.head_vertex) {
      std::swap(e.tail_vertex, e.head_vertex);
      std::swap(e.tail_slot, e.head_slot);
      s = -s;
    }
    const int i = e.tail_vertex, j = e.head_vertex;
    if ((i + j + 1) % 2) s = -s;  // (-1)^{i+j+1} with 1-based positions has the same parity
    const int mi = g.vertices[static_cast<std::size_t>(i)].arity;
    const int mj = g.vertices[static_cast<std::size_t>(j)].arity;

    // new vertex numbering: fused vertex 0, then the others in order
    std::vector<int> vmap(static_cast<std::size_t>(k), -1);
    for (int v = 0, next = 1; v < k; ++v)
      if (v != i && v != j) vmap[static_cast<std::size_t>(v)] = next++;
    auto fused_slot = [&](int v, int slot) {
      if (v == i) return slot < e.tail_slot ? slot : slot - 1;
      return (mi - 1) + (slot < e.head_slot ? slot : slot - 1);
    };
    auto map_end = [&](int v, int slot) -> std::pair<int, int> {
      if (v == i || v == j) return {0, fused_slot(v, slot)};
      return {vmap[static_cast<std::size_t>(v)], slot};
    };

    Skeleton skel;
    skel.arity.assign(static_cast<std::size_t>(k - 1), 0);
    skel.arity[0] = mi + mj - 2;
    for (int v = 0; v < k; ++v)
      if (v != i && v != j) skel.arity[static_cast<std::size_t>(vmap[static_cast<std::size_t>(v)])] = g.vertices[static_cast<std::size_t>(v)].arity;
    for (std::size_t f = 0; f < g.edges.size(); ++f) {
      if (f == ei) continue;
      const auto& x = g.edges[f];
      const auto [tv, ts] = map_end(x.tail_vertex, x.tail_slot);
      const auto [hv, hs] = map_end(x.head_vertex, x.head_slot);
      skel.edges.push_back({tv, ts, hv, hs});
    }
    for (const auto& h : g.hairs) {
      const auto [v, sl] = map_end(h.vertex, h.slot);
      skel.hairs.push_back({v, sl, h.label});
    }
    std::vector<IntTerms> deco(static_cast<std::size_t>(k - 1));
    deco[0] = detail::compose_basis(g.kind, mi, g.vertices[static_cast<std::size_t>(i)].index, e.tail_slot, mj,
                                    g.vertices[static_cast<std::size_t>(j)].index, e.head_slot);
    for (int v = 0; v < k; ++v)
      if (v != i && v != j) deco[static_cast<std::size_t>(vmap[static_cast<std::size_t>(v)])] = {{g.vertices[static_cast<std::size_t>(v)].index, 1}};
    add_graph_terms(g.kind, skel, deco, scale * s, out);
  }
}

inline Chain boundary(const GraphKey& g) {
  Chain out;
  add_boundary(g.graph(), 1, out);
  return out;
}

inline Chain boundary(const Chain& c) {
  Chain out;
  for (const auto& [g, coeff] : c) add_boundary(g.graph(), coeff, out);
  return out;
}

inline Chain boundary(const HairyGraph& g) {
  g.validate();
  Chain out;
  add_boundary(g, 1, out);
  return out;
}

inline std::string to_string(const HairyGraph& g) {
  std::string s(to_string(g.kind));
  s += " V[";
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    s += (v ? " " : "") + std::to_string(g.vertices[v].arity) + "#" + std::to_string(g.vertices[v].index);
  s += "] E[";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    s += (i ? " " : "") + std::to_string(e.tail_vertex) + "." + std::to_string(e.tail_slot) + ">" + std::to_string(e.head_vertex) + "." +
         std::to_string(e.head_slot);
  }
  s += "] H[";
  for (std::size_t i = 0; i < g.hairs.size(); ++i)
    s += (i ? " " : "") + std::to_string(g.hairs[i].vertex) + "." + std::to_string(g.hairs[i].slot) + "=" + g.hairs[i].label.str();
  return s + "]";
}

inline std::string to_string(const GraphKey& g) { return to_string(g.graph()); }

}  // namespace hairy
