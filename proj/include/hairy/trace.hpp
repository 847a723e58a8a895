#pragma once

// The trace map from wedges of spiders to hairy graphs, its one-sided inverse built from
// state sums, and the projections used with them.
//
// A matching pairs some hairs of a graph; applying it joins each pair {a, b} (a < b in
// hair order) by an edge from a to b and multiplies by omega(label a, label b).

#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hairy/graph.hpp"
#include "hairy/spider.hpp"

namespace hairy {

using Matching = std::vector<std::pair<int, int>>;

/// Calls f(M) for every matching of h hairs, each exactly once, including the empty one.
/// When `labels` is given only pairs with nonzero pairing are used. Returns the count.
inline std::size_t for_each_matching(int h, const std::vector<Symbol>* labels, const std::function<void(const Matching&)>& f) {
  std::vector<char> used(static_cast<std::size_t>(h), 0);
  Matching m;
  std::size_t count = 0;
  auto rec = [&](auto&& self, int i) -> void {
    while (i < h && used[static_cast<std::size_t>(i)]) ++i;
    if (i == h) {
      ++count;
      f(m);
      return;
    }
    used[static_cast<std::size_t>(i)] = 1;
    self(self, i + 1);
    for (int j = i + 1; j < h; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      if (labels && omega((*labels)[static_cast<std::size_t>(i)], (*labels)[static_cast<std::size_t>(j)]) == 0) continue;
      used[static_cast<std::size_t>(j)] = 1;
      m.emplace_back(i, j);
      self(self, i + 1);
      m.pop_back();
      used[static_cast<std::size_t>(j)] = 0;
    }
    used[static_cast<std::size_t>(i)] = 0;
  };
  rec(rec, 0);
  return count;
}

inline std::vector<Matching> matchings(const HairyGraph& g) {
  std::vector<Matching> out;
  for_each_matching(g.hair_count(), nullptr, [&](const Matching& m) { out.push_back(m); });
  return out;
}

namespace detail {

inline std::vector<Symbol> hair_labels(const HairyGraph& g) {
  std::vector<Symbol> out;
  for (const auto& h : g.hairs) out.push_back(h.label);
  return out;
}

/// Adds scale * g^M to out. M must be a valid matching of g's hairs.
inline void add_matched(const HairyGraph& g, const Matching& m, const Rational& scale, Chain& out) {
  Rational w = scale;
  Skeleton skel = g.skeleton();
  std::vector<char> gone(g.hairs.size(), 0);
  for (const auto& [a, b] : m) {
    const auto& ha = g.hairs[static_cast<std::size_t>(a)];
    const auto& hb = g.hairs[static_cast<std::size_t>(b)];
    w *= omega(ha.label, hb.label);
    skel.edges.push_back({ha.vertex, ha.slot, hb.vertex, hb.slot});
    gone[static_cast<std::size_t>(a)] = gone[static_cast<std::size_t>(b)] = 1;
  }
  if (sgn(w) == 0) return;
  skel.hairs.clear();
  for (std::size_t i = 0; i < g.hairs.size(); ++i)
    if (!gone[i]) skel.hairs.push_back(g.hairs[i]);
  std::vector<IntTerms> deco;
  for (const auto& v : g.vertices) deco.push_back({{v.index, 1}});
  add_graph_terms(g.kind, skel, deco, w, out);
}

}  // namespace detail

/// g^M in canonical form. Throws std::invalid_argument if M is not a matching of g's hairs.
inline Chain apply_matching(const HairyGraph& g, const Matching& m) {
  g.validate();
  std::vector<char> seen(g.hairs.size(), 0);
  for (const auto& [a, b] : m)
    for (int x : {a, b}) {
      if (x < 0 || x >= g.hair_count()) throw std::invalid_argument("matching names an unknown hair");
      if (seen[static_cast<std::size_t>(x)]++) throw std::invalid_argument("matching uses a hair twice");
    }
  Chain out;
  detail::add_matched(g, m, 1, out);
  return out;
}

/// The graph of a wedge: one vertex per factor, in order, with every leg a hair.
inline HairyGraph iota(const Wedge& w) {
  if (w.empty()) throw std::invalid_argument("iota: empty wedge");
  HairyGraph g;
  g.kind = w.front().kind();
  for (std::size_t v = 0; v < w.size(); ++v) {
    g.vertices.push_back(w[v].op);
    for (int s = 0; s < w[v].arity(); ++s) g.hairs.push_back({static_cast<int>(v), s, w[v].labels[static_cast<std::size_t>(s)]});
  }
  return g;
}

/// Counters filled in by the trace routines.
struct TraceStats {
  std::size_t matchings = 0;
};

namespace detail {

/// Adds scale * sum over matchings M of sign^{|M|} g^M.
inline void add_exp(const HairyGraph& g, int sign, const Rational& scale, Chain& out, TraceStats* stats) {
  const auto labels = hair_labels(g);
  const auto n = for_each_matching(g.hair_count(), &labels, [&](const Matching& m) {
    add_matched(g, m, m.size() % 2 == 1 && sign < 0 ? Rational(-scale) : scale, out);
  });
  if (stats) stats->matchings += n;
}

}  // namespace detail

/// exp(T) applied to the graph of a wedge: the sum of all its matchings.
inline Chain trace(const Wedge& w, TraceStats* stats = nullptr) {
  Chain out;
  detail::add_exp(iota(w), 1, 1, out, stats);
  return out;
}

inline Chain trace(const WedgeChain& c, TraceStats* stats = nullptr) {
  Chain out;
  for (const auto& [w, coeff] : c) detail::add_exp(iota(w), 1, coeff, out, stats);
  return out;
}

/// T: the sum over single pairs of hairs.
inline Chain apply_T(const Chain& c) {
  Chain out;
  for (const auto& [key, coeff] : c) {
    const auto g = key.graph();
    for (int a = 0; a < g.hair_count(); ++a)
      for (int b = a + 1; b < g.hair_count(); ++b) detail::add_matched(g, {{a, b}}, coeff, out);
  }
  return out;
}

inline Chain exp_T(const Chain& c, TraceStats* stats = nullptr) {
  Chain out;
  for (const auto& [key, coeff] : c) detail::add_exp(key.graph(), 1, coeff, out, stats);
  return out;
}

inline Chain exp_neg_T(const Chain& c, TraceStats* stats = nullptr) {
  Chain out;
  for (const auto& [key, coeff] : c) detail::add_exp(key.graph(), -1, coeff, out, stats);
  return out;
}

/// |S(M)| = 2^m N! / (N - m)!.
inline Integer state_count(int m, int N) {
  if (m < 0 || m > N) return 0;
  Integer r = 1;
  for (int i = 0; i < m; ++i) r *= 2 * (N - i);
  return r;
}

inline int stabilizer_size(int d) { return 3 * d / 2; }

/// Cuts every edge of g, labels each cut pair by p'_i (one end) and q'_i (the other) with
/// distinct i <= N = floor(3d/2), and averages the resulting wedges over all such states
/// with sign +1 when p'_i lands on the tail of its edge.
inline WedgeChain alpha(const HairyGraph& g, int d) {
  g.validate();
  if (g.degree() != d) throw std::invalid_argument("alpha: graph degree differs from d");
  const int N = stabilizer_size(d);
  const int m = static_cast<int>(g.edges.size());
  WedgeChain out;
  if (m > N) throw std::logic_error("alpha: more edges than stabilizing pairs");
  const Rational weight = Rational(1) / Rational(state_count(m, N));
  std::vector<std::vector<Symbol>> labels(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) labels[v].resize(static_cast<std::size_t>(g.vertices[v].arity));
  for (const auto& h : g.hairs) labels[static_cast<std::size_t>(h.vertex)][static_cast<std::size_t>(h.slot)] = h.label;
  std::vector<char> taken(static_cast<std::size_t>(N + 1), 0);
  auto emit = [&](int sign) {
    std::vector<BasicSpider> factors;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) factors.emplace_back(g.vertices[v], labels[v]);
    add_scaled(out, wedge(factors), weight * sign);
  };
  auto rec = [&](auto&& self, int e, int sign) -> void {
    if (e == m) {
      emit(sign);
      return;
    }
    const auto& edge = g.edges[static_cast<std::size_t>(e)];
    auto& tail = labels[static_cast<std::size_t>(edge.tail_vertex)][static_cast<std::size_t>(edge.tail_slot)];
    auto& head = labels[static_cast<std::size_t>(edge.head_vertex)][static_cast<std::size_t>(edge.head_slot)];
    for (int i = 1; i <= N; ++i) {
      if (taken[static_cast<std::size_t>(i)]) continue;
      taken[static_cast<std::size_t>(i)] = 1;
      tail = Symbol::p(i, true);
      head = Symbol::q(i, true);
      self(self, e + 1, sign);
      tail = Symbol::q(i, true);
      head = Symbol::p(i, true);
      self(self, e + 1, -sign);
      taken[static_cast<std::size_t>(i)] = 0;
    }
  };
  rec(rec, 0, 1);
  return out;
}

inline WedgeChain alpha(const Chain& c, int d) {
  WedgeChain out;
  for (const auto& [key, coeff] : c) add_scaled(out, alpha(key.graph(), d), coeff);
  return out;
}

/// alpha composed with exp(-T); c must be homogeneous of degree d.
inline WedgeChain beta(const Chain& c, int d) {
  for (const auto& [key, coeff] : c)
    if (key.shape->degree() != d) throw std::invalid_argument("beta: chain is not homogeneous of degree d");
  return alpha(exp_neg_T(c), d);
}

/// Keeps the graphs whose hairs are all labelled by p symbols of V.
inline Chain project_plus(const Chain& c) {
  Chain out;
  for (const auto& [key, coeff] : c) {
    bool keep = true;
    for (const auto& h : key.shape->skeleton().hairs)
      if (!h.label.is_p() || h.label.primed()) keep = false;
    if (keep) out.emplace(key, coeff);
  }
  return out;
}

/// Sends p'_i, q'_i to p_{n+i}, q_{n+i}. Throws std::out_of_range if n + i exceeds n_max.
inline WedgeChain relabel_stabilizer(const WedgeChain& x, int n, int n_max) {
  WedgeChain out;
  for (const auto& [w, coeff] : x) {
    std::vector<LieElement> factors;
    for (const auto& s : w) {
      auto labels = s.labels;
      for (auto& l : labels) {
        if (!l.primed()) continue;
        const int j = n + l.index();
        if (j > n_max) throw std::out_of_range("relabel_stabilizer: symplectic indices exhausted");
        l = l.is_p() ? Symbol::p(j) : Symbol::q(j);
      }
      factors.push_back(canonicalize(BasicSpider(s.op, labels)));
    }
    add_scaled(out, wedge(factors), coeff);
  }
  return out;
}

/// Trace of a single Lie spider restricted to graphs of rank one.
inline Chain morita_projection(const BasicSpider& s) {
  if (s.kind() != OperadKind::Lie) throw std::invalid_argument("morita_projection: Lie spiders only");
  Chain out;
  for (const auto& [key, coeff] : trace(Wedge{s}))
    if (key.shape->rank() == 1) out.emplace(key, coeff);
  return out;
}

}  // namespace hairy
