#pragma once

// Exhaustive identity suites over small slices. Each suite walks its inputs in order of
// increasing degree and stops at the first failure, so the recorded counterexample is a
// smallest one in that order.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hairy/enumerate.hpp"
#include "hairy/lie_lemmas.hpp"
#include "hairy/trace.hpp"

namespace hairy {

struct CheckReport {
  explicit CheckReport(std::string name = {}) : name(std::move(name)) {}

  std::string name;
  std::size_t verified = 0;
  std::size_t nontrivial = 0;  // identities whose two sides were nonzero
  std::size_t matchings = 0;
  std::optional<std::string> counterexample;

  bool ok() const { return !counterexample.has_value(); }
  void fail(std::string what) {
    if (!counterexample) counterexample = std::move(what);
  }
};

/// Test hook: deliberately corrupts the trace so that the suites can be seen to fail.
struct FaultInjection {
  bool flip_trace_sign = false;  // negates Tr on wedges of two or more factors
};

inline constexpr OperadKind kAllKinds[] = {OperadKind::Com, OperadKind::Assoc, OperadKind::Lie};

/// Wedges of 1..max_factors distinct basic spiders and degree <= max_degree, by degree.
inline std::vector<Wedge> wedges_up_to(OperadKind kind, int n, int max_factors, int max_degree) {
  std::vector<Wedge> out;
  for (int d = 1; d <= max_degree; ++d)
    for (int k = 1; k <= std::min(d, max_factors); ++k) {
      auto b = wedge_basis(kind, k, d, SymplecticSpace{n});
      out.insert(out.end(), b.begin(), b.end());
    }
  return out;
}

/// Calls f on every graded slice of the given kind with degree <= max_degree and rank <=
/// max_rank, in increasing (d, k, r, h).
inline void for_each_slice(OperadKind kind, int n, int max_degree, int max_rank, const std::function<void(const SliceKey&)>& f) {
  for (int d = 1; d <= max_degree; ++d)
    for (int k = 1; k <= d; ++k)
      for (int r = 0; r <= max_rank; ++r)
        for (int h = 0; h <= 3 * d; ++h) {
          const SliceKey key{kind, n, k, d, r, h};
          if (key.components() < 0) continue;
          f(key);
        }
}

inline CheckReport check_boundary_squared(OperadKind kind, int n, int max_degree, int max_rank, bool connected_only) {
  CheckReport rep{"boundary squared " + std::string(to_string(kind)) + " n=" + std::to_string(n)};
  for_each_slice(kind, n, max_degree, max_rank, [&](const SliceKey& key) {
    if (!rep.ok() || key.k < 3) return;
    for (const auto& g : enumerate_basis(key, connected_only)) {
      const auto b = boundary(g);
      if (!boundary(b).empty()) return rep.fail(key.str() + ": " + to_string(g));
      ++rep.verified;
      rep.nontrivial += !b.empty();
    }
  });
  return rep;
}

inline CheckReport check_ce_squared(OperadKind kind, int n, int max_factors, int max_degree) {
  CheckReport rep{"CE boundary squared " + std::string(to_string(kind)) + " n=" + std::to_string(n)};
  for (const auto& w : wedges_up_to(kind, n, max_factors, max_degree)) {
    const auto b = ce_boundary(w);
    if (!ce_boundary(b).empty()) {
      rep.fail(to_string(w));
      break;
    }
    ++rep.verified;
    rep.nontrivial += !b.empty();
  }
  return rep;
}

inline Chain checked_trace(const WedgeChain& c, const FaultInjection& fault, TraceStats* stats) {
  Chain out;
  for (const auto& [w, x] : c) {
    const Rational s = fault.flip_trace_sign && w.size() >= 2 ? -x : x;
    add_scaled(out, trace(w, stats), s);
  }
  return out;
}

/// boundary(Tr(w)) == Tr(ce_boundary(w)).
inline CheckReport check_chain_map(OperadKind kind, int n, int max_factors, int max_degree, const FaultInjection& fault = {}) {
  CheckReport rep{"trace chain map " + std::string(to_string(kind)) + " n=" + std::to_string(n)};
  TraceStats stats;
  for (const auto& w : wedges_up_to(kind, n, max_factors, max_degree)) {
    const auto lhs = boundary(checked_trace(WedgeChain{{w, 1}}, fault, &stats));
    const auto rhs = checked_trace(ce_boundary(w), fault, &stats);
    if (lhs != rhs) {
      rep.fail(to_string(w));
      break;
    }
    ++rep.verified;
    rep.nontrivial += !lhs.empty();
  }
  rep.matchings = stats.matchings;
  return rep;
}

/// beta(Tr(w)) == w for wedges of degree <= max_degree.
inline CheckReport check_beta_inverts_trace(OperadKind kind, int n, int max_degree, const FaultInjection& fault = {}) {
  CheckReport rep{"beta after trace " + std::string(to_string(kind)) + " n=" + std::to_string(n)};
  TraceStats stats;
  for (const auto& w : wedges_up_to(kind, n, max_degree, max_degree)) {
    const WedgeChain x{{w, 1}};
    if (beta(checked_trace(x, fault, &stats), degree(w)) != x) {
      rep.fail(to_string(w));
      break;
    }
    ++rep.verified;
  }
  rep.matchings = stats.matchings;
  return rep;
}

/// ce_boundary(beta(c)) == beta(boundary(c)) on random chains drawn from every slice
/// of degree <= max_degree.
inline CheckReport check_beta_chain_map(OperadKind kind, int n, int max_degree, unsigned seed, int samples = 3) {
  CheckReport rep{"beta chain map " + std::string(to_string(kind)) + " n=" + std::to_string(n)};
  std::mt19937 rng(seed);
  for_each_slice(kind, n, max_degree, max_degree + 1, [&](const SliceKey& key) {
    if (!rep.ok()) return;
    const auto basis = enumerate_basis(key, false);
    if (basis.empty()) return;
    for (int s = 0; s < samples; ++s) {
      Chain c;
      for (int t = 0; t < 3; ++t) add_term(c, basis[rng() % basis.size()], static_cast<long>(rng() % 5) - 2);
      const auto lhs = ce_boundary(beta(c, key.d));
      if (lhs != beta(boundary(c), key.d)) return rep.fail(key.str() + ": " + (c.empty() ? std::string("0") : to_string(c.begin()->first)));
      ++rep.verified;
      rep.nontrivial += !lhs.empty();
    }
  });
  return rep;
}

/// For every cycle z with all hairs labelled p1 (a kernel basis of each all-p block),
/// the unprimed-p part of Tr(relabel(beta(z))) is z again.
inline CheckReport check_surjectivity(OperadKind kind, int max_degree, const FaultInjection& fault = {}) {
  CheckReport rep{"surjectivity round trip " + std::string(to_string(kind))};
  TraceStats stats;
  for (int d = 1; d <= max_degree && rep.ok(); ++d)
    for (int k = 1; k <= d && rep.ok(); ++k)
      for (int r = 0; r <= d + 1 && rep.ok(); ++r)
        for (int h = 0; h <= 3 * d && rep.ok(); ++h) {
          const SliceKey key{kind, 1, k, d, r, h};
          if (key.components() < 0) continue;
          const LabelContent content{h, 0};
          const auto basis = enumerate_basis(key, false, &content);
          if (basis.empty()) continue;
          SliceKey lower = key;
          --lower.k;
          const auto below = k > 1 ? enumerate_basis(lower, false, &content) : std::vector<GraphKey>{};
          for (const auto& v : kernel_basis(boundary_matrix(basis, below))) {
            Chain z;
            for (const auto& [i, c] : v) add_term(z, basis[i], c);
            const auto lifted = relabel_stabilizer(beta(z, d), 1, 1 + stabilizer_size(d));
            if (project_plus(checked_trace(lifted, fault, &stats)) != z) {
              rep.fail(key.str() + ": " + to_string(z.begin()->first));
              break;
            }
            ++rep.verified;
          }
        }
  rep.matchings = stats.matchings;
  return rep;
}

/// Separated graphs and adjacent hair swaps in single-vertex Lie slices lie in the image
/// of the boundary.
inline CheckReport check_lie_lemmas(int n, int max_degree) {
  CheckReport rep{"Lie image lemmas n=" + std::to_string(n)};
  for (int d = 1; d <= max_degree && rep.ok(); ++d)
    for (int r = 0; 2 * r <= d + 2 && rep.ok(); ++r) {
      const int h = d - 2 * r + 2;
      const SliceKey key{OperadKind::Lie, n, 1, d, r, h};
      for (const auto& [content, mult] : content_orbits(n, h)) {
        const BoundaryImage image(key, content);
        for (const auto* family : {"separated", "swap"}) {
          const auto chains = std::string(family) == "separated" ? separated_graphs(key, content) : hair_swap_differences(key, content);
          for (const auto& c : chains) {
            if (!image.contains(c)) {
              rep.fail(key.str() + " " + family + ": " + to_string(c.begin()->first));
              return rep;
            }
            ++rep.verified;
          }
        }
      }
    }
  return rep;
}

}  // namespace hairy
