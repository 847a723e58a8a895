// A short tour: spiders and their bracket, a hairy graph and its boundary, the trace of a
// wedge and its inverse, and a few homology dimensions next to their closed forms.

#include <iostream>

#include "hairy/closed_forms.hpp"
#include "hairy/enumerate.hpp"
#include "hairy/serialize.hpp"
#include "hairy/trace.hpp"

using namespace hairy;

int main() {
  const Symbol p1 = Symbol::p(1), q1 = Symbol::q(1), p2 = Symbol::p(2), q2 = Symbol::q(2);

  // Two Lie tripods and their bracket: contract one leg of each along omega.
  const BasicSpider a({OperadKind::Lie, 3, 0}, {p1, p2, q1});
  const BasicSpider b({OperadKind::Lie, 3, 0}, {q2, p1, q1});
  std::cout << "[a, b] =";
  for (const auto& [s, c] : bracket(a, b)) std::cout << ' ' << to_string(c) << '*' << s.str();
  std::cout << "\n\n";

  // The trace sends a wedge of spiders to a sum of graphs by gluing matched hairs.
  const Wedge w{a, b};
  TraceStats stats;
  const Chain t = trace(w, &stats);
  std::cout << "Tr(a ^ b): " << t.size() << " graphs from " << stats.matchings << " matchings\n";
  for (const auto& [g, c] : t) std::cout << "  " << to_string(c) << " * " << to_string(g) << '\n';
  std::cout << "boundary(Tr) == Tr(boundary): " << (boundary(t) == trace(ce_boundary(w)) ? "yes" : "no") << '\n';
  std::cout << "beta(Tr(a ^ b)) == a ^ b: " << (beta(t, degree(w)) == wedge(w) ? "yes" : "no") << "\n\n";

  // One graph as JSON.
  if (!t.empty()) std::cout << to_json(t.begin()->first.graph()).dump() << "\n\n";

  // First homology of one-loop Lie graphs is S^h V for odd h.
  std::cout << "Lie, one loop, dim V = 2\n  h  betti  expected\n";
  for (int h = 1; h <= 5; ++h)
    std::cout << "  " << h << "  " << h1_betti(OperadKind::Lie, 1, h, 1, h) << "      " << expected_h1(OperadKind::Lie, 2, h, 1) << '\n';

  // Two loops: graph homology, the polynomial model and the modular-forms count agree.
  std::cout << "\nLie, two loops, dim V = 2\n  h  graph  polynomial  closed\n";
  for (int h = 0; h <= 4; h += 2)
    std::cout << "  " << h << "  " << h1_betti(OperadKind::Lie, 1, h + 2, 2, h) << "      " << rank2_poly_dim(1, h) << "           "
              << h12_dim_closed(2, h) << '\n';
}
