#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hairy {

using Rational = mpq_class;
using Integer = mpz_class;

/// Sparse linear combination keyed by basis element. Zero coefficients are never stored.
template <class Key, class Compare = std::less<Key>>
using Combination = std::map<Key, Rational, Compare>;

template <class Key, class Compare>
void add_term(Combination<Key, Compare>& c, const Key& key, const Rational& coeff) {
  if (sgn(coeff) == 0) return;
  auto [it, inserted] = c.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (sgn(it->second) == 0) c.erase(it);
  }
}

template <class Key, class Compare>
void add_scaled(Combination<Key, Compare>& into, const Combination<Key, Compare>& from,
                const Rational& scale) {
  if (sgn(scale) == 0) return;
  for (const auto& [key, coeff] : from) add_term(into, key, coeff * scale);
}

template <class Key, class Compare>
Combination<Key, Compare> scaled(const Combination<Key, Compare>& c, const Rational& scale) {
  Combination<Key, Compare> out;
  add_scaled(out, c, scale);
  return out;
}

/// Integer-valued sparse vector over operad basis indices, sorted by index.
using IntTerms = std::vector<std::pair<std::uint32_t, std::int64_t>>;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const std::string& text) {
  Rational q(text, 10);
  q.canonicalize();
  return q;
}

}  // namespace hairy
