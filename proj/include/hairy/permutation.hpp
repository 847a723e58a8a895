#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace hairy {

/// A permutation of {0..m-1}; entry i is the image of i.
using Permutation = std::vector<int>;

inline Permutation identity_permutation(int m) {
  Permutation p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_permutation(std::span<const int> p) {
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

/// (a ∘ b)(i) = a(b(i)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
  return out;
}

inline Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return out;
}

inline int sign(std::span<const int> p) {
  std::vector<bool> seen(p.size(), false);
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

/// Lexicographic rank of a permutation of {0..n-1} (Lehmer code).
inline std::uint64_t rank_permutation(std::span<const int> p) {
  const int n = static_cast<int>(p.size());
  std::uint64_t rank = 0;
  std::uint32_t used = 0;
  for (int i = 0; i < n; ++i) {
    const int below = std::popcount(used & ((1u << p[static_cast<std::size_t>(i)]) - 1u));
    rank = rank * static_cast<std::uint64_t>(n - i) +
           static_cast<std::uint64_t>(p[static_cast<std::size_t>(i)] - below);
    used |= 1u << p[static_cast<std::size_t>(i)];
  }
  return rank;
}

inline void unrank_permutation(std::uint64_t rank, std::span<int> out) {
  const int n = static_cast<int>(out.size());
  std::vector<int> digits(out.size());
  for (int i = n - 1; i >= 0; --i) {
    const auto base = static_cast<std::uint64_t>(n - i);
    digits[static_cast<std::size_t>(i)] = static_cast<int>(rank % base);
    rank /= base;
  }
  std::uint32_t used = 0;
  for (int i = 0; i < n; ++i) {
    int d = digits[static_cast<std::size_t>(i)];
    int v = 0;
    for (;; ++v) {
      if (used & (1u << v)) continue;
      if (d == 0) break;
      --d;
    }
    out[static_cast<std::size_t>(i)] = v;
    used |= 1u << v;
  }
}

}  // namespace hairy
