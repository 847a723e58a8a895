#pragma once

// Basis symbols of V = span(p_1..p_n, q_1..q_n) and of the stabilizing space W
// (primed symbols p'_i, q'_i), together with the symplectic pairing.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hairy {

class Symbol {
 public:
  constexpr Symbol() = default;

  static constexpr Symbol p(int i, bool primed = false) { return make(i, false, primed); }
  static constexpr Symbol q(int i, bool primed = false) { return make(i, true, primed); }

  constexpr int index() const { return (code_ >> 1) & 0x3FFF; }
  constexpr bool is_q() const { return code_ & 1u; }
  constexpr bool is_p() const { return !is_q(); }
  constexpr bool primed() const { return code_ >> 15; }
  constexpr std::uint16_t code() const { return code_; }
  constexpr Symbol dual() const { return Symbol(static_cast<std::uint16_t>(code_ ^ 1u)); }
  static constexpr Symbol from_code(std::uint16_t c) { return Symbol(c); }

  auto operator<=>(const Symbol&) const = default;

  std::string str() const {
    std::string s(1, is_q() ? 'q' : 'p');
    if (primed()) s += '\'';
    return s + std::to_string(index());
  }

  static Symbol parse(std::string_view text) {
    if (text.size() < 2 || (text[0] != 'p' && text[0] != 'q')) throw std::invalid_argument("bad symbol: " + std::string(text));
    const bool q = text[0] == 'q';
    std::size_t pos = 1;
    bool primed = false;
    if (text[pos] == '\'') {
      primed = true;
      ++pos;
    }
    if (pos >= text.size()) throw std::invalid_argument("bad symbol: " + std::string(text));
    int i = 0;
    for (; pos < text.size(); ++pos) {
      if (text[pos] < '0' || text[pos] > '9') throw std::invalid_argument("bad symbol: " + std::string(text));
      i = i * 10 + (text[pos] - '0');
      if (i > 0x3FFF) throw std::invalid_argument("symbol index too large");
    }
    return make(i, q, primed);
  }

 private:
  constexpr explicit Symbol(std::uint16_t c) : code_(c) {}
  static constexpr Symbol make(int i, bool q, bool primed) {
    if (i < 1 || i > 0x3FFF) throw std::out_of_range("symbol index out of range");
    return Symbol(static_cast<std::uint16_t>((primed ? 0x8000u : 0u) | (static_cast<unsigned>(i) << 1) | (q ? 1u : 0u)));
  }
  std::uint16_t code_ = 0;
};

/// omega(p_i, q_i) = 1 = -omega(q_i, p_i); everything else pairs to zero.
constexpr int omega(Symbol a, Symbol b) {
  if ((a.code() ^ b.code()) != 1u) return 0;
  return a.is_p() ? 1 : -1;
}

struct SymplecticSpace {
  int n = 1;

  int dimension() const { return 2 * n; }
  std::vector<Symbol> basis() const {
    std::vector<Symbol> out;
    for (int i = 1; i <= n; ++i) {
      out.push_back(Symbol::p(i));
      out.push_back(Symbol::q(i));
    }
    return out;
  }
  bool contains(Symbol s) const { return !s.primed() && s.index() <= n; }
};

}  // namespace hairy
