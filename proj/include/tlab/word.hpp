#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "checked.hpp"

namespace tlab {

// One syllable X_sub^exp of a word over X_0, X_1, X_2, ...
struct Syllable {
  Int sub = 0;
  Int exp = 1;
  auto operator<=>(const Syllable&) const = default;
};

// Words are kept as syllable sequences. A reduced word has no zero exponent
// and no two adjacent syllables with the same subscript.
using Word = std::vector<Syllable>;

struct Letter {
  Int sub = 0;
  int sign = 1;
  auto operator<=>(const Letter&) const = default;
};

using LetterString = std::vector<Letter>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Appends a syllable, merging with and cancelling against the tail.
inline void push_syllable(Word& w, Syllable s) {
  if (s.exp == 0) return;
  if (!w.empty() && w.back().sub == s.sub) {
    Int e = add(w.back().exp, s.exp);
    if (e == 0)
      w.pop_back();
    else
      w.back().exp = e;
    return;
  }
  w.push_back(s);
}

inline Word reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const auto& s : w) push_syllable(out, s);
  return out;
}

inline bool is_reduced(const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].exp == 0 || w[i].sub < 0) return false;
    if (i > 0 && w[i].sub == w[i - 1].sub) return false;
  }
  return true;
}

inline Word concat(const Word& u, const Word& v) {
  Word out = u;
  for (const auto& s : v) push_syllable(out, s);
  return out;
}

inline Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->sub, neg(it->exp)});
  return out;
}

inline Word power(const Word& w, Int k) {
  if (k == 0 || w.empty()) return {};
  if (w.size() == 1) return {{w[0].sub, mul(w[0].exp, k)}};
  Word base = k > 0 ? w : inverse(w);
  Int n = k > 0 ? k : neg(k);
  Word out;
  for (Int i = 0; i < n; ++i) out = concat(out, base);
  return out;
}

inline Int min_subscript(const Word& w) {
  if (w.empty()) throw std::invalid_argument("min_subscript of the empty word");
  Int m = w[0].sub;
  for (const auto& s : w) m = std::min(m, s.sub);
  return m;
}

inline Int max_subscript(const Word& w) {
  if (w.empty()) throw std::invalid_argument("max_subscript of the empty word");
  Int m = w[0].sub;
  for (const auto& s : w) m = std::max(m, s.sub);
  return m;
}

// S^i: adds i to every subscript. Throws if a subscript would become negative.
inline Word shift(const Word& w, Int i) {
  Word out = w;
  for (auto& s : out) {
    s.sub = add(s.sub, i);
    if (s.sub < 0) throw std::domain_error("shift moves a subscript below 0");
  }
  return out;
}

inline LetterString letters(const Word& w) {
  LetterString out;
  for (const auto& s : w) {
    int sign = s.exp > 0 ? 1 : -1;
    for (Int k = 0; k < iabs(s.exp); ++k) out.push_back({s.sub, sign});
  }
  return out;
}

inline Word from_letters(const LetterString& ls) {
  Word out;
  for (const auto& l : ls) push_syllable(out, {l.sub, l.sign});
  return out;
}

// Grammar: term* with term := gen ("^" int)?, gen := "x" nat | a | b | A | B.
// A and B stand for x0^-1 and x1^-1; an explicit exponent applies to that
// inverse, so "A^2" is x0^-2. A lone "1" denotes the empty word.
inline Word parse_word(std::string_view text) {
  Word out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_nat = [&](const char* what) -> Int {
    std::size_t start = i;
    Int v = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = add(mul(v, 10), text[i] - '0');
      ++i;
    }
    if (i == start) throw ParseError(std::string("expected ") + what, start);
    return v;
  };
  skip_ws();
  while (i < n) {
    std::size_t start = i;
    char c = text[i];
    Int sub = 0;
    int sign = 1;
    if (c == '1' && (i + 1 == n || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
      skip_ws();
      continue;
    }
    if (c == 'x') {
      ++i;
      if (i < n && text[i] == '-') throw ParseError("negative subscript", i);
      sub = read_nat("subscript");
    } else if (c == 'a' || c == 'b' || c == 'A' || c == 'B') {
      sub = (c == 'a' || c == 'A') ? 0 : 1;
      sign = (c == 'A' || c == 'B') ? -1 : 1;
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    Int e = 1;
    if (i < n && text[i] == '^') {
      ++i;
      bool negative = false;
      if (i < n && text[i] == '-') {
        negative = true;
        ++i;
      }
      e = read_nat("exponent");
      if (negative) e = neg(e);
    }
    push_syllable(out, {sub, sign > 0 ? e : neg(e)});
    skip_ws();
  }
  return out;
}

// Lowercase rendering, "^" only for exponents other than 1. The empty word
// renders as "1".
inline std::string render(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << 'x' << w[i].sub;
    if (w[i].exp != 1) os << '^' << w[i].exp;
  }
  return os.str();
}

// Sum of |exponent| over the syllables.
inline Int total_exponent(const Word& w) {
  Int t = 0;
  for (const auto& s : w) t = add(t, iabs(s.exp));
  return t;
}

}  // namespace tlab
