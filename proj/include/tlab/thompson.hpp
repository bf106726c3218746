#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

#include "checked.hpp"
#include "word.hpp"

namespace tlab {

// W = X_m^pos * core * X_m^neg in F, where every subscript of core exceeds m.
struct CoreDecomposition {
  Int m = 0;
  Int pos = 0;
  Int neg = 0;
  Word core;
  bool operator==(const CoreDecomposition&) const = default;
};

// Pulls every X_m syllable (m the least subscript) to the outside. A block of
// letters between X_m syllables is shifted up by the positive X_m exponents
// to its right plus the absolute value of the negative ones to its left.
inline CoreDecomposition core_decompose(const Word& input) {
  Word w = reduce(input);
  if (w.empty()) throw std::invalid_argument("core_decompose of the empty word");
  CoreDecomposition cd;
  cd.m = min_subscript(w);
  for (const auto& s : w)
    if (s.sub == cd.m) (s.exp > 0 ? cd.pos : cd.neg) = add(s.exp > 0 ? cd.pos : cd.neg, s.exp);
  Int pos_right = cd.pos;
  Int neg_left = 0;
  for (const auto& s : w) {
    if (s.sub == cd.m) {
      if (s.exp > 0)
        pos_right = sub(pos_right, s.exp);
      else
        neg_left = add(neg_left, neg(s.exp));
      continue;
    }
    push_syllable(cd.core, {add(s.sub, add(pos_right, neg_left)), s.exp});
  }
  return cd;
}

// One cancellation of X_m against X_m^-1 with the core shifted down by one.
// Only legal while every core subscript is at least m + 2.
inline CoreDecomposition cancel_step(const CoreDecomposition& cd) {
  if (cd.pos <= 0 || cd.neg >= 0) throw std::domain_error("cancel_step needs pos > 0 and neg < 0");
  if (!cd.core.empty() && min_subscript(cd.core) <= add(cd.m, 1))
    throw std::domain_error("cancel_step needs min(core) > m + 1");
  return {cd.m, sub(cd.pos, 1), add(cd.neg, 1), shift(cd.core, -1)};
}

inline Word recompose(const CoreDecomposition& cd) {
  Word w;
  push_syllable(w, {cd.m, cd.pos});
  for (const auto& s : cd.core) push_syllable(w, s);
  push_syllable(w, {cd.m, cd.neg});
  return w;
}

// Core after cancelling X_m against X_m^-1 as often as the core's least
// subscript allows, downshifting the core once per cancellation.
inline CoreDecomposition reduced_core(const Word& w) {
  CoreDecomposition cd = core_decompose(w);
  Int c = std::min(cd.pos, neg(cd.neg));
  if (!cd.core.empty()) c = std::min(c, sub(min_subscript(cd.core), add(cd.m, 1)));
  if (c > 0) cd = {cd.m, sub(cd.pos, c), add(cd.neg, c), shift(cd.core, neg(c))};
  return cd;
}

enum class CoreKind { reduced, literal };

// W_0 = w, W_{i+1} = core of W_i, stopping at a single syllable or the empty
// word. By default each step takes the reduced core.
inline std::vector<Word> core_sequence(const Word& input, CoreKind kind = CoreKind::reduced) {
  Word w = reduce(input);
  if (w.empty()) throw std::invalid_argument("core_sequence of the empty word");
  std::vector<Word> seq{w};
  while (seq.back().size() > 1) {
    Word next = kind == CoreKind::reduced ? reduced_core(seq.back()).core : core_decompose(seq.back()).core;
    seq.push_back(next);
    if (next.empty()) break;
  }
  return seq;
}

// X_{n_0}^{e_0} ... X_{n_k}^{e_k} X_{m_l}^{-f_l} ... X_{m_0}^{-f_0}. Both parts
// are stored with increasing subscripts and positive exponents.
struct Tnf {
  std::vector<Syllable> positive;
  std::vector<Syllable> negative;
  auto operator<=>(const Tnf&) const = default;
  bool is_identity() const { return positive.empty() && negative.empty(); }
};

inline Word to_word(const Tnf& t) {
  Word w = t.positive;
  for (auto it = t.negative.rbegin(); it != t.negative.rend(); ++it) w.push_back({it->sub, neg(it->exp)});
  return w;
}

inline std::string render(const Tnf& t) { return render(to_word(t)); }

inline Int min_subscript(const Tnf& t) {
  Int m = std::numeric_limits<Int>::max();
  if (!t.positive.empty()) m = std::min(m, t.positive.front().sub);
  if (!t.negative.empty()) m = std::min(m, t.negative.front().sub);
  return m;
}

inline Tnf shift(const Tnf& t, Int i) {
  Tnf out = t;
  for (auto* part : {&out.positive, &out.negative})
    for (auto& s : *part) {
      s.sub = add(s.sub, i);
      if (s.sub < 0) throw std::domain_error("shift moves a subscript below 0");
    }
  return out;
}

namespace detail {

inline Tnf normalize_reduced(const Word& w) {
  if (w.empty()) return {};
  CoreDecomposition cd = core_decompose(w);
  Tnf t = normalize_reduced(cd.core);
  Int pos = cd.pos;
  Int negm = neg(cd.neg);
  // X_m T X_m^-1 = S^-1(T) as long as T avoids subscript m + 1.
  Int c = std::min(pos, negm);
  if (!t.is_identity()) c = std::min(c, sub(min_subscript(t), add(cd.m, 1)));
  if (c > 0) {
    t = shift(t, neg(c));
    pos = sub(pos, c);
    negm = sub(negm, c);
  }
  Tnf out;
  if (pos > 0) out.positive.push_back({cd.m, pos});
  out.positive.insert(out.positive.end(), t.positive.begin(), t.positive.end());
  if (negm > 0) out.negative.push_back({cd.m, negm});
  out.negative.insert(out.negative.end(), t.negative.begin(), t.negative.end());
  return out;
}

}  // namespace detail

inline Tnf normalize(const Word& w) { return detail::normalize_reduced(reduce(w)); }

inline Tnf normalize(const LetterString& ls) { return normalize(from_letters(ls)); }

inline Tnf multiply(const Tnf& u, const Tnf& v) { return normalize(concat(to_word(u), to_word(v))); }

inline Tnf invert(const Tnf& u) { return normalize(inverse(to_word(u))); }

inline bool equals(const Word& u, const Word& v) { return normalize(u) == normalize(v); }

inline Int height(const Tnf& t) {
  Int h = 0;
  for (const auto& s : t.positive) h = add(h, s.exp);
  for (const auto& s : t.negative) h = add(h, s.exp);
  return h;
}

// Lists every broken normal-form invariant; empty means valid.
inline std::vector<std::string> tnf_violations(const Tnf& t) {
  std::vector<std::string> v;
  for (const auto* part : {&t.positive, &t.negative}) {
    const char* name = part == &t.positive ? "positive" : "negative";
    for (std::size_t i = 0; i < part->size(); ++i) {
      if ((*part)[i].exp < 1) v.push_back(std::string(name) + " part has exponent < 1");
      if ((*part)[i].sub < 0) v.push_back(std::string(name) + " part has negative subscript");
      if (i > 0 && (*part)[i].sub <= (*part)[i - 1].sub)
        v.push_back(std::string(name) + " part subscripts not strictly increasing");
    }
  }
  auto has = [](const std::vector<Syllable>& p, Int n) {
    return std::any_of(p.begin(), p.end(), [n](const Syllable& s) { return s.sub == n; });
  };
  for (const auto& s : t.positive) {
    if (!has(t.negative, s.sub)) continue;
    if (!has(t.positive, s.sub + 1) && !has(t.negative, s.sub + 1))
      v.push_back("x" + std::to_string(s.sub) + " occurs in both parts without x" + std::to_string(s.sub + 1));
  }
  return v;
}

enum class Color { black, white };

inline const char* color_name(Color c) { return c == Color::black ? "black" : "white"; }

struct AbelianImage {
  Int a = 0;  // total exponent at subscript 0
  Int b = 0;  // total exponent at subscripts >= 1
  Color color = Color::black;
  bool operator==(const AbelianImage&) const = default;
};

inline Color color_of(Int a, Int b) { return is_odd(a) == is_odd(b) ? Color::black : Color::white; }

inline AbelianImage abelian_color(const Word& w) {
  AbelianImage im;
  for (const auto& s : w) (s.sub == 0 ? im.a : im.b) = add(s.sub == 0 ? im.a : im.b, s.exp);
  im.color = color_of(im.a, im.b);
  return im;
}

inline AbelianImage abelian_color(const Tnf& t) { return abelian_color(to_word(t)); }

}  // namespace tlab
