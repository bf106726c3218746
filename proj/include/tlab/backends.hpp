#pragma once

// Group backends sharing one static interface:
//   Element, key, identity(), eta(), xi(), generator(n), mul, inv,
//   is_identity, abelian (eta coordinate, xi coordinate), render, parse,
//   has_height and, when true, height.
// Non-F backends only know X_0 = eta and X_1 = xi.

#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "checked.hpp"
#include "thompson.hpp"
#include "word.hpp"

namespace tlab {

using Pair = std::pair<Int, Int>;

inline void require_two_generators(Int n) {
  if (n < 0 || n > 1) throw std::domain_error("backend cannot evaluate subscripts >= 2");
}

struct FGroup {
  using Element = Tnf;
  static constexpr const char* key = "f";
  static constexpr bool has_height = true;

  static Element identity() { return {}; }
  static Element generator(Int n) { return Tnf{{{n, 1}}, {}}; }
  static Element eta() { return generator(0); }
  static Element xi() { return generator(1); }
  static Element mul(const Element& x, const Element& y) { return multiply(x, y); }
  static Element inv(const Element& x) { return invert(x); }
  static bool is_identity(const Element& x) { return x.is_identity(); }
  static Pair abelian(const Element& x) {
    AbelianImage im = abelian_color(x);
    return {im.a, im.b};
  }
  static Int height(const Element& x) { return tlab::height(x); }
  static std::string render(const Element& x) { return tlab::render(x); }
  static Element parse(std::string_view text) { return normalize(parse_word(text)); }
  // Syllable powers normalize directly, which keeps large exponents cheap.
  static Element power(const Element& x, Int k);
};

// Z^2 with xi = (1,0) and eta = (0,1).
struct Z2Group {
  struct Element {
    Int i = 0;  // xi coordinate
    Int j = 0;  // eta coordinate
    auto operator<=>(const Element&) const = default;
  };
  static constexpr const char* key = "z2";
  static constexpr bool has_height = true;

  static Element identity() { return {}; }
  static Element generator(Int n) {
    require_two_generators(n);
    return n == 0 ? Element{0, 1} : Element{1, 0};
  }
  static Element eta() { return {0, 1}; }
  static Element xi() { return {1, 0}; }
  static Element mul(const Element& x, const Element& y) { return {add(x.i, y.i), add(x.j, y.j)}; }
  static Element inv(const Element& x) { return {neg(x.i), neg(x.j)}; }
  static bool is_identity(const Element& x) { return x.i == 0 && x.j == 0; }
  static Pair abelian(const Element& x) { return {x.j, x.i}; }
  static Int height(const Element& x) { return add(iabs(x.i), iabs(x.j)); }
  static std::string render(const Element& x) { return tlab::render(reduce(Word{{0, x.j}, {1, x.i}})); }
  static Element parse(std::string_view text);
};

// Z wr Z: eta lights the lamp under the cursor, xi moves the cursor.
// (f, t)(g, s) = (f + g(. - t), t + s).
struct WreathGroup {
  struct Element {
    std::map<Int, Int> lamp;  // no zero values stored
    Int shift = 0;
    auto operator<=>(const Element&) const = default;
  };
  static constexpr const char* key = "wreath";
  static constexpr bool has_height = true;

  static Element identity() { return {}; }
  static Element generator(Int n) {
    require_two_generators(n);
    return n == 0 ? eta() : xi();
  }
  static Element eta() { return {{{0, 1}}, 0}; }
  static Element xi() { return {{}, 1}; }
  static Element mul(const Element& x, const Element& y) {
    Element out = x;
    for (const auto& [pos, v] : y.lamp) {
      Int p = add(pos, x.shift);
      Int nv = add(out.lamp[p], v);
      if (nv == 0)
        out.lamp.erase(p);
      else
        out.lamp[p] = nv;
    }
    out.shift = add(x.shift, y.shift);
    return out;
  }
  static Element inv(const Element& x) {
    Element out;
    out.shift = neg(x.shift);
    for (const auto& [pos, v] : x.lamp) out.lamp[sub(pos, x.shift)] = neg(v);
    return out;
  }
  static bool is_identity(const Element& x) { return x.lamp.empty() && x.shift == 0; }
  static Pair abelian(const Element& x) {
    Int s = 0;
    for (const auto& kv : x.lamp) s = add(s, kv.second);
    return {s, x.shift};
  }
  // Total lamp mass plus cursor displacement.
  static Int height(const Element& x) {
    Int h = iabs(x.shift);
    for (const auto& kv : x.lamp) h = add(h, iabs(kv.second));
    return h;
  }
  // Canonical word: xi^p eta^c xi^-p for each lit position, then xi^shift.
  static std::string render(const Element& x) {
    Word w;
    for (const auto& [pos, v] : x.lamp) {
      push_syllable(w, {1, pos});
      push_syllable(w, {0, v});
      push_syllable(w, {1, neg(pos)});
    }
    push_syllable(w, {1, x.shift});
    return tlab::render(w);
  }
  static Element parse(std::string_view text);
};

// Laurent polynomials in commuting s (image of eta) and t (image of xi).
class Laurent {
 public:
  Laurent() = default;
  static Laurent monomial(Int i, Int j, Int c = 1) {
    Laurent p;
    p.addto({i, j}, c);
    return p;
  }
  const std::map<Pair, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  auto operator<=>(const Laurent&) const = default;

  friend Laurent operator+(Laurent x, const Laurent& y) {
    for (const auto& [k, c] : y.terms_) x.addto(k, c);
    return x;
  }
  friend Laurent operator-(Laurent x, const Laurent& y) {
    for (const auto& [k, c] : y.terms_) x.addto(k, neg(c));
    return x;
  }
  friend Laurent operator*(const Laurent& x, const Laurent& y) {
    Laurent out;
    for (const auto& [a, c] : x.terms_)
      for (const auto& [b, d] : y.terms_) out.addto({add(a.first, b.first), add(a.second, b.second)}, mul(c, d));
    return out;
  }
  Laurent times_monomial(Int i, Int j) const {
    Laurent out;
    for (const auto& [k, c] : terms_) out.terms_[{add(k.first, i), add(k.second, j)}] = c;
    return out;
  }
  // "c*s^i*t^j" terms joined by " + ", or "0".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c << "*s^" << k.first << "*t^" << k.second;
    }
    return os.str();
  }

 private:
  void addto(Pair k, Int c) {
    if (c == 0) return;
    Int v = add(terms_[k], c);
    if (v == 0)
      terms_.erase(k);
    else
      terms_[k] = v;
  }
  std::map<Pair, Int> terms_;
};

// Free metabelian group on eta = a, xi = b through the Magnus embedding:
// an element is its abelian image together with both abelianized Fox
// derivatives. d(uv) = du + u^ab dv.
struct MetabelianGroup {
  struct Element {
    Int alpha = 0;  // exponent sum of a
    Int beta = 0;   // exponent sum of b
    Laurent da, db;
    auto operator<=>(const Element&) const = default;
  };
  static constexpr const char* key = "metab";
  static constexpr bool has_height = false;

  static Element identity() { return {}; }
  static Element generator(Int n) {
    require_two_generators(n);
    return n == 0 ? eta() : xi();
  }
  static Element eta() { return {1, 0, Laurent::monomial(0, 0), {}}; }
  static Element xi() { return {0, 1, {}, Laurent::monomial(0, 0)}; }
  static Element mul(const Element& x, const Element& y) {
    return {add(x.alpha, y.alpha), add(x.beta, y.beta), x.da + y.da.times_monomial(x.alpha, x.beta),
            x.db + y.db.times_monomial(x.alpha, x.beta)};
  }
  static Element inv(const Element& x) {
    Int a = neg(x.alpha), b = neg(x.beta);
    return {a, b, Laurent() - x.da.times_monomial(a, b), Laurent() - x.db.times_monomial(a, b)};
  }
  static bool is_identity(const Element& x) {
    return x.alpha == 0 && x.beta == 0 && x.da.is_zero() && x.db.is_zero();
  }
  static Pair abelian(const Element& x) { return {x.alpha, x.beta}; }
  // da (s - 1) + db (t - 1) == s^alpha t^beta - 1.
  static bool fox_identity_holds(const Element& x) {
    Laurent one = Laurent::monomial(0, 0);
    Laurent lhs = x.da * (Laurent::monomial(1, 0) - one) + x.db * (Laurent::monomial(0, 1) - one);
    return lhs == Laurent::monomial(x.alpha, x.beta) - one;
  }
  static std::string render(const Element& x) {
    return "ab(" + std::to_string(x.alpha) + "," + std::to_string(x.beta) + ") da[" + x.da.str() + "] db[" +
           x.db.str() + "]";
  }
  static Element parse(std::string_view text);
};

template <class G>
typename G::Element power(const typename G::Element& x, Int k) {
  typename G::Element base = k < 0 ? G::inv(x) : x;
  Int n = iabs(k);
  typename G::Element out = G::identity();
  while (n > 0) {
    if (n & 1) out = G::mul(out, base);
    n >>= 1;
    if (n > 0) base = G::mul(base, base);
  }
  return out;
}

inline FGroup::Element FGroup::power(const Element& x, Int k) {
  if (x.positive.size() + x.negative.size() == 1) return normalize(tlab::power(to_word(x), k));
  return tlab::power<FGroup>(x, k);
}

// Power helper that uses a backend's fast path when it has one.
template <class G>
typename G::Element gpow(const typename G::Element& x, Int k) {
  if constexpr (std::is_same_v<G, FGroup>)
    return FGroup::power(x, k);
  else
    return power<G>(x, k);
}

template <class G>
typename G::Element evaluate(const Word& w) {
  if constexpr (std::is_same_v<G, FGroup>) {
    return normalize(w);
  } else {
    typename G::Element out = G::identity();
    for (const auto& s : w) out = G::mul(out, gpow<G>(G::generator(s.sub), s.exp));
    return out;
  }
}

template <class G>
typename G::Element evaluate(const LetterString& ls) {
  return evaluate<G>(from_letters(ls));
}

// eta^d1 xi^e1 ... eta^dn xi^en.
template <class G>
typename G::Element alternating(const std::vector<Int>& deltas, const std::vector<Int>& epsilons) {
  if (deltas.size() != epsilons.size()) throw std::invalid_argument("deltas and epsilons differ in length");
  typename G::Element out = G::identity();
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    out = G::mul(out, gpow<G>(G::eta(), deltas[k]));
    out = G::mul(out, gpow<G>(G::xi(), epsilons[k]));
  }
  return out;
}

// Membership in H = <eta> and H' = <xi>. Since the abelian images of eta and
// xi are independent, x lies in <eta> iff x equals eta raised to its eta
// coordinate and the xi coordinate vanishes. On F this is the syntactic test
// TNF(x) = X_0^k because powers of a generator are already normal.
template <class G>
bool in_H(const typename G::Element& x) {
  Pair ab = G::abelian(x);
  return ab.second == 0 && x == gpow<G>(G::eta(), ab.first);
}

template <class G>
bool in_Hprime(const typename G::Element& x) {
  Pair ab = G::abelian(x);
  return ab.first == 0 && x == gpow<G>(G::xi(), ab.second);
}

template <class G>
Color element_color(const typename G::Element& x) {
  Pair ab = G::abelian(x);
  return color_of(ab.first, ab.second);
}

inline Z2Group::Element Z2Group::parse(std::string_view text) { return evaluate<Z2Group>(parse_word(text)); }
inline WreathGroup::Element WreathGroup::parse(std::string_view text) {
  return evaluate<WreathGroup>(parse_word(text));
}
// Metabelian elements are entered as words; the rendered form is a report
// only and is accepted back through metab_parse_rendered.
inline MetabelianGroup::Element MetabelianGroup::parse(std::string_view text) {
  return evaluate<MetabelianGroup>(parse_word(text));
}

namespace detail {

inline Laurent parse_laurent(const std::string& text) {
  Laurent p;
  if (text == "0") return p;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, '+')) {
    long long c = 0, i = 0, j = 0;
    if (std::sscanf(tok.c_str(), " %lld*s^%lld*t^%lld", &c, &i, &j) != 3)
      throw ParseError("malformed Laurent term '" + tok + "'", 0);
    p = p + Laurent::monomial(i, j, c);
  }
  return p;
}

}  // namespace detail

inline MetabelianGroup::Element metab_parse_rendered(const std::string& text) {
  long long a = 0, b = 0;
  auto l1 = text.find("da["), r1 = text.find(']', l1), l2 = text.find("db[", r1), r2 = text.rfind(']');
  if (std::sscanf(text.c_str(), "ab(%lld,%lld)", &a, &b) != 2 || l1 == std::string::npos || r1 == std::string::npos ||
      l2 == std::string::npos || r2 == std::string::npos || r2 <= l2)
    throw ParseError("malformed metabelian element", 0);
  return {a, b, detail::parse_laurent(text.substr(l1 + 3, r1 - l1 - 3)),
          detail::parse_laurent(text.substr(l2 + 3, r2 - l2 - 3))};
}

// Triviality in the free metabelian group G(2,2).
inline bool metabelian_is_trivial(const Word& w) { return MetabelianGroup::is_identity(evaluate<MetabelianGroup>(w)); }

inline WreathGroup::Element wreath_reduce(const Word& w) { return evaluate<WreathGroup>(w); }

}  // namespace tlab
