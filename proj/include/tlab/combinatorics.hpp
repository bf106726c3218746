#pragma once

// Colored triples over finite integer sets. Even integers are black and odd
// integers white: a black triple has one even and two odd members, a white
// triple one odd and two even, and the minority member is the central one.

#include <boost/rational.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "checked.hpp"
#include "thompson.hpp"

namespace tlab {

using Rational = boost::rational<Int>;
using Triple = std::array<Int, 3>;

inline bool validate_balanced(const std::vector<Int>& s) {
  std::set<Int> u(s.begin(), s.end());
  if (u.size() != s.size() || u.size() % 12 != 0) return false;
  std::size_t odd = std::count_if(u.begin(), u.end(), [](Int x) { return is_odd(x); });
  return 2 * odd == u.size();
}

inline std::vector<Int> segment(Int lo, Int len) {
  std::vector<Int> s;
  for (Int i = 0; i < len; ++i) s.push_back(add(lo, i));
  return s;
}

struct ColoredTriple {
  Triple elements{};  // sorted
  Color color = Color::black;
  Int central = 0;
  bool operator==(const ColoredTriple&) const = default;
};

inline Color integer_color(Int x) { return is_odd(x) ? Color::white : Color::black; }

inline std::optional<ColoredTriple> triple_color(Triple t) {
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2]) throw std::invalid_argument("triple needs 3 distinct integers");
  int evens = 0;
  for (Int x : t) evens += is_odd(x) ? 0 : 1;
  if (evens == 0 || evens == 3) return std::nullopt;
  ColoredTriple c;
  c.elements = t;
  c.color = evens == 1 ? Color::black : Color::white;
  for (Int x : t)
    if ((evens == 1) != is_odd(x)) c.central = x;
  return c;
}

inline bool is_triple_of(const Triple& t, Color c) {
  auto ct = triple_color(t);
  return ct && ct->color == c;
}

// Parity counts decide which triples fit into a set.
struct ParityCount {
  Int even = 0, odd = 0;
};

inline ParityCount parity_count(const std::vector<Int>& s) {
  ParityCount p;
  for (Int x : s) (is_odd(x) ? p.odd : p.even)++;
  return p;
}

inline bool has_triple(ParityCount p, Color c) {
  return c == Color::black ? p.even >= 1 && p.odd >= 2 : p.odd >= 1 && p.even >= 2;
}

// Every triple of the given color inside s, lexicographically.
inline std::vector<Triple> triples_in(const std::vector<Int>& s_in, Color c) {
  std::vector<Int> s = s_in;
  std::sort(s.begin(), s.end());
  std::vector<Triple> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      for (std::size_t k = j + 1; k < s.size(); ++k)
        if (is_triple_of({s[i], s[j], s[k]}, c)) out.push_back({s[i], s[j], s[k]});
  return out;
}

inline std::vector<Int> set_minus(const std::vector<Int>& a, const std::set<Int>& b) {
  std::vector<Int> out;
  for (Int x : a)
    if (!b.count(x)) out.push_back(x);
  return out;
}

struct Lemma52Result {
  bool holds = true;
  std::optional<Triple> black_witness;
  std::optional<Triple> white_witness;
};

// (exists black triple in the residue) implies (exists white triple in it),
// decided by listing the residue's triples.
inline Lemma52Result check_lemma_5_2(const std::vector<Int>& I, const std::vector<Triple>& whites) {
  std::set<Int> in(I.begin(), I.end()), used;
  for (const auto& t : whites) {
    if (!is_triple_of(t, Color::white)) throw std::invalid_argument("listed triple is not white");
    for (Int x : t) {
      if (!in.count(x)) throw std::invalid_argument("white triple not inside I");
      if (!used.insert(x).second) throw std::invalid_argument("white triples overlap");
    }
  }
  std::vector<Int> residue = set_minus(I, used);
  Lemma52Result r;
  auto b = triples_in(residue, Color::black);
  auto w = triples_in(residue, Color::white);
  if (!b.empty()) r.black_witness = b.front();
  if (!w.empty()) r.white_witness = w.front();
  r.holds = b.empty() || !w.empty();
  return r;
}

struct TriplePlacement {
  std::vector<std::vector<Int>> segments;
  std::vector<Triple> black_triples;
  std::vector<Triple> white_triples;
  std::vector<Int> white_singletons;
};

// Throws std::invalid_argument on the first broken placement invariant.
inline void validate_placement(const TriplePlacement& p) {
  std::map<Int, std::size_t> seg_of;
  for (std::size_t s = 0; s < p.segments.size(); ++s) {
    if (!validate_balanced(p.segments[s])) throw std::invalid_argument("segment is not balanced");
    for (Int x : p.segments[s])
      if (!seg_of.emplace(x, s).second) throw std::invalid_argument("segments overlap");
  }
  std::set<Int> used;
  auto take = [&](const std::vector<Int>& xs) {
    std::optional<std::size_t> s;
    for (Int x : xs) {
      auto it = seg_of.find(x);
      if (it == seg_of.end()) throw std::invalid_argument("element outside every segment");
      if (s && *s != it->second) throw std::invalid_argument("set spans two segments");
      s = it->second;
      if (!used.insert(x).second) throw std::invalid_argument("placement sets are not disjoint");
    }
  };
  for (const auto& t : p.black_triples) {
    if (!is_triple_of(t, Color::black)) throw std::invalid_argument("listed black triple is not black");
    take({t.begin(), t.end()});
  }
  for (const auto& t : p.white_triples) {
    if (!is_triple_of(t, Color::white)) throw std::invalid_argument("listed white triple is not white");
    take({t.begin(), t.end()});
  }
  for (Int x : p.white_singletons) {
    if (!is_odd(x)) throw std::invalid_argument("singleton is not white");
    take({x});
  }
}

struct SegmentCounts {
  Int b = 0, c = 0, psi = 0, phi = 0;  // black/white triples, singletons, |Phi cap A_s|
  ParityCount residue;                 // elements of A_s outside Omega'
  ParityCount residue_omega;           // elements of A_s outside Omega
};

struct Lemma54Result {
  bool hypotheses_ok = false;
  bool hyp_i = false, hyp_ii = false, hyp_iii = false;
  bool inequality_ok = false;
  bool identities_ok = false;
  Int omega = 0;         // |Omega|
  Rational rhs;          // 3/4 |A| + |I|
  Int I_count = 0;
  std::vector<SegmentCounts> per_segment;
};

inline Lemma54Result check_lemma_5_4(const TriplePlacement& p) {
  validate_placement(p);
  std::map<Int, std::size_t> seg_of;
  for (std::size_t s = 0; s < p.segments.size(); ++s)
    for (Int x : p.segments[s]) seg_of[x] = s;
  Lemma54Result r;
  r.per_segment.resize(p.segments.size());
  std::set<Int> omega, psi;
  for (const auto& t : p.black_triples) {
    auto& sc = r.per_segment[seg_of[t[0]]];
    sc.b++;
    sc.phi += 3;
    omega.insert(t.begin(), t.end());
  }
  for (const auto& t : p.white_triples) {
    r.per_segment[seg_of[t[0]]].c++;
    omega.insert(t.begin(), t.end());
  }
  for (Int x : p.white_singletons) {
    r.per_segment[seg_of[x]].psi++;
    psi.insert(x);
  }
  Int total = 0;
  r.hyp_i = r.hyp_ii = r.hyp_iii = true;
  r.identities_ok = true;
  Int sum3 = 0;
  for (std::size_t s = 0; s < p.segments.size(); ++s) {
    auto& sc = r.per_segment[s];
    std::set<Int> omega_prime = omega;
    omega_prime.insert(psi.begin(), psi.end());
    auto seg = p.segments[s];
    sc.residue = parity_count(set_minus(seg, omega_prime));
    sc.residue_omega = parity_count(set_minus(seg, omega));
    // No white triple in A_s minus Omega', by listing candidates.
    if (!triples_in(set_minus(seg, omega_prime), Color::white).empty()) r.hyp_i = false;
    if (sc.psi > 0) {
      if (sc.psi > 2) r.hyp_ii = false;
      if (sc.phi != 0) r.hyp_iii = false;
    }
    if (sc.phi == 6) r.I_count++;
    total += static_cast<Int>(seg.size());
    sum3 += 3 * (sc.b + sc.c);
    Int half = static_cast<Int>(seg.size()) / 2;
    ParityCount cov{half - sc.residue_omega.even, half - sc.residue_omega.odd};
    if (cov.even != sc.b + 2 * sc.c || cov.odd != 2 * sc.b + sc.c) r.identities_ok = false;
  }
  r.omega = static_cast<Int>(omega.size());
  if (sum3 != r.omega) r.identities_ok = false;
  r.hypotheses_ok = r.hyp_i && r.hyp_ii && r.hyp_iii;
  r.rhs = Rational(3 * total, 4) + Rational(r.I_count);
  r.inequality_ok = Rational(r.omega) >= r.rhs;
  return r;
}

// Random placement satisfying the hypotheses of check_lemma_5_4 over
// `segments` consecutive blocks of 12. Segments with singletons get no black
// triples; every segment ends with no white triple left outside Omega'.
inline TriplePlacement random_valid_placement(std::mt19937_64& rng, Int segments) {
  TriplePlacement p;
  std::bernoulli_distribution coin(0.5);
  for (Int s = 0; s < segments; ++s) {
    std::vector<Int> seg = segment(12 * s + 1, 12);
    p.segments.push_back(seg);
    std::set<Int> used;
    auto random_triple = [&](Color c) -> std::optional<Triple> {
      auto ts = triples_in(set_minus(seg, used), c);
      if (ts.empty()) return std::nullopt;
      return ts[std::uniform_int_distribution<std::size_t>(0, ts.size() - 1)(rng)];
    };
    if (coin(rng)) {
      Int n = std::uniform_int_distribution<Int>(1, 2)(rng);
      auto odds = set_minus(seg, used);
      odds.erase(std::remove_if(odds.begin(), odds.end(), [](Int x) { return !is_odd(x); }), odds.end());
      std::shuffle(odds.begin(), odds.end(), rng);
      for (Int i = 0; i < n; ++i) {
        p.white_singletons.push_back(odds[i]);
        used.insert(odds[i]);
      }
    } else {
      Int n = std::uniform_int_distribution<Int>(0, 4)(rng);
      for (Int i = 0; i < n; ++i) {
        auto t = random_triple(Color::black);
        if (!t) break;
        p.black_triples.push_back(*t);
        used.insert(t->begin(), t->end());
      }
    }
    while (auto t = random_triple(Color::white)) {
      p.white_triples.push_back(*t);
      used.insert(t->begin(), t->end());
    }
  }
  return p;
}

enum class CoverMode { optimal, all_maximal };

struct CoverReport {
  Int optimal = 0;                      // optimal mode
  Int min_cover = 0, max_cover = 0;     // all_maximal mode
  std::map<Int, std::uint64_t> distribution;  // covered -> number of maximal placements
  std::uint64_t placements = 0;
  std::vector<Int> covered;  // per maximal placement, in visiting order
};

constexpr std::size_t kCoverLimit = 24;

namespace detail {

struct CoverSearch {
  std::vector<Int> elems;
  bool black = false, white = false;
  std::vector<std::int8_t> memo;

  bool allowed(Int a, Int b, Int c) const {
    auto t = triple_color({a, b, c});
    return t && (t->color == Color::black ? black : white);
  }
  bool extendable(std::uint32_t free) const {
    ParityCount pc;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (free >> i & 1) (is_odd(elems[i]) ? pc.odd : pc.even)++;
    return (black && has_triple(pc, Color::black)) || (white && has_triple(pc, Color::white));
  }
  // Most elements coverable inside the free mask.
  int best(std::uint32_t free) {
    if (free == 0) return 0;
    if (memo[free] >= 0) return memo[free];
    int i = __builtin_ctz(free);
    std::uint32_t rest = free & ~(1u << i);
    int b = best(rest);
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      if (!(rest >> j & 1)) continue;
      for (std::size_t k = j + 1; k < elems.size(); ++k) {
        if (!(rest >> k & 1)) continue;
        if (!allowed(elems[i], elems[j], elems[k])) continue;
        b = std::max(b, 3 + best(rest & ~(1u << j) & ~(1u << k)));
      }
    }
    return memo[free] = static_cast<std::int8_t>(b);
  }
  // Visits every set of disjoint allowed triples once: each element is either
  // left free or covered by a triple in which it is the least member.
  void all(std::size_t i, std::uint32_t free, std::uint32_t skipped, Int covered, CoverReport& r) {
    while (i < elems.size() && !(free >> i & 1)) ++i;
    if (i == elems.size()) {
      if (extendable(skipped)) return;
      r.placements++;
      r.distribution[covered]++;
      r.covered.push_back(covered);
      return;
    }
    all(i + 1, free & ~(1u << i), skipped | (1u << i), covered, r);
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      if (!(free >> j & 1)) continue;
      for (std::size_t k = j + 1; k < elems.size(); ++k) {
        if (!(free >> k & 1)) continue;
        if (!allowed(elems[i], elems[j], elems[k])) continue;
        all(i + 1, free & ~(1u << i) & ~(1u << j) & ~(1u << k), skipped, covered + 3, r);
      }
    }
  }
};

}  // namespace detail

// Exhaustive covering of I by disjoint triples of the allowed colors.
inline CoverReport max_cover_oracle(const std::vector<Int>& I, bool allow_black, bool allow_white, CoverMode mode) {
  std::set<Int> u(I.begin(), I.end());
  if (u.size() > kCoverLimit) throw std::invalid_argument("max_cover_oracle supports |I| <= 24");
  detail::CoverSearch cs;
  cs.elems.assign(u.begin(), u.end());
  cs.black = allow_black;
  cs.white = allow_white;
  std::uint32_t full = cs.elems.empty() ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << cs.elems.size()) - 1);
  CoverReport r;
  if (mode == CoverMode::optimal) {
    cs.memo.assign(std::size_t{1} << cs.elems.size(), -1);
    r.optimal = cs.best(full);
  } else {
    cs.all(0, full, 0, 0, r);
    if (!r.distribution.empty()) {
      r.min_cover = r.distribution.begin()->first;
      r.max_cover = r.distribution.rbegin()->first;
    }
  }
  return r;
}

struct BatchResult {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
};

// check_lemma_5_2 for every family of at most kmax disjoint white triples.
inline BatchResult lemma_5_2_exhaustive(const std::vector<Int>& I, Int kmax) {
  auto whites = triples_in(I, Color::white);
  BatchResult r;
  std::vector<Triple> chosen;
  std::set<Int> used;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    ++r.cases;
    if (!check_lemma_5_2(I, chosen).holds) ++r.failures;
    if (static_cast<Int>(chosen.size()) >= kmax) return;
    for (std::size_t i = from; i < whites.size(); ++i) {
      const auto& t = whites[i];
      if (used.count(t[0]) || used.count(t[1]) || used.count(t[2])) continue;
      chosen.push_back(t);
      used.insert(t.begin(), t.end());
      rec(i + 1);
      for (Int x : t) used.erase(x);
      chosen.pop_back();
    }
  };
  rec(0);
  return r;
}

// check_lemma_5_4 on `count` seeded placements of 1 to 3 segments; a
// failure is a broken inequality or counting identity.
inline BatchResult lemma_5_4_random(std::uint64_t seed, std::uint64_t count) {
  std::mt19937_64 rng(seed);
  BatchResult r;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto p = random_valid_placement(rng, static_cast<Int>(1 + i % 3));
    auto x = check_lemma_5_4(p);
    ++r.cases;
    if (!x.hypotheses_ok || !x.inequality_ok || !x.identities_ok) ++r.failures;
  }
  return r;
}

}  // namespace tlab
