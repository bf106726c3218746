#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "backends.hpp"

namespace tlab {

// Constants of the height conditions. The defaults are the full-scale ones;
// scaled(s) divides the radius and thresholds by s and lifts the p range.
struct HeightConstants {
  Int radius = 100;     // delta ranges over [-radius, radius]
  Int threshold = 100;  // h(g eta^d xi^-p) > h(g) + threshold
  Int floor = 600;      // (i2) margin for zigzag traces
  Int step = 14;        // (i1) index step for zigzag traces
  bool strict_p = true;  // require p odd in (400, 410)

  static HeightConstants scaled(Int s) {
    if (s < 1) throw std::invalid_argument("scale factor must be >= 1");
    if (s == 1) return {};
    return {std::max<Int>(100 / s, 1), std::max<Int>(100 / s, 1), std::max<Int>(600 / s, 1), 14, false};
  }
};

// 401 / s rounded to an odd value, at least 1.
inline Int scaled_p(Int s) {
  if (s < 1) throw std::invalid_argument("scale factor must be >= 1");
  Int p = 401 / s;
  if (!is_odd(p)) p += 1;
  return std::max<Int>(p, 1);
}

inline void validate_p(Int p, const HeightConstants& c) {
  if (!is_odd(p)) throw std::invalid_argument("p must be odd");
  if (c.strict_p && (p <= 400 || p >= 410)) throw std::invalid_argument("p must lie in (400, 410)");
  if (!c.strict_p && p <= 0) throw std::invalid_argument("p must be positive");
}

inline bool independent(Pair u, Pair v) { return sub(mul(u.first, v.second), mul(u.second, v.first)) != 0; }

// pi(eta) and pi(xi) span a copy of Z^2.
template <class G>
bool check_condition_A() {
  return independent(G::abelian(G::eta()), G::abelian(G::xi()));
}

inline void require_odd_entries(const std::vector<Int>& v, const char* what) {
  for (Int x : v)
    if (!is_odd(x)) throw std::invalid_argument(std::string(what) + " entries must be odd and non-zero");
}

// True iff eta^d1 xi^e1 ... eta^dn xi^en is not the identity.
template <class G>
bool check_C_instance(const std::vector<Int>& deltas, const std::vector<Int>& epsilons) {
  if (deltas.empty() || deltas.size() != epsilons.size())
    throw std::invalid_argument("deltas and epsilons need equal length n >= 1");
  require_odd_entries(deltas, "delta");
  require_odd_entries(epsilons, "epsilon");
  return !G::is_identity(alternating<G>(deltas, epsilons));
}

enum class BEMode { B, E };

// eta^p0 xi^e1 eta^p1 ... xi^ek eta^pk, without precondition checks.
template <class G>
typename G::Element be_word(const std::vector<Int>& ps, const std::vector<Int>& eps) {
  if (ps.size() != eps.size() + 1) throw std::invalid_argument("p_list must be one longer than eps_list");
  typename G::Element x = gpow<G>(G::eta(), ps[0]);
  for (std::size_t j = 0; j < eps.size(); ++j) {
    x = G::mul(x, gpow<G>(G::xi(), eps[j]));
    x = G::mul(x, gpow<G>(G::eta(), ps[j + 1]));
  }
  return x;
}

template <class G>
bool outside_H_union(const typename G::Element& x) {
  return !in_H<G>(x) && !in_Hprime<G>(x);
}

// True iff the (B)- or (E)-shaped word avoids H u H'.
template <class G>
bool check_BE_instance(const std::vector<Int>& ps, const std::vector<Int>& eps, BEMode mode) {
  if (eps.empty()) throw std::invalid_argument("eps_list must be non-empty");
  require_odd_entries(eps, "epsilon");
  if (ps.size() != eps.size() + 1) throw std::invalid_argument("p_list must be one longer than eps_list");
  std::size_t evens = 0;
  for (Int p : ps) evens += is_odd(p) ? 0 : 1;
  if (mode == BEMode::B) {
    if (evens > 1) throw std::invalid_argument("mode B allows at most one even p");
    for (std::size_t i = 1; i + 1 < ps.size(); ++i)
      if (ps[i] == 0) throw std::invalid_argument("mode B needs interior p non-zero");
  } else if (evens > 0) {
    throw std::invalid_argument("mode E needs every p odd");
  }
  return outside_H_union<G>(be_word<G>(ps, eps));
}

struct ConditionDReport {
  Int p = 0;
  std::string g;
  Int h_g = 0;
  HeightConstants constants;
  std::vector<Int> failing_deltas_i;
  bool part_ii_checked = false;
  std::vector<Int> part_ii_failures;
  bool boundary_exempt = false;  // single failure at +-radius; (ii) not demanded
  bool pass = false;
};

template <class G>
Int h_of(const typename G::Element& x) {
  static_assert(G::has_height, "backend has no height function");
  return G::height(x);
}

// Part (i): delta in [-R, R] with h(g eta^d xi^-p) <= h(g) + T. Part (ii)
// only when the single exception d0 lies strictly inside: for d in (-R, d0]
// need h(g eta^d xi^p) > h(g) + T.
template <class G>
ConditionDReport check_D(const typename G::Element& g, Int p, const HeightConstants& c = {}) {
  validate_p(p, c);
  ConditionDReport r;
  r.p = p;
  r.g = G::render(g);
  r.constants = c;
  r.h_g = h_of<G>(g);
  Int bound = add(r.h_g, c.threshold);
  auto xim = gpow<G>(G::xi(), neg(p));
  auto xip = gpow<G>(G::xi(), p);
  for (Int d = -c.radius; d <= c.radius; ++d) {
    auto x = G::mul(G::mul(g, gpow<G>(G::eta(), d)), xim);
    if (h_of<G>(x) <= bound) r.failing_deltas_i.push_back(d);
  }
  if (r.failing_deltas_i.size() > 1) return r;
  if (r.failing_deltas_i.size() == 1) {
    Int d0 = r.failing_deltas_i[0];
    if (d0 == -c.radius || d0 == c.radius) {
      r.boundary_exempt = true;
    } else {
      r.part_ii_checked = true;
      for (Int d = -c.radius + 1; d <= d0; ++d) {
        auto x = G::mul(G::mul(g, gpow<G>(G::eta(), d)), xip);
        if (h_of<G>(x) <= bound) r.part_ii_failures.push_back(d);
      }
    }
  }
  r.pass = r.part_ii_failures.empty();
  return r;
}

// h(g eta^d xi^e) > h(g) with g = eta^d1 xi^e1 ... eta^dn xi^en.
template <class G>
bool check_Dprime_instance(const std::vector<Int>& deltas, const std::vector<Int>& epsilons, Int extra_delta,
                           Int extra_epsilon, Int radius = 100) {
  if (deltas.size() != epsilons.size()) throw std::invalid_argument("deltas and epsilons differ in length");
  auto bad_delta = [radius](Int d) { return d == 0 || d < -radius || d > radius; };
  for (Int d : deltas)
    if (bad_delta(d)) throw std::invalid_argument("delta must lie in [-radius, radius] without 0");
  for (Int e : epsilons)
    if (e == 0) throw std::invalid_argument("epsilon must be non-zero");
  if (bad_delta(extra_delta)) throw std::invalid_argument("delta must lie in [-radius, radius] without 0");
  if (extra_epsilon == 0) throw std::invalid_argument("epsilon must be non-zero");
  auto g = alternating<G>(deltas, epsilons);
  auto x = G::mul(G::mul(g, gpow<G>(G::eta(), extra_delta)), gpow<G>(G::xi(), extra_epsilon));
  return h_of<G>(x) > h_of<G>(g);
}

// h(z xi^-p) > h(z) + T.
template <class G>
bool is_successful(const typename G::Element& z, Int p, const HeightConstants& c = {}) {
  validate_p(p, c);
  return h_of<G>(G::mul(z, gpow<G>(G::xi(), neg(p)))) > add(h_of<G>(z), c.threshold);
}

struct SublineProfile {
  std::string base;
  Int p = 0;
  Int K = 0;
  std::vector<Int> ks;
  std::vector<Int> heights;
  Int argmin = 0;  // the k of the least-index minimiser
  std::vector<Int> monotonicity_violations;  // k with the step k -> k+1 wrong
};

// Heights along x xi^(pk), k in [-K, K]. Descent must be strict up to the
// vertex and ascent strict after it; offending steps are listed.
template <class G>
SublineProfile p_subline_profile(const typename G::Element& x, Int p, Int K) {
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  SublineProfile s;
  s.base = G::render(x);
  s.p = p;
  s.K = K;
  for (Int k = -K; k <= K; ++k) {
    s.ks.push_back(k);
    s.heights.push_back(h_of<G>(G::mul(x, gpow<G>(G::xi(), mul(p, k)))));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.heights.size(); ++i)
    if (s.heights[i] < s.heights[best]) best = i;
  s.argmin = s.ks[best];
  for (std::size_t i = 0; i + 1 < s.heights.size(); ++i) {
    bool ok = i < best ? s.heights[i] > s.heights[i + 1] : s.heights[i] < s.heights[i + 1];
    if (!ok) s.monotonicity_violations.push_back(s.ks[i]);
  }
  return s;
}

struct SuitabilityReport {
  bool pass = true;
  bool i1_vacuous = false;
  std::optional<Int> first_violation;  // 1-based k
  std::string violated;                  // "i1" or "i2"
};

// Black: (i1) h(x_{k+step}) > h(x_k) + T and (i2) h(x_k) > h(x_1) - floor.
// White: the reversed inequalities h(z_{k+step}) < h(z_k) - T and
// h(z_k) < h(z_1) + floor.
inline SuitabilityReport zigzag_height_suitability(const std::vector<Int>& trace, Color kind,
                                                   const HeightConstants& c = {}) {
  if (trace.empty()) throw std::invalid_argument("trace must be non-empty");
  SuitabilityReport r;
  const Int n = static_cast<Int>(trace.size());
  r.i1_vacuous = n <= c.step;
  std::optional<Int> k1, k2;
  for (Int k = 1; k + c.step <= n && !k1; ++k) {
    Int a = trace[k - 1], b = trace[k + c.step - 1];
    if (!(kind == Color::black ? b > add(a, c.threshold) : b < sub(a, c.threshold))) k1 = k;
  }
  for (Int k = 1; k <= n && !k2; ++k) {
    Int a = trace[k - 1];
    if (!(kind == Color::black ? a > sub(trace[0], c.floor) : a < add(trace[0], c.floor))) k2 = k;
  }
  if (k1 || k2) {
    r.pass = false;
    bool first_is_i1 = k1 && (!k2 || *k1 <= *k2);
    r.first_violation = first_is_i1 ? k1 : k2;
    r.violated = first_is_i1 ? "i1" : "i2";
  }
  return r;
}

// Every TNF with height <= max_height and subscripts <= max_sub.
inline std::vector<Tnf> enumerate_tnf(Int max_height, Int max_sub) {
  std::vector<std::vector<Syllable>> parts;  // increasing subscripts, exps >= 1
  std::vector<Syllable> cur;
  std::function<void(Int, Int)> rec = [&](Int next_sub, Int budget) {
    parts.push_back(cur);
    for (Int s = next_sub; s <= max_sub; ++s)
      for (Int e = 1; e <= budget; ++e) {
        cur.push_back({s, e});
        rec(s + 1, budget - e);
        cur.pop_back();
      }
  };
  rec(0, max_height);
  auto weight = [](const std::vector<Syllable>& p) {
    Int w = 0;
    for (const auto& s : p) w += s.exp;
    return w;
  };
  std::vector<Tnf> out;
  for (const auto& a : parts)
    for (const auto& b : parts) {
      if (weight(a) + weight(b) > max_height) continue;
      Tnf t{a, b};
      if (tnf_violations(t).empty()) out.push_back(t);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tlab
