#pragma once

// Piecewise-linear model of F on [0,1] with exact dyadic arithmetic. It is
// kept independent of the normal-form code and serves as its oracle.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "checked.hpp"
#include "word.hpp"

namespace tlab {

using BigInt = boost::multiprecision::cpp_int;

// num * 2^-e with num odd, or num = 0 and e = 0.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt num, Int e) : num_(std::move(num)), e_(e) { canon(); }
  static Dyadic integer(long v) { return Dyadic(BigInt(v), 0); }

  const BigInt& num() const { return num_; }
  Int exponent() const { return e_; }

  friend Dyadic operator+(const Dyadic& x, const Dyadic& y) {
    Int e = std::max(x.e_, y.e_);
    BigInt a = x.num_ << static_cast<unsigned>(e - x.e_);
    BigInt b = y.num_ << static_cast<unsigned>(e - y.e_);
    return Dyadic(a + b, e);
  }
  friend Dyadic operator-(const Dyadic& x, const Dyadic& y) { return x + Dyadic(-y.num_, y.e_); }
  // Multiplication by 2^s.
  Dyadic scaled(Int s) const { return is_zero() ? *this : Dyadic(num_, sub(e_, s)); }
  bool is_zero() const { return num_ == 0; }

  friend bool operator==(const Dyadic& x, const Dyadic& y) { return x.num_ == y.num_ && x.e_ == y.e_; }
  friend bool operator<(const Dyadic& x, const Dyadic& y) { return (x - y).num_ < 0; }
  friend bool operator<=(const Dyadic& x, const Dyadic& y) { return !(y < x); }

  std::string str() const {
    if (e_ <= 0) return BigInt(num_ << static_cast<unsigned>(-e_)).str();
    return num_.str() + "/2^" + std::to_string(e_);
  }

 private:
  void canon() {
    if (num_ == 0) {
      e_ = 0;
      return;
    }
    unsigned tz = boost::multiprecision::lsb(num_ < 0 ? BigInt(-num_) : num_);
    if (tz) {
      num_ >>= tz;
      e_ = sub(e_, static_cast<Int>(tz));
    }
  }
  BigInt num_ = 0;
  Int e_ = 0;
};

// Increasing PL homeomorphism of [0,1] given by its breakpoints, with
// redundant (collinear) points removed so that equal maps compare equal.
class PLMap {
 public:
  struct Point {
    Dyadic x, y;
    bool operator==(const Point&) const = default;
  };

  PLMap() : pts_{{Dyadic(), Dyadic()}, {Dyadic::integer(1), Dyadic::integer(1)}} {}
  explicit PLMap(std::vector<Point> pts) : pts_(std::move(pts)) {
    validate();
    simplify();
  }

  const std::vector<Point>& points() const { return pts_; }
  bool is_identity() const { return pts_.size() == 2; }
  bool operator==(const PLMap&) const = default;

  Dyadic operator()(const Dyadic& x) const { return eval(pts_, x, false); }

  PLMap inverse() const {
    std::vector<Point> p;
    p.reserve(pts_.size());
    for (const auto& q : pts_) p.push_back({q.y, q.x});
    return PLMap(std::move(p));
  }

  // (f.then(g))(x) = g(f(x)).
  PLMap then(const PLMap& g) const {
    std::vector<Dyadic> xs;
    xs.reserve(pts_.size() + g.pts_.size());
    for (const auto& q : pts_) xs.push_back(q.x);
    for (const auto& q : g.pts_) xs.push_back(eval(pts_, q.x, true));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Point> p;
    p.reserve(xs.size());
    for (const auto& x : xs) p.push_back({x, g((*this)(x))});
    return PLMap(std::move(p));
  }

  // Slope exponents s_i (slope 2^s_i) on consecutive pieces.
  std::vector<Int> slopes() const {
    std::vector<Int> s;
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) s.push_back(slope(pts_[i], pts_[i + 1]));
    return s;
  }

  std::string str() const {
    std::string out;
    for (const auto& q : pts_) out += "(" + q.x.str() + "," + q.y.str() + ")";
    return out;
  }

 private:
  static Int slope(const Point& a, const Point& b) {
    Dyadic dx = b.x - a.x, dy = b.y - a.y;
    if (dx.num() <= 0 || dy.num() <= 0 || dx.num() != dy.num()) throw std::domain_error("slope is not a power of 2");
    return sub(dx.exponent(), dy.exponent());
  }
  // Evaluates the map (inverse == false) or its inverse at t.
  static Dyadic eval(const std::vector<Point>& pts, const Dyadic& t, bool inverse) {
    auto key = [inverse](const Point& p) -> const Dyadic& { return inverse ? p.y : p.x; };
    auto val = [inverse](const Point& p) -> const Dyadic& { return inverse ? p.x : p.y; };
    std::size_t lo = 0, hi = pts.size() - 1;
    if (t < key(pts[lo]) || key(pts[hi]) < t) throw std::domain_error("point outside [0,1]");
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (key(pts[mid]) <= t)
        lo = mid;
      else
        hi = mid;
    }
    Int s = inverse ? -slope(pts[lo], pts[lo + 1]) : slope(pts[lo], pts[lo + 1]);
    return val(pts[lo]) + (t - key(pts[lo])).scaled(s);
  }
  void validate() const {
    if (pts_.size() < 2 || !(pts_.front().x == Dyadic()) || !(pts_.front().y == Dyadic()) ||
        !(pts_.back().x == Dyadic::integer(1)) || !(pts_.back().y == Dyadic::integer(1)))
      throw std::domain_error("PL map must fix 0 and 1");
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) slope(pts_[i], pts_[i + 1]);
  }
  void simplify() {
    std::vector<Point> out{pts_.front()};
    for (std::size_t i = 1; i + 1 < pts_.size(); ++i) {
      if (slope(out.back(), pts_[i]) == slope(pts_[i], pts_[i + 1])) continue;
      out.push_back(pts_[i]);
    }
    out.push_back(pts_.back());
    pts_ = std::move(out);
  }
  std::vector<Point> pts_;
};

namespace detail {

inline Dyadic dy(long num, Int e) { return Dyadic(BigInt(num), e); }

inline const PLMap& pl_generator_a() {
  static const PLMap a({{dy(0, 0), dy(0, 0)}, {dy(1, 1), dy(1, 2)}, {dy(3, 2), dy(1, 1)}, {dy(1, 0), dy(1, 0)}});
  return a;
}

inline const PLMap& pl_generator_b() {
  static const PLMap b({{dy(0, 0), dy(0, 0)},
                        {dy(1, 1), dy(1, 1)},
                        {dy(3, 2), dy(5, 3)},
                        {dy(7, 3), dy(3, 2)},
                        {dy(1, 0), dy(1, 0)}});
  return b;
}

// X_0 = A, X_1 = B, X_n = A^-(n-1) B A^(n-1). Products compose as
// functions: the map of uv applies v first.
inline const PLMap& pl_generator(Int n, int sign) {
  thread_local std::map<std::pair<Int, int>, PLMap> cache;
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  PLMap g;
  if (n == 0) {
    g = pl_generator_a();
  } else if (n == 1) {
    g = pl_generator_b();
  } else {
    g = pl_generator_a().then(pl_generator(n - 1, 1)).then(pl_generator_a().inverse());
  }
  if (sign < 0) g = g.inverse();
  return cache.emplace(key, std::move(g)).first->second;
}

inline PLMap pl_eval(const Word& w) {
  PLMap m;
  for (const auto& s : w) {
    const PLMap& g = pl_generator(s.sub, s.exp > 0 ? 1 : -1);
    for (Int k = 0; k < iabs(s.exp); ++k) m = g.then(m);
  }
  return m;
}

inline bool pl_presentation_holds() {
  // [u, v] = u^-1 v^-1 u v with u = x0 x1^-1 and v = x0^-k x1 x0^k, k = 1, 2.
  Word r1 = parse_word("x1 x0^-1 x0^-1 x1^-1 x0 x0 x1^-1 x0^-1 x1 x0");
  Word r2 = parse_word("x1 x0^-1 x0^-2 x1^-1 x0^2 x0 x1^-1 x0^-2 x1 x0^2");
  return pl_eval(r1).is_identity() && pl_eval(r2).is_identity() &&
         pl_eval(parse_word("x1^-1 x2 x1")) == pl_eval(parse_word("x3"));
}

}  // namespace detail

// Throws std::logic_error once, on first use, if the generator charts do not
// satisfy the defining relations of F.
inline void pl_self_check() {
  static const bool ok = detail::pl_presentation_holds();
  if (!ok) throw std::logic_error("PL generators violate the presentation of F");
}

inline PLMap pl_oracle(const Word& w) {
  pl_self_check();
  return detail::pl_eval(w);
}

inline bool pl_equal(const Word& u, const Word& v) { return pl_oracle(u) == pl_oracle(v); }

}  // namespace tlab
