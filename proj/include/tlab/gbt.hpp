#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "backends.hpp"
#include "combinatorics.hpp"

namespace tlab {

// A vertex is a triple (with a central element) or a singleton.
template <class E>
struct GbtVertex {
  std::vector<E> elems;
  int central = -1;  // index into elems for triples, -1 for singletons
  int parent = -1;
  std::vector<int> children;

  bool is_triple() const { return elems.size() == 3; }
  const E& center() const { return elems[is_triple() ? central : 0]; }
};

template <class E>
struct GBT {
  std::vector<GbtVertex<E>> vertices;
  int root = 0;

  int add_vertex(GbtVertex<E> v) {
    vertices.push_back(std::move(v));
    int id = static_cast<int>(vertices.size()) - 1;
    if (vertices[id].parent >= 0) vertices[vertices[id].parent].children.push_back(id);
    return id;
  }
  // S(T)
  std::vector<E> elements() const {
    std::vector<E> out;
    for (const auto& v : vertices) out.insert(out.end(), v.elems.begin(), v.elems.end());
    return out;
  }
  std::vector<int> ends() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].children.empty() && static_cast<int>(i) != root) out.push_back(static_cast<int>(i));
    return out;
  }
  std::vector<int> levels() const {
    std::vector<int> lv(vertices.size(), -1);
    if (vertices.empty()) return lv;
    std::vector<int> stack{root};
    lv[root] = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int c : vertices[v].children)
        if (c >= 0 && c < static_cast<int>(vertices.size()) && lv[c] < 0) {
          lv[c] = lv[v] + 1;
          stack.push_back(c);
        }
    }
    return lv;
  }
  // Root-to-end vertex paths.
  std::vector<std::vector<int>> rays() const {
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    std::function<void(int)> walk = [&](int v) {
      path.push_back(v);
      if (vertices[v].children.empty()) out.push_back(path);
      for (int c : vertices[v].children) walk(c);
      path.pop_back();
    };
    if (!vertices.empty()) walk(root);
    return out;
  }
};

// Every broken structural invariant; empty means valid.
template <class E>
std::vector<std::string> validate_gbt(const GBT<E>& t) {
  std::vector<std::string> v;
  const int n = static_cast<int>(t.vertices.size());
  if (n == 0) return {"tree has no vertices"};
  if (t.root < 0 || t.root >= n) return {"root index out of range"};
  const auto& r = t.vertices[t.root];
  if (!r.is_triple()) v.push_back("root is not a triple");
  if (r.parent != -1) v.push_back("root has a parent");
  std::set<E> seen;
  for (int i = 0; i < n; ++i) {
    const auto& x = t.vertices[i];
    std::string id = "vertex " + std::to_string(i);
    if (x.elems.size() != 1 && x.elems.size() != 3) v.push_back(id + " is neither a triple nor a singleton");
    if (x.is_triple() && (x.central < 0 || x.central > 2)) v.push_back(id + " has no central element");
    if (!x.is_triple() && x.central != -1) v.push_back(id + " is a singleton with a central element");
    for (const auto& e : x.elems)
      if (!seen.insert(e).second) v.push_back(id + " shares an element with another vertex");
    std::size_t valence = x.children.size() + (x.parent >= 0 ? 1 : 0);
    if (valence != 1 && valence != 3) v.push_back(id + " has valence " + std::to_string(valence));
    if (valence == 3 && !x.is_triple()) v.push_back(id + " has valence 3 but is not a triple");
    if (valence == 1 && x.is_triple()) v.push_back(id + " has valence 1 but is not a singleton");
    for (int c : x.children) {
      if (c < 0 || c >= n || t.vertices[c].parent != i) v.push_back(id + " has an inconsistent child link");
    }
    if (i != t.root && (x.parent < 0 || x.parent >= n)) v.push_back(id + " has no parent");
  }
  auto lv = t.levels();
  for (int i = 0; i < n; ++i)
    if (lv[i] < 0) v.push_back("vertex " + std::to_string(i) + " is not reachable from the root");
  return v;
}

// |S(End(T))| / |S(T)|.
template <class E>
Rational end_fraction(const GBT<E>& t) {
  if (!validate_gbt(t).empty()) throw std::invalid_argument("end_fraction of an invalid tree");
  Int total = 0, ends = 0;
  for (const auto& v : t.vertices) total += static_cast<Int>(v.elems.size());
  for (int e : t.ends()) ends += static_cast<Int>(t.vertices[e].elems.size());
  return Rational(ends, total);
}

// Root triple with three singleton ends.
inline GBT<Int> trivial_gbt() {
  GBT<Int> t;
  t.add_vertex({{0, 1, 2}, 0, -1, {}});
  for (Int e = 3; e < 6; ++e) t.add_vertex({{e}, -1, 0, {}});
  return t;
}

// Turns the singleton `leaf` into a triple with two new singleton children:
// |S(T)| grows by 4 and |S(End(T))| by 1.
inline void grow_leaf(GBT<Int>& t, int leaf, Int& next_id) {
  auto& v = t.vertices[leaf];
  v.elems = {v.elems[0], next_id, next_id + 1};
  v.central = 0;
  next_id += 2;
  for (int k = 0; k < 2; ++k) t.add_vertex({{next_id++}, -1, leaf, {}});
}

// Valid GBT with at most size_bound vertices, deterministic per seed.
inline GBT<Int> generate_random_gbt(std::uint64_t seed, int size_bound) {
  if (size_bound < 4) throw std::invalid_argument("size_bound must be >= 4");
  std::mt19937_64 rng(seed);
  GBT<Int> t = trivial_gbt();
  Int next_id = 6;
  int steps = std::uniform_int_distribution<int>(0, (size_bound - 4) / 2)(rng);
  for (int s = 0; s < steps; ++s) {
    auto ends = t.ends();
    int leaf = ends[std::uniform_int_distribution<std::size_t>(0, ends.size() - 1)(rng)];
    grow_leaf(t, leaf, next_id);
  }
  return t;
}

// A GBT over group elements together with the xi-partner involution.
template <class G>
struct LabeledTree {
  using E = typename G::Element;
  GBT<E> tree;
  std::shared_ptr<const std::map<E, E>> partner;
  Color color = Color::black;

  const E& N(const E& x) const {
    auto it = partner->find(x);
    if (it == partner->end()) throw std::invalid_argument("element has no partner: " + G::render(x));
    return it->second;
  }
  bool has_partner(const E& x) const { return partner->count(x) > 0; }
};

// The element of v whose partner is the entry element of child c.
template <class G>
const typename G::Element& attach_point(const LabeledTree<G>& t, int v, int c) {
  const auto& b = t.tree.vertices[c].center();
  for (const auto& a : t.tree.vertices[v].elems)
    if (t.has_partner(b) && t.N(b) == a) return a;
  throw std::invalid_argument("edge violates the labeling condition");
}

// (L1)/(L2) on every level-increasing edge.
template <class G>
std::vector<std::string> labeling_violations(const LabeledTree<G>& t) {
  std::vector<std::string> out;
  for (std::size_t v = 0; v < t.tree.vertices.size(); ++v)
    for (int c : t.tree.vertices[v].children) {
      try {
        attach_point(t, static_cast<int>(v), c);
      } catch (const std::invalid_argument&) {
        out.push_back("edge " + std::to_string(v) + "->" + std::to_string(c) + " violates (L1)/(L2)");
      }
    }
  return out;
}

// Colored and eta-normal: triples {x, x eta^n1, x eta^n2} with odd n1, n2,
// central x of the tree color and sides of the other color.
template <class G>
std::vector<std::string> eta_normal_violations(const LabeledTree<G>& t) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < t.tree.vertices.size(); ++i) {
    const auto& v = t.tree.vertices[i];
    if (!v.is_triple()) continue;
    const auto& c = v.center();
    if (element_color<G>(c) != t.color) out.push_back("vertex " + std::to_string(i) + " central has the wrong color");
    for (int k = 0; k < 3; ++k) {
      if (k == v.central) continue;
      auto q = G::mul(G::inv(c), v.elems[k]);
      if (!in_H<G>(q) || !is_odd(G::abelian(q).first))
        out.push_back("vertex " + std::to_string(i) + " side is not an odd eta-step from the central");
      else if (element_color<G>(v.elems[k]) == t.color)
        out.push_back("vertex " + std::to_string(i) + " side has the wrong color");
    }
  }
  return out;
}

// L(r) for the ray from the root to each vertex: l(b1) l(e1) ... with
// l(e) = a^-1 b for the edge and l(b_i) = x_i^-1 y_i for the vertex.
template <class G>
std::map<int, typename G::Element> label_rays(const LabeledTree<G>& t) {
  if (!labeling_violations(t).empty()) throw std::invalid_argument("labeling precondition violated");
  std::map<int, typename G::Element> out;
  std::function<void(int, typename G::Element)> walk = [&](int v, typename G::Element acc) {
    out[v] = acc;
    const auto& vv = t.tree.vertices[v];
    for (int c : vv.children) {
      const auto& a = attach_point(t, v, c);
      auto lb = G::mul(G::inv(vv.center()), a);
      auto le = G::mul(G::inv(a), t.tree.vertices[c].center());
      walk(c, G::mul(acc, G::mul(lb, le)));
    }
  };
  if (!t.tree.vertices.empty()) walk(t.tree.root, G::identity());
  return out;
}

template <class G>
struct SeparationWitness {
  int w1 = 0, w2 = 0;
  std::string x, y;
};

// For distinct vertices w1, w2 (joined by two level-increasing rays from
// their common ancestor) and every x in S(w1), y in S(w2): x^-1 y not in H.
template <class G>
std::vector<SeparationWitness<G>> check_ray_separation(const LabeledTree<G>& t, std::size_t max_witnesses = 16) {
  std::vector<SeparationWitness<G>> out;
  const auto& vs = t.tree.vertices;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      for (const auto& x : vs[i].elems)
        for (const auto& y : vs[j].elems)
          if (in_H<G>(G::mul(G::inv(x), y))) {
            out.push_back({static_cast<int>(i), static_cast<int>(j), G::render(x), G::render(y)});
            if (out.size() >= max_witnesses) return out;
          }
  return out;
}

// Groups elements into horizontal cosets xH; returns, per coset, the indices
// of its members in first-appearance order.
template <class G>
std::vector<std::vector<std::size_t>> horizontal_classes(const std::vector<typename G::Element>& xs) {
  std::vector<std::vector<std::size_t>> cls;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    bool placed = false;
    for (auto& c : cls)
      if (in_H<G>(G::mul(G::inv(xs[c[0]]), xs[i]))) {
        c.push_back(i);
        placed = true;
        break;
      }
    if (!placed) cls.push_back({i});
  }
  return cls;
}

// max over rays r and cosets zH of |S(r) cap zH|.
template <class G>
std::size_t max_ray_coset_count(const LabeledTree<G>& t) {
  std::size_t best = 0;
  for (const auto& ray : t.tree.rays()) {
    std::vector<typename G::Element> xs;
    for (int v : ray) xs.insert(xs.end(), t.tree.vertices[v].elems.begin(), t.tree.vertices[v].elems.end());
    for (const auto& c : horizontal_classes<G>(xs)) best = std::max(best, c.size());
  }
  return best;
}

// {N(a)} is an end vertex for the root central a.
template <class G>
bool is_special(const LabeledTree<G>& t) {
  const auto& r = t.tree.vertices[t.tree.root];
  if (!r.is_triple() || !t.has_partner(r.center())) return false;
  const auto& s = t.N(r.center());
  for (int c : r.children) {
    const auto& v = t.tree.vertices[c];
    if (!v.is_triple() && v.elems[0] == s) return true;
  }
  return false;
}

// Starts at the root central a: x1 = a, x2 = N(a), then alternately an
// eta-step inside the current vertex to an element of the tree color and a
// partner step, for as long as both stay inside S(T).
template <class G>
std::vector<typename G::Element> tail_zigzag(const LabeledTree<G>& t) {
  using E = typename G::Element;
  std::map<E, int> where;
  for (std::size_t i = 0; i < t.tree.vertices.size(); ++i)
    for (const auto& e : t.tree.vertices[i].elems) where[e] = static_cast<int>(i);
  std::vector<E> z{t.tree.vertices[t.tree.root].center()};
  std::set<E> used{z[0]};
  for (;;) {
    const E& last = z.back();
    if (z.size() % 2 == 1) {
      if (!t.has_partner(last)) break;
      const E& n = t.N(last);
      if (!where.count(n) || used.count(n)) break;
      z.push_back(n);
    } else {
      const auto& v = t.tree.vertices[where[last]];
      std::optional<E> next;
      for (const auto& e : v.elems)
        if (!used.count(e) && element_color<G>(e) == t.color) next = e;
      if (!next) break;
      z.push_back(*next);
    }
    used.insert(z.back());
  }
  return z;
}

// Tail conditions: even length, x_i of the tree color iff i odd, partner
// steps x_{2i} = N(x_{2i-1}).
template <class G>
bool tail_zigzag_ok(const LabeledTree<G>& t, const std::vector<typename G::Element>& z) {
  if (z.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < z.size(); ++i)
    if ((element_color<G>(z[i]) == t.color) != (i % 2 == 0)) return false;
  for (std::size_t i = 0; i + 1 < z.size(); i += 2)
    if (!t.has_partner(z[i]) || !(t.N(z[i]) == z[i + 1])) return false;
  return true;
}

template <class G>
struct ZigzagReport {
  bool valid = false;
  std::optional<Color> color;
  bool color_consistent = true;
  std::vector<std::size_t> line_hits;  // per horizontal line, first-appearance order
  bool parity_alternates = false;      // x_i black iff i odd
  std::size_t first_bad_step = 0;      // 1-based, 0 when valid
};

template <class G>
bool in_H_odd(const typename G::Element& q) {
  return in_H<G>(q) && is_odd(G::abelian(q).first);
}

template <class G>
bool in_Hprime_odd(const typename G::Element& q) {
  return in_Hprime<G>(q) && is_odd(G::abelian(q).second);
}

// Steps i <= m-2 must lie in H_odd or H'_odd and alternate, which also pins
// down the last step once m >= 3.
template <class G>
ZigzagReport<G> validate_zigzag(const std::vector<typename G::Element>& z) {
  if (z.empty()) throw std::invalid_argument("zigzag must be non-empty");
  ZigzagReport<G> r;
  r.valid = true;
  const std::size_t m = z.size();
  int prev = 0;  // 1 horizontal, 2 vertical
  for (std::size_t i = 0; i + 1 < m; ++i) {
    auto q = G::mul(G::inv(z[i]), z[i + 1]);
    int kind = in_H_odd<G>(q) ? 1 : in_Hprime_odd<G>(q) ? 2 : 0;
    bool constrained = i + 2 < m || prev != 0;
    if (constrained && (kind == 0 || kind == prev)) {
      r.valid = false;
      r.first_bad_step = i + 1;
      break;
    }
    prev = kind;
  }
  auto cls = horizontal_classes<G>(z);
  for (const auto& c : cls) {
    r.line_hits.push_back(c.size());
    if (c.size() < 2) continue;
    Color col = element_color<G>(z[c[0]]);
    if (!r.color)
      r.color = col;
    else if (*r.color != col)
      r.color_consistent = false;
  }
  r.parity_alternates = true;
  for (std::size_t i = 0; i < m; ++i)
    if ((element_color<G>(z[i]) == Color::black) != (i % 2 == 0)) r.parity_alternates = false;
  return r;
}

}  // namespace tlab
