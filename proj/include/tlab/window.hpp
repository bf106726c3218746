#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "gbt.hpp"

namespace tlab {

// The finite region: horizontal lines xi^j H for |j| <= lines, elements
// xi^j eta^i with i in [imin, imax], cut into tiles of `tile` consecutive
// eta-steps starting at imin. F1 is every tile on lines |j| <= lines - margin.
struct WindowConfig {
  Int lines = 6;
  Int imin = -18;
  Int imax = 18;
  Int tile = 12;
  Int margin = 0;
  Int p = 41;
  Int subline_radius = 3;  // sublines are searched over k in [-radius, radius]
  Int max_q = 0;           // odd search bound for vertex partners, 0 means 4p
  std::uint64_t seed = 0;  // 0 keeps lowest-offset choices, otherwise shuffles
  Color color = Color::black;
};

template <class G>
struct Window {
  using E = typename G::Element;
  struct Tile {
    int id = 0;
    std::string anchor;  // rendered first element
    Int line = 0;        // grid line, or 0 for tiles added around partners
    bool inner = false;  // part of F1
    std::vector<E> elems;
  };
  std::vector<Tile> tiles;
  std::map<E, std::pair<int, int>> where;  // element -> (tile, offset)
  std::set<E> F1;
  std::vector<E> F1_order;

  bool tiled(const E& x) const { return where.count(x) > 0; }

  bool add_tile(std::vector<E> elems, Int line, bool inner) {
    for (const auto& e : elems)
      if (tiled(e)) return false;
    Tile t;
    t.id = static_cast<int>(tiles.size());
    t.anchor = G::render(elems[0]);
    t.line = line;
    t.inner = inner;
    for (std::size_t k = 0; k < elems.size(); ++k) {
      where[elems[k]] = {t.id, static_cast<int>(k)};
      if (inner) {
        F1.insert(elems[k]);
        F1_order.push_back(elems[k]);
      }
    }
    t.elems = std::move(elems);
    tiles.push_back(std::move(t));
    return true;
  }
};

template <class G>
Window<G> make_grid_window(const WindowConfig& c) {
  if (c.tile < 3) throw std::invalid_argument("tile length must be >= 3");
  if (c.lines < 0 || c.margin < 0 || c.margin > c.lines) throw std::invalid_argument("bad window lines or margin");
  Window<G> w;
  for (Int j = -c.lines; j <= c.lines; ++j) {
    auto base = gpow<G>(G::xi(), j);
    for (Int s = c.imin; s + c.tile - 1 <= c.imax; s += c.tile) {
      std::vector<typename G::Element> elems;
      for (Int i = s; i < s + c.tile; ++i) elems.push_back(G::mul(base, gpow<G>(G::eta(), i)));
      w.add_tile(std::move(elems), j, iabs(j) <= c.lines - c.margin);
    }
  }
  return w;
}

template <class G>
struct PartnerMap {
  using E = typename G::Element;
  std::shared_ptr<std::map<E, E>> N = std::make_shared<std::map<E, E>>();
  std::set<E> vertex_pair;  // tiled elements partnered off their subline
  std::size_t outer_tiles = 0;
  std::size_t skipped_tiles = 0;
};

namespace detail {

template <class G>
void link(PartnerMap<G>& pm, const typename G::Element& a, const typename G::Element& b) {
  auto& N = *pm.N;
  auto ia = N.find(a), ib = N.find(b);
  if ((ia != N.end() && !(ia->second == b)) || (ib != N.end() && !(ib->second == a)))
    throw std::logic_error("inconsistent partner map at " + G::render(a));
  N[a] = b;
  N[b] = a;
}

// Subline rule: with z0 the least-index height minimiser of z xi^(pk), a
// black z0 pairs black z with z xi^p and a white z0 pairs white z with
// z xi^-p. Returns nullopt when z lies in the pair at the vertex.
template <class G>
std::optional<typename G::Element> rule_partner(const typename G::Element& z, const WindowConfig& c) {
  auto prof = p_subline_profile<G>(z, c.p, c.subline_radius);
  Int k0 = prof.argmin;  // z0 = z xi^(p k0), so z sits at offset -k0
  auto z0 = G::mul(z, gpow<G>(G::xi(), mul(c.p, k0)));
  bool black0 = element_color<G>(z0) == Color::black;
  Int off = neg(k0);
  bool even = !is_odd(off);
  Int step = black0 ? (even ? 1 : -1) : (even ? -1 : 1);
  Int partner_off = off + step;
  if ((off == 0 && partner_off == (black0 ? 1 : -1)) || (partner_off == 0 && off == (black0 ? 1 : -1)))
    return std::nullopt;
  return G::mul(z, gpow<G>(G::xi(), mul(c.p, step)));
}

template <class G>
void assign_rule_or_mark(PartnerMap<G>& pm, const typename G::Element& z, const WindowConfig& c,
                         std::vector<typename G::Element>& pending) {
  if (pm.N->count(z)) return;
  auto y = rule_partner<G>(z, c);
  if (y)
    link(pm, z, *y);
  else
    pending.push_back(z);
}

// z' = z xi^q for the first odd q in 1, -1, 3, -3, ... that is untiled and
// not yet partnered.
template <class G>
void assign_vertex_partners(PartnerMap<G>& pm, const Window<G>& w, const std::vector<typename G::Element>& pending,
                            const WindowConfig& c) {
  Int qmax = c.max_q > 0 ? c.max_q : mul(4, c.p);
  for (const auto& z : pending) {
    if (pm.N->count(z)) continue;
    bool done = false;
    for (Int m = 1; m <= qmax && !done; m += 2)
      for (Int q : {m, neg(m)}) {
        auto y = G::mul(z, gpow<G>(G::xi(), q));
        if (w.tiled(y) || pm.N->count(y)) continue;
        link(pm, z, y);
        pm.vertex_pair.insert(z);
        done = true;
        break;
      }
    if (!done) throw std::runtime_error("window too thin to place a vertex partner for " + G::render(z));
  }
}

}  // namespace detail

// Partners for every tiled element. Partners of F1 that fall outside the
// tiles get a tile of their own, y eta^k for k in a block around 0, so they
// can be triples too; those tiles are partnered in turn.
template <class G>
PartnerMap<G> assign_partners(Window<G>& w, const WindowConfig& c) {
  if (c.p <= 0 || !is_odd(c.p)) throw std::invalid_argument("p must be odd and positive");
  PartnerMap<G> pm;
  std::vector<typename G::Element> pending;
  for (const auto& z : w.F1_order) detail::assign_rule_or_mark(pm, z, c, pending);
  detail::assign_vertex_partners(pm, w, pending, c);

  std::vector<typename G::Element> outside;
  for (const auto& z : w.F1_order) {
    const auto& y = pm.N->at(z);
    if (!w.F1.count(y)) outside.push_back(y);
  }
  Int half = c.tile / 2;
  for (const auto& y : outside) {
    if (w.tiled(y)) continue;
    bool placed = false;
    for (Int d = 0; d < c.tile && !placed; ++d)
      for (Int s : {-half + d, -half - d}) {
        if (s > 0 || s < -(c.tile - 1)) continue;
        std::vector<typename G::Element> elems;
        for (Int k = s; k < s + c.tile; ++k) elems.push_back(G::mul(y, gpow<G>(G::eta(), k)));
        if (w.add_tile(std::move(elems), 0, false)) {
          placed = true;
          break;
        }
      }
    placed ? ++pm.outer_tiles : ++pm.skipped_tiles;
  }
  pending.clear();
  for (const auto& t : w.tiles)
    if (!t.inner)
      for (const auto& z : t.elems) detail::assign_rule_or_mark(pm, z, c, pending);
  detail::assign_vertex_partners(pm, w, pending, c);
  return pm;
}

struct TileStats {
  int tile_id = 0;
  std::string anchor;
  std::size_t black_triples = 0;
  std::size_t white_triples = 0;
  std::size_t singletons = 0;
};

template <class G>
struct BuildReport {
  using E = typename G::Element;
  std::vector<LabeledTree<G>> trees;
  std::size_t f1_size = 0;
  std::size_t f1_covered = 0;
  std::size_t f1_end_elements = 0;
  Rational end_fraction{0};  // |F1 cap S(End)| / |F1|
  std::vector<E> residue;    // F1 elements in no tree
  std::vector<TileStats> tiles;
  std::size_t triples = 0;
  std::size_t singletons = 0;
  std::size_t max_ray_coset = 0;
  std::size_t separation_failures = 0;
  bool all_valid = true;
  bool all_special = true;
  bool all_labeled = true;
  bool all_eta_normal = true;
  bool tails_ok = true;
  bool semi_complete = true;
  std::vector<std::string> diagnostics;

  bool covers() const { return residue.empty(); }
};

template <class G>
class TreeBuilder {
 public:
  using E = typename G::Element;

  TreeBuilder(const Window<G>& w, const PartnerMap<G>& pm, const WindowConfig& c)
      : w_(w), pm_(pm), c_(c), rng_(c.seed) {}

  BuildReport<G> run() {
    BuildReport<G> r;
    for (const auto& z : w_.F1_order) {
      if (used_.count(z)) continue;
      auto t = start_tree(z);
      if (t) r.trees.push_back(std::move(*t));
    }
    summarize(r);
    return r;
  }

 private:
  Color central_color() const { return c_.color; }
  Color side_color() const { return c_.color == Color::black ? Color::white : Color::black; }
  bool free(const E& x) const { return !used_.count(x); }
  bool has_N(const E& x) const { return pm_.N->count(x) > 0; }
  const E& N(const E& x) const { return pm_.N->at(x); }

  // Free elements of the given color in x's tile whose partners are free.
  std::vector<E> candidates(const E& x, Color col, const std::set<E>& exclude) {
    std::vector<E> out;
    auto it = w_.where.find(x);
    if (it == w_.where.end()) return out;
    for (const auto& e : w_.tiles[it->second.first].elems)
      if (free(e) && !exclude.count(e) && element_color<G>(e) == col && has_N(e) && free(N(e)) &&
          !exclude.count(N(e)))
        out.push_back(e);
    if (c_.seed != 0) std::shuffle(out.begin(), out.end(), rng_);
    return out;
  }

  // Root (central, s1, s2) in one tile; all three partners become children.
  std::optional<LabeledTree<G>> make_root(const E& central, const E& s1, const E& s2) {
    LabeledTree<G> t;
    t.partner = pm_.N;
    t.color = c_.color;
    t.tree.add_vertex({{central, s1, s2}, 0, -1, {}});
    for (const auto& e : {central, s1, s2}) used_.insert(e);
    std::vector<std::pair<int, E>> queue;
    for (const auto& e : {central, s1, s2}) {
      used_.insert(N(e));
      queue.push_back({0, N(e)});
    }
    // The root central's partner stays a singleton, which makes T special.
    t.tree.add_vertex({{queue[0].second}, -1, 0, {}});
    for (std::size_t q = 1; q < queue.size(); ++q) {
      auto [parent, y] = queue[q];
      auto sides = w_.tiled(y) ? candidates(y, side_color(), {y}) : std::vector<E>{};
      if (sides.size() >= 2) {
        E a = sides[0], b = sides[1];
        int id = t.tree.add_vertex({{y, a, b}, 0, parent, {}});
        for (const auto& e : {a, b}) {
          used_.insert(e);
          used_.insert(N(e));
          queue.push_back({id, N(e)});
        }
      } else {
        t.tree.add_vertex({{y}, -1, parent, {}});
      }
    }
    return t;
  }

  std::optional<E> pick_central(const E& in_tile, const std::set<E>& exclude) {
    auto cs = candidates(in_tile, central_color(), exclude);
    if (cs.empty()) return std::nullopt;
    if (c_.seed == 0)
      std::stable_sort(cs.begin(), cs.end(), [&](const E& a, const E& b) {
        return !w_.F1.count(N(a)) && w_.F1.count(N(b));
      });
    return cs[0];
  }

  std::optional<LabeledTree<G>> root_with_side(const E& s) {
    if (!has_N(s) || !free(N(s))) return std::nullopt;
    auto c = pick_central(s, {s, N(s)});
    if (!c) return std::nullopt;
    auto others = candidates(s, side_color(), {s, N(s), *c, N(*c)});
    if (others.empty()) return std::nullopt;
    return make_root(*c, s, others[0]);
  }

  std::optional<LabeledTree<G>> start_tree(const E& z) {
    if (element_color<G>(z) == side_color()) return root_with_side(z);
    if (!has_N(z) || !free(N(z))) return std::nullopt;
    const E& y = N(z);
    if (!w_.F1.count(y)) {
      auto sides = candidates(z, side_color(), {z, y});
      if (sides.size() >= 2) return make_root(z, sides[0], sides[1]);
    }
    if (w_.tiled(y)) return root_with_side(y);
    return std::nullopt;
  }

  void summarize(BuildReport<G>& r) {
    std::map<E, std::pair<std::size_t, int>> owner;  // element -> (tree, vertex)
    for (std::size_t i = 0; i < r.trees.size(); ++i)
      for (std::size_t v = 0; v < r.trees[i].tree.vertices.size(); ++v)
        for (const auto& e : r.trees[i].tree.vertices[v].elems) {
          if (owner.count(e)) r.diagnostics.push_back("element in two trees: " + G::render(e));
          owner[e] = {i, static_cast<int>(v)};
        }
    r.f1_size = w_.F1.size();
    for (const auto& z : w_.F1_order) {
      auto it = owner.find(z);
      if (it == owner.end()) {
        r.residue.push_back(z);
        continue;
      }
      ++r.f1_covered;
      const auto& t = r.trees[it->second.first].tree;
      if (t.vertices[it->second.second].children.empty() && it->second.second != t.root) ++r.f1_end_elements;
    }
    r.end_fraction = r.f1_size ? Rational(static_cast<Int>(r.f1_end_elements), static_cast<Int>(r.f1_size))
                               : Rational(0);

    std::map<int, TileStats> stats;
    for (const auto& t : w_.tiles)
      if (t.inner) stats[t.id] = {t.id, t.anchor, 0, 0, 0};
    for (const auto& lt : r.trees) {
      for (const auto& v : lt.tree.vertices) {
        v.is_triple() ? ++r.triples : ++r.singletons;
        auto it = w_.where.find(v.center());
        if (it == w_.where.end() || !stats.count(it->second.first)) continue;
        auto& s = stats[it->second.first];
        if (!v.is_triple())
          ++s.singletons;
        else if (element_color<G>(v.center()) == Color::black)
          ++s.black_triples;
        else
          ++s.white_triples;
      }
      if (!validate_gbt(lt.tree).empty()) r.all_valid = false;
      if (!is_special(lt)) r.all_special = false;
      if (!labeling_violations(lt).empty()) r.all_labeled = false;
      if (!eta_normal_violations(lt).empty()) r.all_eta_normal = false;
      if (!tail_zigzag_ok(lt, tail_zigzag(lt))) r.tails_ok = false;
      std::size_t m = max_ray_coset_count(lt);
      r.max_ray_coset = std::max(r.max_ray_coset, m);
      if (m > 3) r.diagnostics.push_back("ray meets a horizontal coset " + std::to_string(m) + " times");
      auto sep = check_ray_separation(lt);
      r.separation_failures += sep.size();
      for (const auto& s : sep) r.diagnostics.push_back("separation fails for " + s.x + " and " + s.y);
    }
    for (auto& [id, s] : stats) r.tiles.push_back(s);
    r.semi_complete = semi_complete(r);
  }

  // For each T_i and each singleton x in F1 of the central color, the tile
  // of x keeps fewer than two side-colored elements outside S(T_1..T_i).
  bool semi_complete(const BuildReport<G>& r) const {
    std::set<E> covered;
    for (const auto& lt : r.trees) {
      for (const auto& e : lt.tree.elements()) covered.insert(e);
      for (const auto& v : lt.tree.vertices) {
        if (v.is_triple()) continue;
        const E& x = v.elems[0];
        if (!w_.F1.count(x) || element_color<G>(x) != central_color()) continue;
        std::size_t left = 0;
        for (const auto& e : w_.tiles[w_.where.at(x).first].elems)
          if (!covered.count(e) && element_color<G>(e) == side_color()) ++left;
        if (left >= 2) return false;
      }
    }
    return true;
  }

  const Window<G>& w_;
  const PartnerMap<G>& pm_;
  WindowConfig c_;
  std::mt19937_64 rng_;
  std::set<E> used_;
};

template <class G>
BuildReport<G> build_trees(const Window<G>& w, const PartnerMap<G>& pm, const WindowConfig& c) {
  return TreeBuilder<G>(w, pm, c).run();
}

// Grid window, partners and trees in one go.
template <class G>
BuildReport<G> build_window_trees(const WindowConfig& c) {
  Window<G> w = make_grid_window<G>(c);
  PartnerMap<G> pm = assign_partners(w, c);
  return build_trees(w, pm, c);
}

}  // namespace tlab
