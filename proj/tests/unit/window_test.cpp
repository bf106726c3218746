#include "doctest.h"

#include "tlab/window.hpp"

using namespace tlab;

namespace {

template <class G>
void check_involution(const PartnerMap<G>& pm) {
  for (const auto& [x, y] : *pm.N) {
    REQUIRE(pm.N->count(y));
    CHECK(pm.N->at(y) == x);
    CHECK_FALSE(x == y);
    CHECK(element_color<G>(x) != element_color<G>(y));
    // Partners differ by an odd xi-power.
    CHECK(in_Hprime_odd<G>(G::mul(G::inv(x), y)));
  }
}

}  // namespace

TEST_SUITE("window") {
  TEST_CASE("grid window shape") {
    WindowConfig c;
    auto w = make_grid_window<FGroup>(c);
    CHECK(w.tiles.size() == 13 * 3);
    CHECK(w.F1.size() == 468);
    CHECK(w.tiles[0].elems.size() == 12);
    CHECK(w.tiles[0].anchor ==
          FGroup::render(FGroup::mul(gpow<FGroup>(FGroup::xi(), -6), gpow<FGroup>(FGroup::eta(), -18))));
    c.margin = 2;
    CHECK(make_grid_window<FGroup>(c).F1.size() == 9 * 36);
    c.tile = 2;
    CHECK_THROWS_AS(make_grid_window<FGroup>(c), std::invalid_argument);
  }

  TEST_CASE("partners in F") {
    WindowConfig c;
    auto w = make_grid_window<FGroup>(c);
    std::set<FGroup::Element> grid(w.F1);
    auto pm = assign_partners(w, c);
    check_involution(pm);
    for (const auto& z : w.F1) CHECK(pm.N->count(z));
    for (const auto& t : w.tiles)
      for (const auto& z : t.elems) CHECK(pm.N->count(z));
    CHECK_FALSE(pm.vertex_pair.empty());
    for (const auto& z : pm.vertex_pair) CHECK_FALSE(grid.count(pm.N->at(z)));
    CHECK(pm.outer_tiles > 0);
    CHECK(pm.skipped_tiles == 0);
  }

  TEST_CASE("subline rule") {
    WindowConfig c;
    c.p = 3;
    c.subline_radius = 4;
    // On Z2 the vertex of the xi-line through eta^i is eta^i itself.
    using Z = Z2Group::Element;
    CHECK_FALSE(detail::rule_partner<Z2Group>(Z{0, 0}, c));
    CHECK_FALSE(detail::rule_partner<Z2Group>(Z{3, 0}, c));
    auto y = detail::rule_partner<Z2Group>(Z{6, 0}, c);
    REQUIRE(y);
    CHECK(*y == Z{9, 0});
    CHECK(*detail::rule_partner<Z2Group>(Z{9, 0}, c) == Z{6, 0});
    CHECK(*detail::rule_partner<Z2Group>(Z{-3, 0}, c) == Z{-6, 0});
    CHECK(*detail::rule_partner<Z2Group>(Z{-6, 0}, c) == Z{-3, 0});
    // A white vertex pairs with the element one step down.
    CHECK_FALSE(detail::rule_partner<Z2Group>(Z{0, 1}, c));
    CHECK_FALSE(detail::rule_partner<Z2Group>(Z{-3, 1}, c));
    CHECK(*detail::rule_partner<Z2Group>(Z{3, 1}, c) == Z{6, 1});
  }

  TEST_CASE("F build") {
    WindowConfig c;
    auto r = build_window_trees<FGroup>(c);
    CHECK(r.trees.size() == 234);
    CHECK(r.f1_size == 468);
    CHECK(r.f1_covered == 468);
    CHECK(r.covers());
    CHECK(r.end_fraction == Rational(1, 4));
    CHECK(r.end_fraction <= Rational(1, 4));
    CHECK(r.all_valid);
    CHECK(r.all_special);
    CHECK(r.all_labeled);
    CHECK(r.all_eta_normal);
    CHECK(r.tails_ok);
    CHECK(r.semi_complete);
    CHECK(r.max_ray_coset <= 3);
    CHECK(r.separation_failures == 0);
    CHECK(r.diagnostics.empty());
    REQUIRE(r.tiles.size() == 39);
    for (const auto& t : r.tiles) {
      CHECK(t.black_triples == 3);
      CHECK(t.white_triples == 0);
      CHECK(t.singletons == 3);
    }
    // Trees are pairwise disjoint.
    std::set<FGroup::Element> seen;
    std::size_t total = 0;
    for (const auto& t : r.trees)
      for (const auto& e : t.tree.elements()) {
        seen.insert(e);
        ++total;
      }
    CHECK(seen.size() == total);
  }

  TEST_CASE("white build") {
    WindowConfig c;
    c.color = Color::white;
    auto r = build_window_trees<FGroup>(c);
    CHECK(r.covers());
    CHECK(r.all_valid);
    CHECK(r.all_eta_normal);
    CHECK(r.all_special);
    CHECK(r.separation_failures == 0);
    CHECK(r.end_fraction <= Rational(1, 4));
    for (const auto& t : r.tiles) CHECK(t.black_triples == 0);
  }

  TEST_CASE("Z2 build reports collisions") {
    WindowConfig c;
    c.seed = 1;
    auto r = build_window_trees<Z2Group>(c);
    CHECK(r.separation_failures > 0);
    CHECK(r.max_ray_coset > 3);
    CHECK_FALSE(r.diagnostics.empty());
    auto again = build_window_trees<Z2Group>(c);
    CHECK(again.diagnostics == r.diagnostics);
    CHECK(again.trees.size() == r.trees.size());
  }

  TEST_CASE("empty F1") {
    WindowConfig c;
    c.imin = 0;
    c.imax = 5;
    auto r = build_window_trees<FGroup>(c);
    CHECK(r.trees.empty());
    CHECK(r.f1_size == 0);
    CHECK(r.covers());
    CHECK(r.end_fraction == Rational(0));
  }

  TEST_CASE("tail zigzags of built trees") {
    WindowConfig c;
    auto r = build_window_trees<FGroup>(c);
    for (const auto& t : r.trees) {
      auto z = tail_zigzag(t);
      REQUIRE(z.size() >= 2);
      CHECK(tail_zigzag_ok(t, z));
      auto v = validate_zigzag<FGroup>(z);
      CHECK(v.valid);
      for (auto h : v.line_hits) CHECK(h <= 2);
      std::vector<Int> trace;
      for (const auto& x : z) trace.push_back(FGroup::height(x));
      auto s = zigzag_height_suitability(trace, t.color, HeightConstants::scaled(10));
      CHECK(s.i1_vacuous == (trace.size() <= 14));
    }
  }
}
