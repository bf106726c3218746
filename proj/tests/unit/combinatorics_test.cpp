#include "doctest.h"

#include <functional>

#include "tlab/combinatorics.hpp"

using namespace tlab;

namespace {

std::vector<Triple> all_triples(const std::vector<Int>& s, bool black, bool white) {
  std::vector<Triple> out;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      for (std::size_t c = b + 1; c < s.size(); ++c) {
        int evens = (s[a] % 2 == 0) + (s[b] % 2 == 0) + (s[c] % 2 == 0);
        if ((evens == 1 && black) || (evens == 2 && white)) out.push_back({s[a], s[b], s[c]});
      }
  return out;
}

// Every family of disjoint triples, as (covered count, maximal) pairs.
struct Families {
  std::vector<std::pair<int, bool>> all;
};

Families families(const std::vector<Int>& s, bool black, bool white) {
  auto ts = all_triples(s, black, white);
  Families f;
  std::set<Int> used;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    bool maximal = true;
    for (const auto& t : ts)
      if (!used.count(t[0]) && !used.count(t[1]) && !used.count(t[2])) maximal = false;
    f.all.push_back({static_cast<int>(used.size()), maximal});
    for (std::size_t i = from; i < ts.size(); ++i) {
      const auto& t = ts[i];
      if (used.count(t[0]) || used.count(t[1]) || used.count(t[2])) continue;
      used.insert(t.begin(), t.end());
      rec(i + 1);
      for (Int x : t) used.erase(x);
    }
  };
  rec(0);
  return f;
}

}  // namespace

TEST_SUITE("combinatorics") {
  TEST_CASE("balanced sets") {
    CHECK(validate_balanced(segment(1, 12)));
    CHECK_FALSE(validate_balanced(segment(1, 6)));
    CHECK(validate_balanced({1, 3, 5, 7, 9, 11, 2, 4, 6, 8, 10, 14}));
    CHECK_FALSE(validate_balanced({1, 3, 5, 7, 9, 11, 13, 4, 6, 8, 10, 14}));
    CHECK_FALSE(validate_balanced({1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}));
    CHECK(validate_balanced(segment(-5, 24)));
  }

  TEST_CASE("triple colors") {
    auto b = triple_color({5, 2, 3});
    REQUIRE(b);
    CHECK(b->color == Color::black);
    CHECK(b->central == 2);
    CHECK(b->elements == Triple{2, 3, 5});
    auto w = triple_color({1, 4, 6});
    REQUIRE(w);
    CHECK(w->color == Color::white);
    CHECK(w->central == 1);
    CHECK_FALSE(triple_color({1, 3, 5}));
    CHECK_FALSE(triple_color({2, 4, -6}));
    CHECK(triple_color({-1, 0, 2})->color == Color::white);
    CHECK_THROWS_AS(triple_color({1, 1, 2}), std::invalid_argument);
  }

  TEST_CASE("triple listing matches brute force") {
    auto s = segment(1, 12);
    CHECK(triples_in(s, Color::black).size() == all_triples(s, true, false).size());
    CHECK(triples_in(s, Color::white).size() == 90);
  }

  TEST_CASE("residue triples examples") {
    auto I = segment(1, 12);
    auto r = check_lemma_5_2(I, {{1, 2, 4}});
    CHECK(r.holds);
    CHECK(r.black_witness);
    REQUIRE(r.white_witness);
    CHECK(triple_color(*r.white_witness)->color == Color::white);
    auto e = check_lemma_5_2(I, {});
    CHECK(e.holds);
    CHECK(*e.black_witness == Triple{1, 2, 3});
    auto v = check_lemma_5_2(I, {{1, 2, 4}, {3, 6, 8}, {5, 10, 12}});
    CHECK(v.holds);
    CHECK_FALSE(v.black_witness);
    CHECK_THROWS_AS(check_lemma_5_2(I, {{1, 3, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(check_lemma_5_2(I, {{1, 2, 4}, {1, 6, 8}}), std::invalid_argument);
    CHECK_THROWS_AS(check_lemma_5_2(I, {{13, 2, 4}}), std::invalid_argument);
  }

  TEST_CASE("residue triples exhaustive") {
    auto I = segment(1, 12);
    auto r = lemma_5_2_exhaustive(I, 4);
    CHECK(r.failures == 0);
    // Families of disjoint white triples, counted independently.
    std::size_t n = 0;
    auto ws = all_triples(I, false, true);
    std::function<void(std::size_t, std::set<Int>&)> rec = [&](std::size_t from, std::set<Int>& used) {
      ++n;
      for (std::size_t i = from; i < ws.size(); ++i) {
        const auto& t = ws[i];
        if (used.count(t[0]) || used.count(t[1]) || used.count(t[2])) continue;
        used.insert(t.begin(), t.end());
        rec(i + 1, used);
        for (Int x : t) used.erase(x);
      }
    };
    std::set<Int> used;
    rec(0, used);
    CHECK(r.cases == n);
    CHECK(lemma_5_2_exhaustive(segment(-7, 12), 2).failures == 0);
    CHECK(lemma_5_2_exhaustive(I, 0).cases == 1);
  }

  TEST_CASE("covering inequality examples") {
    TriplePlacement p;
    p.segments = {segment(1, 12)};
    p.black_triples = {{1, 2, 3}, {4, 5, 7}};
    p.white_triples = {{6, 8, 9}, {10, 11, 12}};
    auto r = check_lemma_5_4(p);
    CHECK(r.hypotheses_ok);
    CHECK(r.I_count == 1);
    CHECK(r.omega == 12);
    CHECK(r.rhs == Rational(10));
    CHECK(r.inequality_ok);
    CHECK(r.identities_ok);

    TriplePlacement bad = p;
    bad.white_triples = {{3, 6, 8}};
    CHECK_THROWS_AS(check_lemma_5_4(bad), std::invalid_argument);

    TriplePlacement sing;
    sing.segments = {segment(1, 12)};
    sing.white_singletons = {1, 3, 5};
    auto s = check_lemma_5_4(sing);
    CHECK_FALSE(s.hyp_ii);
    CHECK_FALSE(s.hypotheses_ok);

    TriplePlacement mixed;
    mixed.segments = {segment(1, 12)};
    mixed.white_singletons = {1};
    mixed.black_triples = {{3, 5, 2}};
    CHECK_FALSE(check_lemma_5_4(mixed).hyp_iii);

    TriplePlacement span;
    span.segments = {segment(1, 12), segment(13, 12)};
    span.black_triples = {{11, 12, 13}};
    CHECK_THROWS_AS(check_lemma_5_4(span), std::invalid_argument);
  }

  TEST_CASE("covering inequality on random placements") {
    auto r = lemma_5_4_random(3, 300);
    CHECK(r.cases == 300);
    CHECK(r.failures == 0);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
      auto p = random_valid_placement(rng, 2);
      CHECK_NOTHROW(validate_placement(p));
      CHECK(check_lemma_5_4(p).hypotheses_ok);
    }
  }

  TEST_CASE("cover oracle") {
    auto I = segment(1, 12);
    CHECK(max_cover_oracle(I, true, false, CoverMode::optimal).optimal == 9);
    CHECK(max_cover_oracle(I, false, true, CoverMode::optimal).optimal == 9);
    CHECK(max_cover_oracle(I, true, true, CoverMode::optimal).optimal == 12);

    auto mixed = max_cover_oracle(I, true, true, CoverMode::all_maximal);
    CHECK(mixed.min_cover == 9);
    CHECK(mixed.max_cover == 12);
    CHECK(mixed.placements == 11700);
    CHECK(mixed.covered.size() == mixed.placements);

    auto black = max_cover_oracle(I, true, false, CoverMode::all_maximal);
    CHECK(black.min_cover == 9);
    CHECK(black.max_cover == 9);
    CHECK(black.placements == 1800);

    for (auto [b, w] : {std::pair{true, false}, std::pair{true, true}}) {
      auto f = families(I, b, w);
      int best = 0;
      std::map<Int, std::uint64_t> dist;
      for (auto [n, maximal] : f.all) {
        best = std::max(best, n);
        if (maximal) dist[n]++;
      }
      CHECK(max_cover_oracle(I, b, w, CoverMode::optimal).optimal == best);
      CHECK(max_cover_oracle(I, b, w, CoverMode::all_maximal).distribution == dist);
    }
    CHECK(max_cover_oracle({}, true, true, CoverMode::optimal).optimal == 0);
    CHECK_THROWS_AS(max_cover_oracle(segment(1, 36), true, true, CoverMode::optimal), std::invalid_argument);
  }
}
