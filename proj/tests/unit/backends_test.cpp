#include "doctest.h"

#include <random>

#include "tlab/backends.hpp"
#include "tlab/pl.hpp"

using namespace tlab;

namespace {

const char* kW0 = "a B A b^4 a B A B a B A B a b^4 A B a B A B";

// Letter-by-letter Fox calculus: the term of a letter is the abelian image of
// its prefix, times -x^-1 for an inverse letter.
std::pair<std::map<Pair, Int>, std::map<Pair, Int>> fox_oracle(const Word& w) {
  std::map<Pair, Int> da, db;
  Int i = 0, j = 0;
  for (const auto& L : letters(w)) {
    auto& d = L.sub == 0 ? da : db;
    Int& c = L.sub == 0 ? i : j;
    if (L.sign > 0) {
      d[{i, j}] += 1;
      ++c;
    } else {
      --c;
      d[{i, j}] -= 1;
    }
  }
  for (auto* m : {&da, &db})
    for (auto it = m->begin(); it != m->end();) it = it->second == 0 ? m->erase(it) : std::next(it);
  return {da, db};
}

// Lamplighter walk: eta^e adds e at the cursor, xi^e moves it.
std::pair<std::map<Int, Int>, Int> lamp_oracle(const Word& w) {
  std::map<Int, Int> lamp;
  Int cur = 0;
  for (const auto& s : w) {
    if (s.sub == 0) {
      lamp[cur] += s.exp;
      if (lamp[cur] == 0) lamp.erase(cur);
    } else {
      cur += s.exp;
    }
  }
  return {lamp, cur};
}

Word random_ab_word(std::mt19937_64& rng, int len) {
  std::uniform_int_distribution<Int> sub(0, 1), e(-3, 3);
  Word w;
  for (int k = 0; k < len; ++k) push_syllable(w, {sub(rng), e(rng)});
  return w;
}

template <class G>
void group_laws(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 200; ++k) {
    auto x = evaluate<G>(random_ab_word(rng, 6));
    auto y = evaluate<G>(random_ab_word(rng, 6));
    auto z = evaluate<G>(random_ab_word(rng, 6));
    CHECK(G::mul(G::mul(x, y), z) == G::mul(x, G::mul(y, z)));
    CHECK(G::is_identity(G::mul(x, G::inv(x))));
    CHECK(G::mul(G::identity(), x) == x);
    CHECK(G::mul(x, G::identity()) == x);
  }
}

}  // namespace

TEST_SUITE("backends") {
  TEST_CASE("group laws") {
    group_laws<FGroup>(1);
    group_laws<Z2Group>(2);
    group_laws<WreathGroup>(3);
    group_laws<MetabelianGroup>(4);
  }

  TEST_CASE("F backend matches the PL oracle") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
      Word u = random_ab_word(rng, 5), v = random_ab_word(rng, 5);
      CHECK((evaluate<FGroup>(u) == evaluate<FGroup>(v)) == pl_equal(u, v));
    }
  }

  TEST_CASE("wreath examples") {
    auto c = wreath_reduce(parse_word("a b A B"));
    CHECK(c.lamp == std::map<Int, Int>{{0, 1}, {1, -1}});
    CHECK(c.shift == 0);
    CHECK_FALSE(WreathGroup::is_identity(c));
    auto w = alternating<WreathGroup>({1, 1, -1, -1}, {1, -1, 1, -1});
    CHECK(WreathGroup::is_identity(w));
    CHECK(WreathGroup::is_identity(wreath_reduce(Word{})));
    CHECK(render(parse_word("a b a B A b A B")) == "x0 x1 x0 x1^-1 x0^-1 x1 x0^-1 x1^-1");
    CHECK(WreathGroup::is_identity(wreath_reduce(parse_word("a b a B A b A B"))));
  }

  TEST_CASE("wreath matches the lamplighter walk") {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 300; ++k) {
      Word w = random_ab_word(rng, 8);
      auto x = wreath_reduce(w);
      auto [lamp, cur] = lamp_oracle(w);
      CHECK(x.lamp == lamp);
      CHECK(x.shift == cur);
      CHECK(WreathGroup::is_identity(x) == (lamp.empty() && cur == 0));
      CHECK(WreathGroup::parse(WreathGroup::render(x)) == x);
    }
  }

  TEST_CASE("metabelian examples") {
    CHECK(metabelian_is_trivial(parse_word(kW0)));
    CHECK_FALSE(FGroup::is_identity(FGroup::parse(kW0)));
    auto c = evaluate<MetabelianGroup>(parse_word("a b A B"));
    CHECK_FALSE(MetabelianGroup::is_identity(c));
    CHECK(c.da.str() == "1*s^0*t^0 + -1*s^0*t^1");
    CHECK(metabelian_is_trivial(Word{}));
  }

  TEST_CASE("metabelian matches letterwise Fox calculus") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 300; ++k) {
      Word w = random_ab_word(rng, 8);
      auto x = evaluate<MetabelianGroup>(w);
      auto [da, db] = fox_oracle(w);
      CHECK(x.da.terms() == da);
      CHECK(x.db.terms() == db);
      CHECK(MetabelianGroup::fox_identity_holds(x));
      CHECK(metab_parse_rendered(MetabelianGroup::render(x)) == x);
    }
  }

  TEST_CASE("Z2 backend") {
    auto x = Z2Group::parse("a^2 b a^-2 B");
    CHECK(Z2Group::is_identity(x));
    auto y = Z2Group::parse("a^3 B^2");
    CHECK(Z2Group::abelian(y) == Pair{3, -2});
    CHECK(Z2Group::height(y) == 5);
    CHECK(Z2Group::render(y) == "x0^3 x1^-2");
    CHECK(Z2Group::parse(Z2Group::render(y)) == y);
    CHECK(Z2Group::render(Z2Group::identity()) == "1");
  }

  TEST_CASE("two-generator backends reject larger subscripts") {
    CHECK_THROWS_AS(evaluate<Z2Group>(parse_word("x2")), std::domain_error);
    CHECK_THROWS_AS(evaluate<WreathGroup>(parse_word("x0 x3")), std::domain_error);
    CHECK_THROWS_AS(evaluate<MetabelianGroup>(parse_word("x5")), std::domain_error);
    CHECK_NOTHROW(evaluate<FGroup>(parse_word("x5")));
  }

  TEST_CASE("power helpers agree") {
    auto x = FGroup::parse("x0 x2^-1 x1");
    for (Int k = -4; k <= 4; ++k) CHECK(gpow<FGroup>(x, k) == power<FGroup>(x, k));
    CHECK(gpow<FGroup>(FGroup::xi(), -401) == FGroup::parse("x1^-401"));
  }

  TEST_CASE("membership in H and H'") {
    CHECK(in_H<FGroup>(FGroup::parse("x0^5")));
    CHECK(in_H<FGroup>(FGroup::identity()));
    CHECK(in_Hprime<FGroup>(FGroup::identity()));
    CHECK_FALSE(in_H<FGroup>(FGroup::parse("x1")));
    CHECK(in_Hprime<FGroup>(FGroup::parse("x1^-3")));
    CHECK_FALSE(in_Hprime<FGroup>(FGroup::parse("x2")));
    CHECK_FALSE(in_H<FGroup>(FGroup::parse("x1 x0 x1^-1")));
    CHECK(in_H<Z2Group>(Z2Group::parse("b a B")));
    CHECK_FALSE(in_H<WreathGroup>(WreathGroup::parse("b a B")));
    CHECK(element_color<FGroup>(FGroup::parse("x0 x1")) == Color::black);
    CHECK(element_color<FGroup>(FGroup::parse("x0")) == Color::white);
  }
}
