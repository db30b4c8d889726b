#include <doctest.h>

#include <random>

#include "augsos/error.hpp"
#include "augsos/group.hpp"
#include "support.hpp"

using namespace augsos;
using augsos::testing::group;
using augsos::testing::word;

TEST_CASE("free reduction cancels inverse pairs") {
  const auto f2 = group("f2");
  CHECK(f2->normalize(f2->parse_word("a a^-1")).empty());
  CHECK(f2->format_word(f2->normalize(f2->parse_word("a b b^-1 a"))) == "a a");
  CHECK(f2->format_word(f2->invert(f2->parse_word("a b"))) == "b^-1 a^-1");
  CHECK(f2->multiply(word(f2, "a b"), {}) == word(f2, "a b"));
}

TEST_CASE("finite table normal forms") {
  const auto s3 = group("s3");
  CHECK(s3->normalize(s3->parse_word("(12) (12)")).empty());
  CHECK(s3->multiply(word(s3, "(12)"), word(s3, "(13)")) == word(s3, "(132)"));
  CHECK(s3->order() == 6);
  CHECK(s3->element_order(word(s3, "(12)")) == 2);
  CHECK(s3->element_order({}) == 1);
}

TEST_CASE("presented cyclic group") {
  const auto z3 = group("z3_presented");
  CHECK(z3->format_word(z3->normalize(z3->parse_word("t t t t"))) == "t");
  CHECK(z3->normalize(z3->parse_word("t t t")).empty());
  CHECK(z3->element_order(z3->parse_word("t")) == 3);
  CHECK(z3->warnings().empty());
}

TEST_CASE("infinite order in free groups") {
  const auto f2 = group("f2");
  CHECK_FALSE(f2->element_order(word(f2, "a b")).has_value());
}

TEST_CASE("normalize is idempotent and inverses cancel") {
  std::mt19937_64 rng(11);
  for (const char* name : {"f2", "s3", "d4", "q8", "z3_presented"}) {
    const auto g = group(name);
    std::uniform_int_distribution<int> letter(0, g->alphabet().size() - 1), len(0, 9);
    for (int trial = 0; trial < 200; ++trial) {
      Word w;
      for (int i = len(rng); i > 0; --i) w.push_back(letter(rng));
      const Word n = g->normalize(w);
      CHECK(g->normalize(n) == n);
      CHECK(g->multiply(n, g->invert(n)).empty());
    }
  }
}

TEST_CASE("finite normal forms agree with the table") {
  std::mt19937_64 rng(5);
  for (const char* name : {"s3", "d4", "q8"}) {
    const auto g = group(name);
    const auto& table = g->table();
    std::uniform_int_distribution<std::size_t> pick(0, g->order() - 1);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t x = pick(rng), y = pick(rng);
      Word concat = g->element_words()[x];
      const Word& wy = g->element_words()[y];
      concat.insert(concat.end(), wy.begin(), wy.end());
      CHECK(g->element_index(g->normalize(concat)) == table[x][y]);
    }
  }
}

TEST_CASE("alphabet pairing is an involution") {
  for (const char* name : {"f2", "z", "s3", "d4", "q8", "z3", "z3_presented"}) {
    const auto g = group(name);
    for (Letter l = 0; l < g->alphabet().size(); ++l) {
      CHECK(g->alphabet().inverse(g->alphabet().inverse(l)) == l);
      CHECK(g->multiply(Word{l}, Word{g->alphabet().inverse(l)}).empty());
    }
  }
}

TEST_CASE("witness validation") {
  const auto s3 = group("s3");
  CHECK(s3->validate_witness(s3->default_finite_witness()).empty());
  FiniteAbelianizationWitness bad = s3->default_finite_witness();
  const Letter t12 = *s3->alphabet().find("(12)");
  bad.per_letter[t12].exponent = 3;
  const auto failing = s3->validate_witness(bad);
  REQUIRE(failing.size() == 1);
  CHECK(failing[0] == "(12)");

  Group copy = *s3;
  CHECK_THROWS_AS(copy.set_witness(bad), Error);
}

TEST_CASE("commutator witnesses on a presented group") {
  // Z3 presented: t^3 = e with no commutators; t^-1 derived automatically.
  const auto z3 = group("z3_presented");
  std::vector<std::optional<TorsionWitness>> partial(z3->alphabet().size());
  partial[*z3->alphabet().find("t")] = TorsionWitness{3, {}};
  const auto full = complete_witness(*z3, partial);
  CHECK(z3->validate_witness(full).empty());
  CHECK(full.per_letter[*z3->alphabet().find("t^-1")].exponent == 3);
}

TEST_CASE("presented rewriting budget") {
  GeneratorAlphabet a;
  const Letter x = a.add("x");
  const Letter y = a.add("y");
  a.pair(x, x);
  a.pair(y, y);
  // x y -> y x and y x -> x y loop forever.
  GroupLimits limits;
  limits.rewrite_budget = 1000;
  const Group g = Group::make_presented(a, {{{x, y}, {y, x}}, {{y, x}, {x, y}}}, limits);
  try {
    (void)g.normalize(Word{x, y});
    FAIL("expected the budget to run out");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NormalizationBudgetExceeded);
  }
}

TEST_CASE("bad finite tables are rejected") {
  // Not associative-consistent: "a" squares to itself but isn't the identity.
  CHECK_THROWS_AS(Group::make_finite({"e", "a"}, {{0, 1}, {1, 1}}, {"a"}), Error);
  CHECK_THROWS_AS(Group::make_finite({"e", "a", "b"}, {{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}, {"a"}), Error);
}

TEST_CASE("balls") {
  const auto z = group("z");
  CHECK(z->ball(1, 100).size() == 3);
  CHECK(z->ball(2, 100).size() == 5);
  CHECK_THROWS_AS(group("f2")->ball(10, 50), Error);
}
