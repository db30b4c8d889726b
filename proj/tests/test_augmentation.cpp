#include <doctest.h>

#include <random>

#include "augsos/augmentation.hpp"
#include "augsos/error.hpp"
#include "augsos/family.hpp"
#include "support.hpp"

using namespace augsos;
using namespace augsos::testing;

TEST_CASE("augmentation check") {
  const auto s3 = group("s3");
  CHECK(augmentation_check(RingElement::one_minus(s3, word(s3, "(123)"))));
  CHECK_FALSE(augmentation_check(RingElement::one(s3)));
  for (int n = 1; n <= 3; ++n) CHECK(augmentation_check(box(s3, n)));
}

TEST_CASE("generator decomposition of short words") {
  const auto f2 = group("f2");
  const Letter a = *f2->alphabet().find("a");
  const Letter b = *f2->alphabet().find("b");

  const auto single = generator_decompose(RingElement::one_minus(f2, word(f2, "a")), Side::Left);
  CHECK(single.coefficients[a] == RingElement::one(f2));

  // 1 - ab = (1 - a) + a (1 - b)
  const auto left = generator_decompose(RingElement::one_minus(f2, word(f2, "a b")), Side::Left);
  CHECK(left.coefficients[a] == RingElement::one(f2));
  CHECK(left.coefficients[b] == RingElement::monomial(f2, word(f2, "a")));
  CHECK_THROWS_AS(generator_decompose(RingElement::one(f2), Side::Left), Error);
}

TEST_CASE("generator decompositions recompose") {
  std::mt19937_64 rng(17);
  for (const char* name : {"f2", "s3", "d4", "q8", "z3_presented"}) {
    const auto g = group(name);
    for (int trial = 0; trial < 50; ++trial) {
      const RingElement x = random_ideal(g, rng, 5, 3);
      CHECK(generator_decompose(x, Side::Left).recompose() == x);
      CHECK(generator_decompose(x, Side::Right).recompose() == x);
    }
  }
}

TEST_CASE("torsion witnesses") {
  const auto z2 = group("z2");
  const Word t = word(z2, "t");
  const auto two = torsion_square_witness(z2, t, 2);
  CHECK(two.value() == 2 * RingElement::one_minus(z2, t));
  CHECK(torsion_square_witness(z2, {}, 5).empty());
  CHECK_THROWS_AS(torsion_square_witness(z2, t, 3), Error);

  const auto z3 = group("z3");
  const Word t3 = word(z3, "t");
  const auto three = torsion_square_witness(z3, t3, 3);
  CHECK(three.value() == 3 * RingElement::one_minus(z3, t3));
  CHECK(three.factors_in_ideal());
}

TEST_CASE("commutator witnesses") {
  const auto f2 = group("f2");
  const Word a = word(f2, "a"), b = word(f2, "b");
  const auto expr = commutator_square_witness(f2, a, b);
  const Word comm = f2->multiply(f2->multiply(f2->invert(b), f2->invert(a)), f2->multiply(b, a));
  CHECK(expr.value() == RingElement::one_minus(f2, comm));
  CHECK(expr.factors_in_ideal());
  CHECK(commutator_square_witness(f2, a, a).empty());
  const auto z3 = group("z3");
  CHECK(commutator_square_witness(z3, word(z3, "t"), word(z3, "t2")).empty());
}

TEST_CASE("idempotence decompositions") {
  const auto z2 = group("z2");
  const RingElement x = RingElement::one_minus(z2, word(z2, "t"));
  const auto expr = idempotence_decompose(x, 2);
  CHECK(expr.value() == x);
  CHECK(expr.factors_in_ideal());
  CHECK(idempotence_decompose(RingElement(z2), 2).empty());

  const auto s3 = group("s3");
  const RingElement y = RingElement::one_minus(s3, word(s3, "(123)"));
  const auto deep = idempotence_decompose(y, 3);
  CHECK(deep.value() == y);
  for (const auto& t : deep.terms) CHECK(t.factors.size() == 3);

  CHECK_THROWS_AS(idempotence_decompose(RingElement::one_minus(group("f2"), word(group("f2"), "a")), 2), Error);
}

TEST_CASE("idempotence decompositions on random elements") {
  std::mt19937_64 rng(23);
  for (const char* name : {"s3", "d4", "q8"}) {
    const auto g = group(name);
    for (int trial = 0; trial < 20; ++trial) {
      const RingElement x = random_ideal(g, rng, 3);
      for (int depth : {2, 3}) {
        const auto expr = idempotence_decompose(x, depth);
        CHECK(expr.value() == x);
        CHECK(expr.factors_in_ideal());
      }
    }
  }
}

TEST_CASE("power membership and filtrations") {
  const auto s3 = group("s3");
  CHECK(power_membership(laplacian(s3), 2));
  CHECK_FALSE(power_membership(RingElement::one(s3), 1));
  const auto z2 = group("z2");
  CHECK(power_membership(RingElement::one_minus(z2, word(z2, "t")), 2));

  std::mt19937_64 rng(2);
  for (const char* name : {"s3", "q8"}) {
    const auto g = group(name);
    for (int trial = 0; trial < 5; ++trial) {
      const RingElement x = random_ideal(g, rng, 3);
      for (int n = 1; n <= 3; ++n) CHECK(power_membership(x, n));
    }
  }
  CHECK(quotient_dims(s3, 4) == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK(quotient_dims(z2, 4) == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK(dimension_subgroup(s3, 2).size() == 6);
  CHECK_THROWS_AS(power_membership(RingElement::one(group("f2")), 1), Error);
}

TEST_CASE("abelianization functional") {
  const auto z = group("z");
  const Letter t = *z->alphabet().find("t");
  CHECK(abelianization_functional(RingElement::one_minus(z, word(z, "t")), t) == -1);

  const auto f2 = group("f2");
  const Letter a = *f2->alphabet().find("a");
  CHECK(abelianization_functional(RingElement::one_minus(f2, word(f2, "b")), a) == 0);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const RingElement p = random_ideal(f2, rng, 2, 2) * random_ideal(f2, rng, 2, 2);
    CHECK(abelianization_functional(p, a) == 0);
  }
  CHECK_THROWS_AS(abelianization_functional(RingElement(group("s3")), 0), Error);
}
