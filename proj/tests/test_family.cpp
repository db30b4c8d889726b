#include <doctest.h>

#include <random>

#include "augsos/augmentation.hpp"
#include "augsos/error.hpp"
#include "augsos/family.hpp"
#include "support.hpp"

using namespace augsos;
using namespace augsos::testing;

TEST_CASE("D of simple matrices") {
  const auto s3 = group("s3");
  const std::size_t k = s3->alphabet().size();
  CHECK(apply_D(RingMatrix::identity(s3, k)) == laplacian(s3));
  CHECK(apply_D(RingMatrix(s3, k, k)).is_zero());
  CHECK(apply_D(diag_k(laplacian(s3), k)) == box(s3, 2));
  CHECK_THROWS_AS(apply_D(RingMatrix(s3, 2, 2)), Error);
}

TEST_CASE("box on Z") {
  const auto z = group("z");
  CHECK(box(z, 0) == RingElement::one(z));
  CHECK(box(z, 1) == laplacian(z));
  CHECK(box(z, 1) == elem(z, {{"e", 4}, {"t", -2}, {"t^-1", -2}}));
}

TEST_CASE("box equals its closed form") {
  for (const char* name : {"f2", "s3", "z"}) {
    const auto g = group(name);
    for (int n = 0; n <= 3; ++n) {
      CHECK(box(g, n) == box_closed(g, n));
      CHECK(u_n(RingElement::one(g), n) == box(g, n));
    }
  }
}

TEST_CASE("u_n") {
  const auto s3 = group("s3");
  CHECK(u_n(laplacian(s3), 1) == box(s3, 2));
  CHECK(u_n(RingElement(s3), 2).is_zero());
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const RingElement u = random_hermitian_ideal(s3, rng);
    CHECK(u_n(u, 2).is_hermitian());
    CHECK(u_n(u, 3) == u_n(u_n(u, 1), 2));
  }
}

TEST_CASE("E and box_st") {
  const auto f2 = group("f2");
  const Letter a = *f2->alphabet().find("a");
  const Letter b = *f2->alphabet().find("b");
  const RingMatrix e = E_matrix(f2, {a}, {b}, {}, Sign::Plus);
  const RingElement aa = RingElement::one_minus(f2, word(f2, "a"));
  const RingElement bb = RingElement::one_minus(f2, word(f2, "b"));
  CHECK(e(0, 0).is_zero());
  CHECK(e(1, 1).is_zero());
  CHECK(e(0, 1) == aa * bb);
  CHECK(e(1, 0) == bb.star() * aa.star());
  CHECK(e.is_hermitian());
  const RingMatrix bst = box_st(f2, {a}, {b});
  CHECK(bst(0, 0) == aa * aa.star());
  CHECK(bst(1, 1) == bb.star() * bb);
  CHECK(bst(0, 0).augmentation() == 0);
  CHECK_THROWS_AS(E_matrix(f2, {a}, {a, b}, {}, Sign::Plus), Error);

  std::mt19937_64 rng(9);
  const auto s3 = group("s3");
  std::uniform_int_distribution<int> letter(0, s3->alphabet().size() - 1);
  std::uniform_int_distribution<std::size_t> elem_pick(0, s3->order() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    const GeneratorTuple s{letter(rng), letter(rng)}, t{letter(rng), letter(rng)};
    CHECK(E_matrix(s3, s, t, s3->element_words()[elem_pick(rng)], trial % 2 ? Sign::Plus : Sign::Minus).is_hermitian());
  }
}

TEST_CASE("preimage identities") {
  for (const char* name : {"f2", "s3"}) {
    const auto g = group(name);
    const RingElement delta = laplacian(g);
    CHECK(apply_D(laplacian_squared_preimage(g)) == delta * delta);
    CHECK(laplacian_squared_preimage(g).is_hermitian());
    RingElement expected(g);
    for (Letter s = 0; s < g->alphabet().size(); ++s) {
      const RingElement x = RingElement::one_minus(g, Word{s});
      expected += x.star() * (x * x.star()) * x;
    }
    CHECK(apply_D(sq_preimage(g)) == expected);
  }
}

TEST_CASE("hermitian part keeps D for hermitian images") {
  std::mt19937_64 rng(14);
  const auto s3 = group("s3");
  const std::size_t k = s3->alphabet().size();
  for (int trial = 0; trial < 10; ++trial) {
    RingMatrix m(s3, k, k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) m(i, j) = random_element(s3, rng, 2);
    }
    const RingMatrix h = hermitian_part(m);
    CHECK(h.is_hermitian());
    CHECK(apply_D(h).is_hermitian());
    if (apply_D(m).is_hermitian()) CHECK(apply_D(m) == apply_D(h));
    const RingElement eta = apply_D(h);
    CHECK(apply_D(hermitian_part(d_preimage(eta))) == eta);
  }
}

TEST_CASE("D-preimages") {
  const auto s3 = group("s3");
  const RingElement xi = RingElement::one_minus(s3, word(s3, "(123)")) + RingElement::one_minus(s3, word(s3, "(132)"));
  CHECK(apply_D(d_preimage(xi)) == xi);
  CHECK(d_preimage(RingElement(s3)).is_zero());
  CHECK(apply_D(d_preimage(laplacian(s3))) == laplacian(s3));
  CHECK_THROWS_AS(d_preimage(RingElement::one(s3)), Error);
  const auto f2 = group("f2");
  CHECK_THROWS_AS(d_preimage(RingElement::one_minus(f2, word(f2, "a"))), Error);

  std::mt19937_64 rng(6);
  for (const char* name : {"s3", "d4", "q8"}) {
    const auto g = group(name);
    for (int trial = 0; trial < 100; ++trial) {
      const RingElement x = random_hermitian_ideal(g, rng, 2);
      const RingMatrix m = d_preimage(x);
      CHECK(apply_D(m) == x);
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) CHECK(m(i, j).augmentation() == 0);
      }
      CHECK(apply_D(d_preimage_group_ring(x, *g->witness())) == x);
    }
  }
}
