#include <doctest.h>

#include <random>

#include "augsos/error.hpp"
#include "augsos/exact_linalg.hpp"
#include "augsos/rational.hpp"
#include "augsos/ring.hpp"
#include "support.hpp"

using namespace augsos;
using namespace augsos::testing;

TEST_CASE("rationals parse and print canonically") {
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(parse_rational("-0/7")) == "0");
  CHECK(format_rational(parse_rational("+5")) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK(approximate(0.3333333333333333, 1000) == Rational(1, 3));
  CHECK(approximate(-2.5, 10) == Rational(-5, 2));
}

TEST_CASE("convolution on Z") {
  const auto z = group("z");
  const RingElement x = RingElement::one_minus(z, word(z, "t"));
  CHECK(x * x.star() == elem(z, {{"e", 2}, {"t", -1}, {"t^-1", -1}}));
  CHECK(RingElement::one(z) * x == x);
  CHECK(x.star().star() == x);
}

TEST_CASE("augmentation") {
  const auto s3 = group("s3");
  CHECK(RingElement::one_minus(s3, word(s3, "(12)")).augmentation() == 0);
  CHECK(elem(s3, {{"e", 2}, {"(12)", 3}, {"(123)", -5}}).augmentation() == 0);
}

TEST_CASE("ring axioms on random elements") {
  std::mt19937_64 rng(3);
  for (const char* name : {"f2", "s3", "q8"}) {
    const auto g = group(name);
    for (int trial = 0; trial < 100; ++trial) {
      const RingElement a = random_element(g, rng), b = random_element(g, rng), c = random_element(g, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b).star() == b.star() * a.star());
      CHECK((a * b).augmentation() == a.augmentation() * b.augmentation());
      CHECK(a.star().augmentation() == a.augmentation());
    }
  }
}

TEST_CASE("no zero coefficients are stored") {
  const auto z = group("z");
  RingElement x = elem(z, {{"t", 1}});
  x -= elem(z, {{"t", 1}});
  CHECK(x.is_zero());
  CHECK(x.size() == 0);
}

TEST_CASE("mixed groups are rejected") {
  const auto z = group("z");
  const auto s3 = group("s3");
  CHECK_THROWS_AS(RingElement::one(z) + RingElement::one(s3), Error);
}

TEST_CASE("matrix involution") {
  std::mt19937_64 rng(8);
  const auto s3 = group("s3");
  for (int trial = 0; trial < 20; ++trial) {
    RingMatrix a(s3, 2, 2), b(s3, 2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        a(i, j) = random_element(s3, rng);
        b(i, j) = random_element(s3, rng);
      }
    }
    CHECK(a.star().star() == a);
    CHECK((a * b).star() == b.star() * a.star());
  }
  const RingElement delta = elem(s3, {{"e", 6}, {"(12)", -2}, {"(13)", -2}, {"(23)", -2}});
  CHECK(diag_k(delta, 2).is_hermitian());
  CHECK_THROWS_AS(RingMatrix(s3, 2, 3) * RingMatrix(s3, 2, 3), Error);
}

TEST_CASE("exact LDL") {
  CHECK(ldl_pivoted(QMatrix::identity(3)).psd);
  CHECK(ldl_pivoted(QMatrix(3, 3)).psd);
  QMatrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 1;
  const LdlResult r = ldl_pivoted(m);
  CHECK_FALSE(r.psd);
  REQUIRE(r.witness);
  CHECK(quadratic_form(m, *r.witness) < 0);
}

namespace {

Rational det(QMatrix m) {
  const std::size_t n = m.rows();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return d;
}

// PSD iff every principal minor is nonnegative.
bool psd_by_minors(const QMatrix& a) {
  const std::size_t n = a.rows();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    QMatrix sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = a(idx[i], idx[j]);
    }
    if (det(sub) < 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("LDL agrees with principal minors on random 5x5 matrices") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> v(-3, 3);
  std::uniform_int_distribution<int> rank(1, 5);
  int psd_seen = 0, indefinite_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    QMatrix a(5, 5);
    // B^T B (PSD, possibly singular) shifted down by a random amount.
    const int r = rank(rng);
    std::vector<QVector> rows(r, QVector(5));
    for (auto& row : rows) {
      for (auto& x : row) x = Rational(v(rng));
    }
    const Rational shift(v(rng) < 0 ? v(rng) * v(rng) : 0, 2);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        for (const auto& row : rows) a(i, j) += row[i] * row[j];
        if (i == j) a(i, j) -= shift;
      }
    }
    const LdlResult ldl = ldl_pivoted(a);
    CHECK(ldl.psd == psd_by_minors(a));
    if (!ldl.psd) {
      REQUIRE(ldl.witness);
      CHECK(quadratic_form(a, *ldl.witness) < 0);
      ++indefinite_seen;
    } else {
      ++psd_seen;
    }
  }
  CHECK(psd_seen > 10);
  CHECK(indefinite_seen > 10);
}
