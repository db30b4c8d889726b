#include <doctest.h>

#include <random>

#include "augsos/error.hpp"
#include "augsos/family.hpp"
#include "augsos/json_io.hpp"
#include "support.hpp"

using namespace augsos;
using namespace augsos::testing;

TEST_CASE("groups round-trip") {
  for (const char* name : {"z", "f2", "z2", "z3", "z3_presented", "s3", "d4", "q8"}) {
    const auto g = group(name);
    const Json j = group_to_json(*g);
    Loader fresh;
    const auto again = fresh.group(j, data_dir());
    CHECK(group_to_json(*again) == j);
    CHECK(again->alphabet().names() == g->alphabet().names());
  }
}

TEST_CASE("the loader shares equal groups") {
  Loader l;
  const auto a = l.group_file(data_dir() / "groups" / "s3.json");
  const auto b = l.group(group_to_json(*a), ".");
  CHECK(a == b);
}

TEST_CASE("elements round-trip bit-exactly") {
  std::mt19937_64 rng(3);
  for (const char* name : {"f2", "s3", "z3_presented"}) {
    const auto g = group(name);
    for (int trial = 0; trial < 20; ++trial) {
      const RingElement x = random_element(g, rng, 5);
      const std::string text = dump_json(element_to_json(x));
      const RingElement y = loader().element(Json::parse(text), ".");
      CHECK(y == x);
      CHECK(dump_json(element_to_json(y)) == text);
    }
  }
}

TEST_CASE("elements may reference a group file") {
  const Json doc = Json::parse(R"({"group": "groups/z.json", "terms": [{"g": "t", "c": "-1/2"}, {"g": "e", "c": 1}]})");
  const RingElement x = loader().element(doc, data_dir());
  CHECK(x.coefficient(word(group("z"), "t")) == Rational(-1, 2));
  CHECK(x.group() == group("z"));
}

TEST_CASE("witness declarations") {
  Json spec = group_to_json(*group("z3_presented"));
  spec["witnesses"] = Json::parse(R"({"t": {"m": 3, "commutators": []}})");
  Loader l;
  const auto g = l.group(spec, ".");
  REQUIRE(g->witness());
  CHECK(g->validate_witness(*g->witness()).empty());

  spec["witnesses"]["t"]["m"] = 2;
  CHECK_THROWS_AS(l.group(spec, "."), Error);
  Loader lenient(LoadOptions{{}, 0, false});
  CHECK_FALSE(lenient.group(spec, ".")->witness());
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(loader().group(Json::parse(R"({"kind": "torus"})"), "."), Error);
  CHECK_THROWS_AS(loader().element(Json::parse(R"({"terms": []})"), "."), Error);
  CHECK_THROWS_AS(loader().element(Json::parse(R"({"group": "groups/z.json", "terms": [{"g": "q", "c": "1"}]})"), data_dir()),
                  Error);
  CHECK_THROWS_AS(loader().element(Json::parse(R"({"group": "groups/z.json", "terms": [{"g": "t", "c": 0.5}]})"), data_dir()),
                  Error);
  CHECK_THROWS_AS(read_json_file(data_dir() / "missing.json"), Error);
}

TEST_CASE("certificates round-trip") {
  const auto s3 = group("s3");
  const auto& w = *s3->witness();
  std::mt19937_64 rng(4);
  const SosCertificate c = delta_order_unit_certificate(random_hermitian_ideal(s3, rng), w);
  const std::string text = dump_json(certificate_to_json(c));
  const SosCertificate back = loader().certificate(Json::parse(text), ".");
  CHECK(dump_json(certificate_to_json(back)) == text);
  CHECK(verify(back).verdict == Verdict::Verified);
}
