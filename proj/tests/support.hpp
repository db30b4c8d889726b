#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "augsos/json_io.hpp"
#include "augsos/ring.hpp"

namespace augsos::testing {

inline std::filesystem::path data_dir() { return AUGSOS_DATA_DIR; }
inline std::filesystem::path golden_dir() { return AUGSOS_GOLDEN_DIR; }

// One loader per process so groups loaded twice are the same object.
inline Loader& loader() {
  static Loader l;
  return l;
}

inline GroupPtr group(const std::string& name) { return loader().group_file(data_dir() / "groups" / (name + ".json")); }

inline RingElement elem(const GroupPtr& g, std::initializer_list<std::pair<const char*, long>> terms) {
  RingElement x(g);
  for (const auto& [w, c] : terms) x += RingElement::monomial(g, g->parse_word(w), c);
  return x;
}

inline Word word(const GroupPtr& g, const char* text) { return g->normalize(g->parse_word(text)); }

// Random words: whole group when finite, else a ball.
inline std::vector<Word> pool(const GroupPtr& g, int radius = 2) {
  if (g->kind() == GroupKind::Finite) return g->element_words();
  return g->ball(radius, 5000);
}

inline Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
  Rational r(num(rng), den(rng));
  r.canonicalize();  // mpq_class(p, q) does not reduce
  return r;
}

inline RingElement random_element(const GroupPtr& g, std::mt19937_64& rng, int terms = 4, int radius = 2) {
  const auto words = pool(g, radius);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  RingElement x(g);
  for (int i = 0; i < terms; ++i) x += RingElement::monomial(g, words[pick(rng)], small_rational(rng));
  return x;
}

// sum c_i (1 - g_i)
inline RingElement random_ideal(const GroupPtr& g, std::mt19937_64& rng, int terms = 4, int radius = 2) {
  const auto words = pool(g, radius);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  RingElement x(g);
  for (int i = 0; i < terms; ++i) x += small_rational(rng) * RingElement::one_minus(g, words[pick(rng)]);
  return x;
}

inline RingElement random_hermitian_ideal(const GroupPtr& g, std::mt19937_64& rng, int terms = 3, int radius = 2) {
  const RingElement x = random_ideal(g, rng, terms, radius);
  return x + x.star();
}

}  // namespace augsos::testing
