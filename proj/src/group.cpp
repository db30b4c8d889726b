#include "augsos/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "augsos/error.hpp"

namespace augsos {

// ---------------------------------------------------------------------------
// GeneratorAlphabet

Letter GeneratorAlphabet::add(std::string name) {
  if (name.empty() || name == "e" || name.find_first_of(" \t\n") != std::string::npos) {
    throw Error(ErrorCode::InvalidGroup, "invalid generator label '" + name + "'");
  }
  if (find(name)) throw Error(ErrorCode::InvalidGroup, "duplicate generator label '" + name + "'");
  names_.push_back(std::move(name));
  inverse_.push_back(-1);
  return size() - 1;
}

void GeneratorAlphabet::pair(Letter a, Letter b) {
  inverse_.at(a) = b;
  inverse_.at(b) = a;
}

std::optional<Letter> GeneratorAlphabet::find(std::string_view name) const {
  for (Letter l = 0; l < size(); ++l) {
    if (names_[l] == name) return l;
  }
  return std::nullopt;
}

void GeneratorAlphabet::check() const {
  if (names_.empty()) throw Error(ErrorCode::InvalidGroup, "empty generating set");
  for (Letter l = 0; l < size(); ++l) {
    const Letter inv = inverse_[l];
    if (inv < 0 || inv >= size() || inverse_[inv] != l) {
      throw Error(ErrorCode::InvalidGroup, "generator '" + names_[l] + "' has no inverse pairing");
    }
  }
}

// ---------------------------------------------------------------------------
// Construction

Group Group::make_free(const std::vector<std::string>& names) {
  Group g;
  g.kind_ = GroupKind::Free;
  for (const auto& n : names) g.alphabet_.add(n);
  for (Letter l = 0; l < static_cast<Letter>(names.size()); ++l) {
    const Letter inv = g.alphabet_.add(names[l] + "^-1");
    g.alphabet_.pair(l, inv);
  }
  g.alphabet_.check();
  return g;
}

Group Group::make_finite(std::vector<std::string> element_names,
                         std::vector<std::vector<std::size_t>> table,
                         const std::vector<std::string>& generators) {
  const std::size_t n = element_names.size();
  if (n == 0) throw Error(ErrorCode::InvalidGroup, "finite group without elements");
  if (table.size() != n) throw Error(ErrorCode::InvalidGroup, "table row count differs from element count");
  for (const auto& row : table) {
    if (row.size() != n) throw Error(ErrorCode::InvalidGroup, "table is not square");
    for (auto v : row) {
      if (v >= n) throw Error(ErrorCode::InvalidGroup, "table entry out of range");
    }
  }
  {
    std::set<std::string> seen(element_names.begin(), element_names.end());
    if (seen.size() != n) throw Error(ErrorCode::InvalidGroup, "duplicate element names");
  }

  Group g;
  g.kind_ = GroupKind::Finite;

  std::optional<std::size_t> identity;
  for (std::size_t i = 0; i < n && !identity; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = table[i][j] == j && table[j][i] == j;
    if (ok) identity = i;
  }
  if (!identity) throw Error(ErrorCode::InvalidGroup, "table has no identity");
  g.identity_ = *identity;

  std::vector<std::size_t> inverse(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] == g.identity_ && table[j][i] == g.identity_) {
        inverse[i] = j;
        break;
      }
    }
    if (inverse[i] == n) throw Error(ErrorCode::InvalidGroup, "element '" + element_names[i] + "' has no inverse");
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw Error(ErrorCode::InvalidGroup, "table is not associative");
        }
      }
    }
  }

  auto index_of_name = [&](const std::string& name) {
    const auto it = std::find(element_names.begin(), element_names.end(), name);
    if (it == element_names.end()) throw Error(ErrorCode::InvalidGroup, "unknown generator '" + name + "'");
    return static_cast<std::size_t>(it - element_names.begin());
  };

  // Symmetrize: every generator's inverse element joins the alphabet.
  for (const auto& name : generators) {
    const std::size_t e = index_of_name(name);
    if (e == g.identity_) throw Error(ErrorCode::InvalidGroup, "identity cannot be a generator");
    if (std::find(g.letter_element_.begin(), g.letter_element_.end(), e) != g.letter_element_.end()) {
      throw Error(ErrorCode::InvalidGroup, "duplicate generator '" + name + "'");
    }
    g.alphabet_.add(name);
    g.letter_element_.push_back(e);
  }
  const std::size_t given = g.letter_element_.size();
  for (std::size_t l = 0; l < given; ++l) {
    const std::size_t inv = inverse[g.letter_element_[l]];
    auto it = std::find(g.letter_element_.begin(), g.letter_element_.end(), inv);
    if (it == g.letter_element_.end()) {
      g.alphabet_.add(element_names[inv]);
      g.letter_element_.push_back(inv);
      it = g.letter_element_.end() - 1;
    }
    g.alphabet_.pair(static_cast<Letter>(l), static_cast<Letter>(it - g.letter_element_.begin()));
  }
  g.alphabet_.check();

  g.element_names_ = std::move(element_names);
  g.table_ = std::move(table);
  g.build_finite_words();
  return g;
}

void Group::build_finite_words() {
  const std::size_t n = element_names_.size();
  std::vector<std::optional<Word>> words(n);
  words[identity_] = Word{};
  std::deque<std::size_t> queue{identity_};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (Letter l = 0; l < alphabet_.size(); ++l) {
      const std::size_t next = table_[cur][letter_element_[l]];
      if (!words[next]) {
        Word w = *words[cur];
        w.push_back(l);
        words[next] = std::move(w);
        queue.push_back(next);
      }
    }
  }
  element_words_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (!words[i]) {
      throw Error(ErrorCode::InvalidGroup, "generators do not generate element '" + element_names_[i] + "'");
    }
    element_words_.push_back(*words[i]);
  }
}

Group Group::make_presented(GeneratorAlphabet alphabet, std::vector<RewriteRule> rules,
                            GroupLimits limits, std::uint64_t seed) {
  alphabet.check();
  Group g;
  g.kind_ = GroupKind::Presented;
  g.alphabet_ = std::move(alphabet);
  g.limits_ = limits;
  for (const auto& r : rules) {
    if (r.lhs.empty()) throw Error(ErrorCode::InvalidGroup, "rewriting rule with empty left-hand side");
  }
  g.rules_ = std::move(rules);
  g.spot_check_confluence(seed);
  return g;
}

// Samples overlaps between rule left-hand sides and compares both reductions.
void Group::spot_check_confluence(std::uint64_t seed) {
  std::vector<Word> critical;
  for (const auto& r1 : rules_) {
    for (const auto& r2 : rules_) {
      for (std::size_t k = 1; k < r1.lhs.size() && k <= r2.lhs.size(); ++k) {
        if (std::equal(r1.lhs.end() - static_cast<std::ptrdiff_t>(k), r1.lhs.end(), r2.lhs.begin())) {
          Word w = r1.lhs;
          w.insert(w.end(), r2.lhs.begin() + static_cast<std::ptrdiff_t>(k), r2.lhs.end());
          critical.push_back(std::move(w));
        }
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::shuffle(critical.begin(), critical.end(), rng);
  if (critical.size() > 64) critical.resize(64);
  for (const auto& w : critical) {
    // Reduce by applying the first matching rule at the leftmost and at the
    // rightmost overlap position, then compare normal forms.
    Word left = w, right = w;
    for (const auto& r : rules_) {
      auto it = std::search(left.begin(), left.end(), r.lhs.begin(), r.lhs.end());
      if (it != left.end()) {
        Word t(left.begin(), it);
        t.insert(t.end(), r.rhs.begin(), r.rhs.end());
        t.insert(t.end(), it + static_cast<std::ptrdiff_t>(r.lhs.size()), left.end());
        left = std::move(t);
        break;
      }
    }
    for (auto r = rules_.rbegin(); r != rules_.rend(); ++r) {
      auto it = std::find_end(right.begin(), right.end(), r->lhs.begin(), r->lhs.end());
      if (it != right.end()) {
        Word t(right.begin(), it);
        t.insert(t.end(), r->rhs.begin(), r->rhs.end());
        t.insert(t.end(), it + static_cast<std::ptrdiff_t>(r->lhs.size()), right.end());
        right = std::move(t);
        break;
      }
    }
    try {
      if (rewrite(left) != rewrite(right)) {
        warnings_.push_back("critical pair on '" + format_word(w) + "' does not resolve; rules may not be confluent");
      }
    } catch (const Error&) {
      warnings_.push_back("critical pair on '" + format_word(w) + "' exceeded the rewrite budget");
    }
  }
}

// ---------------------------------------------------------------------------
// Normal forms

Word Group::free_reduce(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == alphabet_.inverse(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word Group::rewrite(const Word& w) const {
  std::deque<Letter> input(w.begin(), w.end());
  Word stack;
  std::int64_t steps = 0;
  while (!input.empty()) {
    const Letter l = input.front();
    input.pop_front();
    if (!stack.empty() && stack.back() == alphabet_.inverse(l)) {
      stack.pop_back();
      continue;
    }
    stack.push_back(l);
    for (const auto& rule : rules_) {
      const auto& lhs = rule.lhs;
      if (lhs.size() <= stack.size() &&
          std::equal(lhs.begin(), lhs.end(), stack.end() - static_cast<std::ptrdiff_t>(lhs.size()))) {
        if (++steps > limits_.rewrite_budget) {
          throw Error(ErrorCode::NormalizationBudgetExceeded,
                      "rewriting exceeded " + std::to_string(limits_.rewrite_budget) + " steps");
        }
        stack.resize(stack.size() - lhs.size());
        input.insert(input.begin(), rule.rhs.begin(), rule.rhs.end());
        break;
      }
    }
  }
  return stack;
}

Word Group::normalize(const Word& w) const {
  for (Letter l : w) {
    if (l < 0 || l >= alphabet_.size()) throw Error(ErrorCode::InvalidArgument, "letter outside the alphabet");
  }
  switch (kind_) {
    case GroupKind::Free:
      return free_reduce(w);
    case GroupKind::Finite:
      return element_words_[element_index(w)];
    case GroupKind::Presented:
      return rewrite(w);
  }
  return w;
}

std::size_t Group::element_index(const Word& w) const {
  if (kind_ != GroupKind::Finite) throw Error(ErrorCode::UnsupportedModel, "element index requires a finite model");
  std::size_t cur = identity_;
  for (Letter l : w) cur = table_[cur][letter_element_.at(l)];
  return cur;
}

std::size_t Group::order() const {
  if (kind_ != GroupKind::Finite) throw Error(ErrorCode::UnsupportedModel, "group order requires a finite model");
  return element_names_.size();
}

Word Group::multiply(const Word& g, const Word& h) const {
  if (kind_ == GroupKind::Finite) {
    return element_words_[table_[element_index(g)][element_index(h)]];
  }
  Word w = g;
  w.insert(w.end(), h.begin(), h.end());
  return normalize(w);
}

Word Group::invert(const Word& g) const {
  Word w(g.rbegin(), g.rend());
  for (auto& l : w) l = alphabet_.inverse(l);
  return normalize(w);
}

Word Group::power(const Word& g, std::int64_t exponent) const {
  Word base = exponent < 0 ? invert(g) : normalize(g);
  std::int64_t e = exponent < 0 ? -exponent : exponent;
  Word result;
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

std::optional<std::int64_t> Group::element_order(const Word& g) const {
  const Word h = normalize(g);
  if (h.empty()) return 1;
  switch (kind_) {
    case GroupKind::Free:
      return std::nullopt;
    case GroupKind::Finite: {
      const std::size_t x = element_index(h);
      std::size_t cur = x;
      std::int64_t m = 1;
      while (cur != identity_) {
        cur = table_[cur][x];
        ++m;
      }
      return m;
    }
    case GroupKind::Presented: {
      Word cur = h;
      for (std::int64_t m = 2; m <= limits_.order_cutoff; ++m) {
        cur = multiply(cur, h);
        if (cur.empty()) return m;
      }
      throw Error(ErrorCode::OrderUndecided,
                  "order of '" + format_word(h) + "' exceeds cutoff " + std::to_string(limits_.order_cutoff));
    }
  }
  return std::nullopt;
}

std::int64_t Group::exponent_sum(const Word& g, Letter letter) const {
  if (kind_ != GroupKind::Free) throw Error(ErrorCode::UnsupportedModel, "exponent sums require a free model");
  const Letter inv = alphabet_.inverse(letter);
  std::int64_t sum = 0;
  for (Letter l : normalize(g)) {
    if (l == letter) ++sum;
    if (l == inv && inv != letter) --sum;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Text form

Word Group::parse_word(std::string_view text) const {
  std::istringstream in{std::string(text)};
  std::string tok;
  Word w;
  while (in >> tok) {
    if (auto l = alphabet_.find(tok)) {
      w.push_back(*l);
      continue;
    }
    if (tok == "e") continue;
    if (kind_ == GroupKind::Finite) {
      const auto it = std::find(element_names_.begin(), element_names_.end(), tok);
      if (it != element_names_.end()) {
        const auto& ew = element_words_[static_cast<std::size_t>(it - element_names_.begin())];
        w.insert(w.end(), ew.begin(), ew.end());
        continue;
      }
    }
    throw Error(ErrorCode::Parse, "unknown generator '" + tok + "' in word '" + std::string(text) + "'");
  }
  return w;
}

std::string Group::format_word(const Word& w) const {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += alphabet_.name(w[i]);
  }
  return out;
}

std::vector<Word> Group::ball(int radius, std::size_t guard) const {
  std::vector<Word> out{Word{}};
  std::set<Word, ShortLex> seen{Word{}};
  std::size_t frontier_begin = 0;
  for (int r = 0; r < radius; ++r) {
    const std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (Letter l = 0; l < alphabet_.size(); ++l) {
        Word w = multiply(out[i], Word{l});
        if (seen.insert(w).second) {
          out.push_back(std::move(w));
          if (out.size() > guard) {
            throw Error(ErrorCode::BasisTooLarge,
                        "ball of radius " + std::to_string(radius) + " exceeds " + std::to_string(guard) + " elements");
          }
        }
      }
    }
    if (out.size() == frontier_end) break;
    frontier_begin = frontier_end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Witnesses

std::vector<std::string> Group::validate_witness(const FiniteAbelianizationWitness& w) const {
  std::vector<std::string> failing;
  if (static_cast<int>(w.per_letter.size()) != alphabet_.size()) {
    failing.push_back("<witness does not cover every generator>");
    return failing;
  }
  for (Letter l = 0; l < alphabet_.size(); ++l) {
    const auto& tw = w.per_letter[l];
    bool ok = tw.exponent >= 1;
    if (ok) {
      try {
        Word product;
        for (const auto& c : tw.commutators) {
          const Word comm = multiply(multiply(invert(c.b), invert(c.a)), multiply(c.b, c.a));
          product = multiply(product, comm);
        }
        ok = multiply(power(Word{l}, tw.exponent), invert(product)).empty();
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) failing.push_back(alphabet_.name(l));
  }
  return failing;
}

void Group::set_witness(FiniteAbelianizationWitness witness) {
  const auto failing = validate_witness(witness);
  if (!failing.empty()) {
    std::string msg = "witness relation fails for:";
    for (const auto& f : failing) msg += " " + f;
    throw Error(ErrorCode::InvalidWitness, msg);
  }
  witness_ = std::move(witness);
  witness_is_default_ = false;
}

FiniteAbelianizationWitness Group::default_finite_witness() const {
  if (kind_ != GroupKind::Finite) throw Error(ErrorCode::UnsupportedModel, "default witness requires a finite model");
  FiniteAbelianizationWitness w;
  for (Letter l = 0; l < alphabet_.size(); ++l) {
    w.per_letter.push_back(TorsionWitness{*element_order(Word{l}), {}});
  }
  return w;
}

void Group::install_default_witness() {
  set_witness(default_finite_witness());
  witness_is_default_ = true;
}

FiniteAbelianizationWitness complete_witness(const Group& group,
                                             std::vector<std::optional<TorsionWitness>> partial) {
  const auto& alpha = group.alphabet();
  partial.resize(static_cast<std::size_t>(alpha.size()));
  FiniteAbelianizationWitness out;
  for (Letter l = 0; l < alpha.size(); ++l) {
    if (partial[l]) {
      out.per_letter.push_back(*partial[l]);
      continue;
    }
    const auto& other = partial[alpha.inverse(l)];
    if (!other) {
      throw Error(ErrorCode::WitnessRequired, "no witness for generator '" + alpha.name(l) + "'");
    }
    // (prod_j [a_j,b_j])^-1 = prod_{j reversed} [b_j,a_j] in the b^-1 a^-1 b a convention.
    TorsionWitness tw{other->exponent, {}};
    for (auto it = other->commutators.rbegin(); it != other->commutators.rend(); ++it) {
      tw.commutators.push_back(Commutator{it->b, it->a});
    }
    out.per_letter.push_back(std::move(tw));
  }
  return out;
}

}  // namespace augsos
