#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace augsos {

/// Index into a GeneratorAlphabet.
using Letter = int;

/// A word over the alphabet. The empty word is the identity.
using Word = std::vector<Letter>;

/// Shortlex order: shorter words first, then lexicographic by letter index.
struct ShortLex {
  bool operator()(const Word& lhs, const Word& rhs) const {
    if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
    return lhs < rhs;
  }
};

/// A finite symmetric generating set: distinct labels plus an involutive
/// pairing sending each label to the label of its inverse.
class GeneratorAlphabet {
 public:
  GeneratorAlphabet() = default;

  /// Appends a label. Its inverse must be set with pair() before use.
  Letter add(std::string name);
  void pair(Letter a, Letter b);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(Letter l) const { return names_.at(l); }
  const std::vector<std::string>& names() const { return names_; }
  Letter inverse(Letter l) const { return inverse_.at(l); }
  std::optional<Letter> find(std::string_view name) const;

  /// Throws Error(InvalidGroup) unless every label is paired and the pairing
  /// is an involution.
  void check() const;

 private:
  std::vector<std::string> names_;
  std::vector<Letter> inverse_;
};

enum class GroupKind { Free, Finite, Presented };

struct Commutator {
  Word a;
  Word b;
};

/// s^exponent = prod_j b_j^-1 a_j^-1 b_j a_j for one generator s.
struct TorsionWitness {
  std::int64_t exponent = 1;
  std::vector<Commutator> commutators;
};

/// Constructive form of "G has finite abelianization": one torsion witness
/// per alphabet letter (indexed by Letter).
struct FiniteAbelianizationWitness {
  std::vector<TorsionWitness> per_letter;
};

struct GroupLimits {
  std::int64_t rewrite_budget = 1'000'000;
  std::int64_t order_cutoff = 10'000;
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// An immutable group model with decidable equality through normal forms.
class Group {
 public:
  struct RewriteRule {
    Word lhs;
    Word rhs;
  };

  /// Free group on the given labels; inverse labels "x^-1" are added.
  static Group make_free(const std::vector<std::string>& names);

  /// Finite group from a multiplication table. `generators` are element names;
  /// missing inverses are appended to the alphabet. Element words are computed
  /// by breadth-first search over the Cayley graph.
  static Group make_finite(std::vector<std::string> element_names,
                           std::vector<std::vector<std::size_t>> table,
                           const std::vector<std::string>& generators);

  /// Finitely presented group given by length-reducing (or user-declared
  /// confluent) rewriting rules. Free cancellation x x^-1 -> e is implicit.
  static Group make_presented(GeneratorAlphabet alphabet,
                              std::vector<RewriteRule> rules,
                              GroupLimits limits = {}, std::uint64_t seed = 0);

  GroupKind kind() const { return kind_; }
  const GeneratorAlphabet& alphabet() const { return alphabet_; }
  const GroupLimits& limits() const { return limits_; }
  void set_limits(GroupLimits limits) { limits_ = limits; }

  Word normalize(const Word& w) const;
  Word multiply(const Word& g, const Word& h) const;
  Word invert(const Word& g) const;
  Word power(const Word& g, std::int64_t exponent) const;
  bool is_identity(const Word& g) const { return normalize(g).empty(); }

  /// Least m >= 1 with g^m = e, or nullopt when g has infinite order.
  std::optional<std::int64_t> element_order(const Word& g) const;

  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w) const;

  /// Sum of exponents of `letter` in the reduced word of g (Free only).
  std::int64_t exponent_sum(const Word& g, Letter letter) const;

  // Finite models.
  std::size_t order() const;
  const std::vector<Word>& element_words() const { return element_words_; }
  const std::vector<std::string>& element_names() const { return element_names_; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  std::size_t element_index(const Word& w) const;
  std::size_t identity_index() const { return identity_; }

  // Presented models.
  const std::vector<RewriteRule>& rules() const { return rules_; }

  /// Breadth-first ball of the given radius (normalized, in discovery order).
  std::vector<Word> ball(int radius, std::size_t guard) const;

  const std::optional<FiniteAbelianizationWitness>& witness() const { return witness_; }
  /// Installs a witness after validating it; throws Error(InvalidWitness).
  void set_witness(FiniteAbelianizationWitness witness);
  /// Labels whose defining relation fails to normalize to e.
  std::vector<std::string> validate_witness(const FiniteAbelianizationWitness& w) const;
  /// m_s = order(s), empty commutator lists. Finite models only.
  FiniteAbelianizationWitness default_finite_witness() const;
  void install_default_witness();
  bool witness_is_default() const { return witness_is_default_; }

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Group() = default;

  Word free_reduce(const Word& w) const;
  Word rewrite(const Word& w) const;
  void spot_check_confluence(std::uint64_t seed);
  void build_finite_words();

  GroupKind kind_ = GroupKind::Free;
  GeneratorAlphabet alphabet_;
  GroupLimits limits_;

  std::vector<std::string> element_names_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> letter_element_;
  std::vector<Word> element_words_;
  std::size_t identity_ = 0;

  std::vector<RewriteRule> rules_;

  std::optional<FiniteAbelianizationWitness> witness_;
  bool witness_is_default_ = false;
  std::vector<std::string> warnings_;
};

/// Fills in witnesses for letters whose inverse label has one and they do not
/// (same exponent, reversed commutators with swapped pairs).
FiniteAbelianizationWitness complete_witness(const Group& group,
                                             std::vector<std::optional<TorsionWitness>> partial);

}  // namespace augsos
