#pragma once

#include <cstddef>
#include <vector>

#include "augsos/group.hpp"
#include "augsos/ring.hpp"

namespace augsos {

enum class Side { Left, Right };

/// Left:  x = sum_s coefficients[s] * (1 - s)
/// Right: x = sum_s (1 - s) * coefficients[s]
/// `coefficients` is indexed by alphabet letter.
struct GeneratorDecomposition {
  Side side = Side::Left;
  std::vector<RingElement> coefficients;

  RingElement recompose() const;
};

/// One summand lambda * f_1 * ... * f_k of a product expression.
struct ProductTerm {
  Rational lambda;
  std::vector<RingElement> factors;
};

/// A finite sum of scaled products of augmentation-ideal elements. Two-factor
/// expressions witness membership in I^2; k-factor ones membership in I^k.
struct ProductExpression {
  GroupPtr group;
  std::vector<ProductTerm> terms;

  RingElement value() const;
  bool empty() const { return terms.empty(); }
  /// True when every factor has augmentation zero.
  bool factors_in_ideal() const;
};

bool augmentation_check(const RingElement& x);

/// Telescoping decomposition along the normal-form word of each support element.
GeneratorDecomposition generator_decompose(const RingElement& x, Side side);

/// m (1 - g) = sum_{i=1}^{m-1} (1 - g^i)(1 - g), valid when g^m = e.
ProductExpression torsion_square_witness(const GroupPtr& group, const Word& g, std::int64_t m);

/// 1 - b^-1 a^-1 b a = (ab)^-1 (1-a)(1-b) - (ab)^-1 (1-b)(1-a).
ProductExpression commutator_square_witness(const GroupPtr& group, const Word& a, const Word& b);

/// (1 - s) as a two-factor expression, from the torsion witness of s.
ProductExpression generator_square_expression(const GroupPtr& group, const FiniteAbelianizationWitness& w,
                                              Letter s);

/// Writes x in I[G] as a sum of products of `depth` augmentation-ideal factors.
ProductExpression idempotence_decompose(const RingElement& x, const FiniteAbelianizationWitness& w,
                                        int depth);
/// Same, using the witness installed on the element's group.
ProductExpression idempotence_decompose(const RingElement& x, int depth);

// Finite models only: exact linear algebra over the regular coordinates.

/// Exact membership of x in I^n[G]. Guarded to |G| <= 24, n <= 4.
bool power_membership(const RingElement& x, int n);
/// dim I^n / I^{n+1} for n = 1..n_max (n_max <= 4).
std::vector<std::size_t> quotient_dims(const GroupPtr& group, int n_max);
/// D_n(G) = { g : 1 - g in I^n }, as normalized words.
std::vector<Word> dimension_subgroup(const GroupPtr& group, int n);

/// L_s(x) = sum_g x(g) * (exponent sum of s in g). Free models only.
/// Vanishes on I^2, and L_s(1 - s) = -1.
Rational abelianization_functional(const RingElement& x, Letter s);

}  // namespace augsos
