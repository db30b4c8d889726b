#include "augsos/augmentation.hpp"

#include "augsos/error.hpp"
#include "augsos/exact_linalg.hpp"

namespace augsos {

RingElement GeneratorDecomposition::recompose() const {
  if (coefficients.empty()) throw Error(ErrorCode::InvalidArgument, "empty decomposition");
  const GroupPtr& group = coefficients.front().group();
  RingElement out(group);
  for (Letter s = 0; s < static_cast<Letter>(coefficients.size()); ++s) {
    const RingElement gen = RingElement::one_minus(group, Word{s});
    out += side == Side::Left ? coefficients[s] * gen : gen * coefficients[s];
  }
  return out;
}

RingElement ProductExpression::value() const {
  RingElement out(group);
  for (const auto& t : terms) {
    RingElement prod = RingElement::one(group);
    for (const auto& f : t.factors) prod = prod * f;
    out += t.lambda * prod;
  }
  return out;
}

bool ProductExpression::factors_in_ideal() const {
  for (const auto& t : terms) {
    for (const auto& f : t.factors) {
      if (f.augmentation() != 0) return false;
    }
  }
  return true;
}

bool augmentation_check(const RingElement& x) { return x.augmentation() == 0; }

GeneratorDecomposition generator_decompose(const RingElement& x, Side side) {
  if (!augmentation_check(x)) {
    throw Error(ErrorCode::NotInAugmentationIdeal, "element has nonzero augmentation");
  }
  const GroupPtr& group = x.group();
  const Group& grp = *group;
  GeneratorDecomposition out{side, std::vector<RingElement>(grp.alphabet().size(), RingElement(group))};
  // x = sum_g c_g g = -sum_g c_g (1 - g), and for g = s_1 ... s_n:
  //   Left:  1 - g = sum_i (s_1 ... s_{i-1}) (1 - s_i)
  //   Right: 1 - g = sum_i (1 - s_i) (s_{i+1} ... s_n)
  for (const auto& [g, c] : x.terms()) {
    const Word& w = g;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Word part = side == Side::Left ? Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i))
                                           : Word(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
      out.coefficients[w[i]].accumulate(grp.normalize(part), -c);
    }
  }
  return out;
}

ProductExpression torsion_square_witness(const GroupPtr& group, const Word& g, std::int64_t m) {
  if (m < 1 || !group->power(g, m).empty()) {
    throw Error(ErrorCode::InvalidTorsion, "g^" + std::to_string(m) + " is not the identity");
  }
  ProductExpression out{group, {}};
  if (group->is_identity(g)) return out;
  const RingElement right = RingElement::one_minus(group, g);
  for (std::int64_t i = 1; i < m; ++i) {
    RingElement left = RingElement::one_minus(group, group->power(g, i));
    if (left.is_zero()) continue;
    out.terms.push_back(ProductTerm{1, {std::move(left), right}});
  }
  return out;
}

ProductExpression commutator_square_witness(const GroupPtr& group, const Word& a, const Word& b) {
  const Group& grp = *group;
  ProductExpression out{group, {}};
  const Word comm = grp.multiply(grp.multiply(grp.invert(b), grp.invert(a)), grp.multiply(b, a));
  if (comm.empty()) return out;
  const Word ab_inv = grp.invert(grp.multiply(a, b));
  const RingElement one_a = RingElement::one_minus(group, a);
  const RingElement one_b = RingElement::one_minus(group, b);
  out.terms.push_back(ProductTerm{1, {one_a.left_translate(ab_inv), one_b}});
  out.terms.push_back(ProductTerm{-1, {one_b.left_translate(ab_inv), one_a}});
  return out;
}

ProductExpression generator_square_expression(const GroupPtr& group, const FiniteAbelianizationWitness& w,
                                              Letter s) {
  const Group& grp = *group;
  const TorsionWitness& tw = w.per_letter.at(s);
  const Rational inv_m(1, tw.exponent);
  ProductExpression out{group, {}};

  // m (1 - s) = sum_{i=1}^{m-1} (1 - s^i)(1 - s) + (1 - s^m)
  const Word sw{s};
  const RingElement one_s = RingElement::one_minus(group, sw);
  for (std::int64_t i = 1; i < tw.exponent; ++i) {
    RingElement left = RingElement::one_minus(group, grp.power(sw, i));
    if (left.is_zero()) continue;
    out.terms.push_back(ProductTerm{inv_m, {std::move(left), one_s}});
  }
  // s^m = c_1 ... c_k, so 1 - s^m = sum_j (c_1 ... c_{j-1}) (1 - c_j).
  Word prefix;
  for (const auto& c : tw.commutators) {
    for (auto& t : commutator_square_witness(group, c.a, c.b).terms) {
      t.lambda *= inv_m;
      t.factors.front() = t.factors.front().left_translate(prefix);
      out.terms.push_back(std::move(t));
    }
    const Word comm = grp.multiply(grp.multiply(grp.invert(c.b), grp.invert(c.a)), grp.multiply(c.b, c.a));
    prefix = grp.multiply(prefix, comm);
  }
  return out;
}

namespace {

// x = sum lambda p q with p, q in I[G].
ProductExpression square_decompose(const RingElement& x, const std::vector<ProductExpression>& per_generator) {
  const GeneratorDecomposition dec = generator_decompose(x, Side::Left);
  ProductExpression out{x.group(), {}};
  for (Letter s = 0; s < static_cast<Letter>(dec.coefficients.size()); ++s) {
    const RingElement& a = dec.coefficients[s];
    if (a.is_zero()) continue;
    for (const auto& t : per_generator[s].terms) {
      RingElement left = a * t.factors[0];
      if (left.is_zero()) continue;
      out.terms.push_back(ProductTerm{t.lambda, {std::move(left), t.factors[1]}});
    }
  }
  return out;
}

}  // namespace

ProductExpression idempotence_decompose(const RingElement& x, const FiniteAbelianizationWitness& w, int depth) {
  if (depth < 2) throw Error(ErrorCode::InvalidArgument, "idempotence depth must be at least 2");
  if (!augmentation_check(x)) throw Error(ErrorCode::NotInAugmentationIdeal, "element has nonzero augmentation");
  const GroupPtr& group = x.group();
  std::vector<ProductExpression> per_generator;
  for (Letter s = 0; s < group->alphabet().size(); ++s) {
    per_generator.push_back(generator_square_expression(group, w, s));
  }
  ProductExpression expr = square_decompose(x, per_generator);
  for (int k = 2; k < depth; ++k) {
    ProductExpression next{group, {}};
    for (const auto& t : expr.terms) {
      for (auto& sub : square_decompose(t.factors.back(), per_generator).terms) {
        ProductTerm nt{t.lambda * sub.lambda, t.factors};
        nt.factors.back() = std::move(sub.factors[0]);
        nt.factors.push_back(std::move(sub.factors[1]));
        next.terms.push_back(std::move(nt));
      }
    }
    expr = std::move(next);
  }
  return expr;
}

ProductExpression idempotence_decompose(const RingElement& x, int depth) {
  const auto& w = x.group()->witness();
  if (!w) throw Error(ErrorCode::WitnessRequired, "group carries no finite-abelianization witness");
  return idempotence_decompose(x, *w, depth);
}

// ---------------------------------------------------------------------------
// Finite filtrations

namespace {

constexpr std::size_t kMaxFiniteOrder = 24;
constexpr int kMaxPower = 4;

QVector regular_coordinates(const RingElement& x) {
  const Group& grp = *x.group();
  QVector v(grp.order());
  for (const auto& [g, c] : x.terms()) v[grp.element_index(g)] += c;
  return v;
}

void require_small_finite(const Group& grp) {
  if (grp.kind() != GroupKind::Finite) throw Error(ErrorCode::UnsupportedModel, "requires a finite group model");
  if (grp.order() > kMaxFiniteOrder) {
    throw Error(ErrorCode::UnsupportedModel, "augmentation powers are limited to |G| <= 24");
  }
}

// Bases of I^1, ..., I^n_max as row spaces over regular coordinates.
std::vector<RowSpace> augmentation_powers(const Group& grp, int n_max) {
  const std::size_t order = grp.order();
  const auto& table = grp.table();
  const std::size_t e = grp.identity_index();
  std::vector<RowSpace> powers;
  RowSpace first(order);
  for (std::size_t g = 0; g < order; ++g) {
    if (g == e) continue;
    QVector v(order);
    v[e] += 1;
    v[g] -= 1;
    first.insert(std::move(v));
  }
  powers.push_back(std::move(first));
  for (int k = 2; k <= n_max; ++k) {
    // I^k = span{ v (1 - g) : v in a basis of I^{k-1}, g in G }.
    RowSpace next(order);
    for (const auto& v : powers.back().rows()) {
      for (std::size_t g = 0; g < order && next.rank() < order; ++g) {
        if (g == e) continue;
        QVector w = v;
        for (std::size_t h = 0; h < order; ++h) {
          if (v[h] != 0) w[table[h][g]] -= v[h];
        }
        next.insert(std::move(w));
      }
    }
    powers.push_back(std::move(next));
  }
  return powers;
}

}  // namespace

bool power_membership(const RingElement& x, int n) {
  const Group& grp = *x.group();
  require_small_finite(grp);
  if (n < 1 || n > kMaxPower) throw Error(ErrorCode::UnsupportedModel, "power_membership supports 1 <= n <= 4");
  return augmentation_powers(grp, n).back().contains(regular_coordinates(x));
}

std::vector<std::size_t> quotient_dims(const GroupPtr& group, int n_max) {
  require_small_finite(*group);
  if (n_max < 1 || n_max > kMaxPower) throw Error(ErrorCode::UnsupportedModel, "quotient_dims supports 1 <= n_max <= 4");
  const auto powers = augmentation_powers(*group, n_max + 1);
  std::vector<std::size_t> dims;
  for (int n = 1; n <= n_max; ++n) dims.push_back(powers[n - 1].rank() - powers[n].rank());
  return dims;
}

std::vector<Word> dimension_subgroup(const GroupPtr& group, int n) {
  const Group& grp = *group;
  require_small_finite(grp);
  if (n < 1 || n > kMaxPower) throw Error(ErrorCode::UnsupportedModel, "dimension_subgroup supports 1 <= n <= 4");
  const RowSpace power = augmentation_powers(grp, n).back();
  std::vector<Word> out;
  for (std::size_t g = 0; g < grp.order(); ++g) {
    QVector v(grp.order());
    v[grp.identity_index()] += 1;
    v[g] -= 1;
    if (power.contains(std::move(v))) out.push_back(grp.element_words()[g]);
  }
  return out;
}

Rational abelianization_functional(const RingElement& x, Letter s) {
  const Group& grp = *x.group();
  if (grp.kind() != GroupKind::Free) {
    throw Error(ErrorCode::UnsupportedModel, "abelianization functional requires a free model");
  }
  Rational sum = 0;
  for (const auto& [g, c] : x.terms()) sum += c * grp.exponent_sum(g, s);
  return sum;
}

}  // namespace augsos
