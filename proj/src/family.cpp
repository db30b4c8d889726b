#include "augsos/family.hpp"

#include "augsos/augmentation.hpp"
#include "augsos/error.hpp"

namespace augsos {

std::vector<GeneratorTuple> all_tuples(const Group& group, std::size_t n) {
  const auto k = static_cast<Letter>(group.alphabet().size());
  std::vector<GeneratorTuple> out{GeneratorTuple{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<GeneratorTuple> next;
    next.reserve(out.size() * static_cast<std::size_t>(k));
    for (const auto& t : out) {
      for (Letter s = 0; s < k; ++s) {
        auto u = t;
        u.push_back(s);
        next.push_back(std::move(u));
      }
    }
    out = std::move(next);
  }
  return out;
}

RingElement tuple_product(const GroupPtr& group, const GeneratorTuple& s) {
  RingElement out = RingElement::one(group);
  for (Letter l : s) out = out * RingElement::one_minus(group, Word{l});
  return out;
}

GeneratorTuple adjoint_tuple(const Group& group, const GeneratorTuple& s) {
  GeneratorTuple out(s.rbegin(), s.rend());
  for (auto& l : out) l = group.alphabet().inverse(l);
  return out;
}

RingMatrix codifferential(const GroupPtr& group) {
  const auto k = static_cast<std::size_t>(group->alphabet().size());
  RingMatrix d(group, k, 1);
  for (std::size_t s = 0; s < k; ++s) d(s, 0) = RingElement::one_minus(group, Word{static_cast<Letter>(s)});
  return d;
}

RingElement apply_D(const RingMatrix& xi) {
  const GroupPtr& group = xi.group();
  const auto k = static_cast<std::size_t>(group->alphabet().size());
  if (xi.rows() != k || xi.cols() != k) {
    throw Error(ErrorCode::ShapeMismatch, "D expects an |S| x |S| matrix");
  }
  const RingMatrix d = codifferential(group);
  return (d.star() * xi * d)(0, 0);
}

RingElement laplacian(const GroupPtr& group) {
  const RingMatrix d = codifferential(group);
  return (d.star() * d)(0, 0);
}

RingElement box(const GroupPtr& group, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "box(n) needs n >= 0");
  const auto k = static_cast<std::size_t>(group->alphabet().size());
  RingElement cur = RingElement::one(group);
  for (int i = 0; i < n; ++i) cur = apply_D(RingMatrix::diag(cur, k));
  return cur;
}

RingElement box_closed(const GroupPtr& group, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "box(n) needs n >= 0");
  RingElement out(group);
  for (const auto& s : all_tuples(*group, static_cast<std::size_t>(n))) {
    const RingElement a = tuple_product(group, s);
    out += a.star() * a;
  }
  return out;
}

RingElement u_n(const RingElement& u, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "u_n needs n >= 0");
  const GroupPtr& group = u.group();
  RingElement out(group);
  for (const auto& s : all_tuples(*group, static_cast<std::size_t>(n))) {
    const RingElement a = tuple_product(group, s);
    out += a.star() * u * a;
  }
  return out;
}

namespace {

void require_same_length(const GeneratorTuple& s, const GeneratorTuple& t) {
  if (s.size() != t.size()) throw Error(ErrorCode::ShapeMismatch, "generator tuples differ in length");
}

}  // namespace

RingMatrix E_matrix(const GroupPtr& group, const GeneratorTuple& s, const GeneratorTuple& t, const Word& g,
                    Sign sign) {
  require_same_length(s, t);
  const Rational c = static_cast<int>(sign);
  const RingElement as = tuple_product(group, s);
  const RingElement at = tuple_product(group, t);
  const RingElement gg = RingElement::monomial(group, g, c);
  RingMatrix m(group, 2, 2);
  m(0, 1) = as * gg * at;
  m(1, 0) = m(0, 1).star();
  return m;
}

RingMatrix box_st(const GroupPtr& group, const GeneratorTuple& s, const GeneratorTuple& t) {
  require_same_length(s, t);
  const RingElement as = tuple_product(group, s);
  const RingElement at = tuple_product(group, t);
  RingMatrix m(group, 2, 2);
  m(0, 0) = as * as.star();
  m(1, 1) = at.star() * at;
  return m;
}

RingMatrix laplacian_squared_preimage(const GroupPtr& group) {
  const RingMatrix d = codifferential(group);
  return d * d.star();
}

RingMatrix sq_preimage(const GroupPtr& group) {
  const auto k = static_cast<std::size_t>(group->alphabet().size());
  RingMatrix m(group, k, k);
  for (std::size_t s = 0; s < k; ++s) {
    const RingElement x = RingElement::one_minus(group, Word{static_cast<Letter>(s)});
    m(s, s) = x * x.star();
  }
  return m;
}

namespace {

// f_first * (middle) * f_last with f_first = sum_s (1 - s)^* a_s and
// f_last = sum_t b_t (1 - t) accumulated into m(s, t).
void accumulate_preimage(RingMatrix& m, const Rational& lambda, const RingElement& first,
                         const RingElement* middle, const RingElement& last) {
  const GroupPtr& group = m.group();
  const GeneratorDecomposition right = generator_decompose(first, Side::Right);
  const GeneratorDecomposition left = generator_decompose(last, Side::Left);
  const auto k = static_cast<Letter>(group->alphabet().size());
  for (Letter s = 0; s < k; ++s) {
    // (1 - s) = (1 - s^-1)^*, so the coefficient of (1 - s')^* is a_{s'^-1}.
    const RingElement& a = right.coefficients[group->alphabet().inverse(s)];
    if (a.is_zero()) continue;
    const RingElement am = middle ? a * *middle : a;
    if (am.is_zero()) continue;
    for (Letter t = 0; t < k; ++t) {
      const RingElement& b = left.coefficients[t];
      if (b.is_zero()) continue;
      m(static_cast<std::size_t>(s), static_cast<std::size_t>(t)) += lambda * (am * b);
    }
  }
}

}  // namespace

RingMatrix d_preimage(const RingElement& xi, const FiniteAbelianizationWitness& w) {
  const GroupPtr& group = xi.group();
  if (!augmentation_check(xi)) throw Error(ErrorCode::NotInAugmentationIdeal, "element has nonzero augmentation");
  const auto k = static_cast<std::size_t>(group->alphabet().size());
  RingMatrix m(group, k, k);
  for (const auto& t : idempotence_decompose(xi, w, 3).terms) {
    accumulate_preimage(m, t.lambda, t.factors[0], &t.factors[1], t.factors[2]);
  }
  return m;
}

RingMatrix d_preimage(const RingElement& xi) {
  const auto& w = xi.group()->witness();
  if (!w) throw Error(ErrorCode::WitnessRequired, "group carries no finite-abelianization witness");
  return d_preimage(xi, *w);
}

RingMatrix d_preimage_group_ring(const RingElement& xi, const FiniteAbelianizationWitness& w) {
  const GroupPtr& group = xi.group();
  if (!augmentation_check(xi)) throw Error(ErrorCode::NotInAugmentationIdeal, "element has nonzero augmentation");
  const auto k = static_cast<std::size_t>(group->alphabet().size());
  RingMatrix m(group, k, k);
  for (const auto& t : idempotence_decompose(xi, w, 2).terms) {
    accumulate_preimage(m, t.lambda, t.factors[0], nullptr, t.factors[1]);
  }
  return m;
}

RingMatrix hermitian_part(const RingMatrix& m) {
  return Rational(1, 2) * (m + m.star());
}

}  // namespace augsos
