#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "augsos/group.hpp"
#include "augsos/rational.hpp"

namespace augsos {

/// Sparse element of the rational group ring: normalized word -> coefficient.
/// No zero coefficient is ever stored.
class RingElement {
 public:
  using Terms = std::map<Word, Rational, ShortLex>;

  explicit RingElement(GroupPtr group) : group_(std::move(group)) {}

  /// c * g with g normalized first.
  static RingElement monomial(GroupPtr group, const Word& g, const Rational& c = 1);
  static RingElement one(GroupPtr group) { return monomial(std::move(group), Word{}); }
  /// 1 - g.
  static RingElement one_minus(GroupPtr group, const Word& g);

  const GroupPtr& group() const { return group_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Word& g) const;

  /// Adds c * g; `g` must already be normalized.
  void accumulate(const Word& g, const Rational& c);

  RingElement& operator+=(const RingElement& other);
  RingElement& operator-=(const RingElement& other);
  RingElement& operator*=(const Rational& c);

  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(const Rational& c, RingElement a) { return a *= c; }
  friend RingElement operator-(RingElement a) { return a *= Rational(-1); }
  /// Convolution product.
  friend RingElement operator*(const RingElement& a, const RingElement& b);

  bool operator==(const RingElement& other) const;
  bool operator!=(const RingElement& other) const { return !(*this == other); }

  /// The involution: linear extension of g -> g^-1.
  RingElement star() const;
  /// Sum of coefficients.
  Rational augmentation() const;
  bool is_hermitian() const { return star() == *this; }

  /// Left or right translation by a group element.
  RingElement left_translate(const Word& g) const;
  RingElement right_translate(const Word& g) const;

 private:
  GroupPtr group_;
  Terms terms_;
};

void require_same_group(const GroupPtr& a, const GroupPtr& b);

/// Dense rows x cols matrix over the group ring.
class RingMatrix {
 public:
  RingMatrix(GroupPtr group, std::size_t rows, std::size_t cols);

  static RingMatrix identity(GroupPtr group, std::size_t k);
  /// diag_k(x): x on the diagonal, zero elsewhere.
  static RingMatrix diag(const RingElement& x, std::size_t k);
  static RingMatrix scalar(const RingElement& x) { return diag(x, 1); }

  const GroupPtr& group() const { return group_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  RingElement& operator()(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }
  const RingElement& operator()(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }

  RingMatrix& operator+=(const RingMatrix& other);
  RingMatrix& operator-=(const RingMatrix& other);
  RingMatrix& operator*=(const Rational& c);
  friend RingMatrix operator+(RingMatrix a, const RingMatrix& b) { return a += b; }
  friend RingMatrix operator-(RingMatrix a, const RingMatrix& b) { return a -= b; }
  friend RingMatrix operator*(const Rational& c, RingMatrix a) { return a *= c; }
  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);

  bool operator==(const RingMatrix& other) const;
  bool operator!=(const RingMatrix& other) const { return !(*this == other); }

  /// Transpose composed with the entrywise involution.
  RingMatrix star() const;
  bool is_hermitian() const { return star() == *this; }
  bool is_zero() const;

 private:
  GroupPtr group_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RingElement> entries_;
};

inline RingMatrix matrix_mul(const RingMatrix& a, const RingMatrix& b) { return a * b; }
inline RingMatrix matrix_star(const RingMatrix& a) { return a.star(); }
inline RingMatrix diag_k(const RingElement& x, std::size_t k) { return RingMatrix::diag(x, k); }

}  // namespace augsos
