#include "augsos/ring.hpp"

#include "augsos/error.hpp"

namespace augsos {

void require_same_group(const GroupPtr& a, const GroupPtr& b) {
  if (a.get() != b.get()) throw Error(ErrorCode::GroupMismatch, "operands belong to different group models");
}

// ---------------------------------------------------------------------------
// RingElement

RingElement RingElement::monomial(GroupPtr group, const Word& g, const Rational& c) {
  RingElement x(group);
  x.accumulate(group->normalize(g), c);
  return x;
}

RingElement RingElement::one_minus(GroupPtr group, const Word& g) {
  RingElement x(group);
  x.accumulate(Word{}, 1);
  x.accumulate(group->normalize(g), -1);
  return x;
}

Rational RingElement::coefficient(const Word& g) const {
  const auto it = terms_.find(group_->normalize(g));
  return it == terms_.end() ? Rational(0) : it->second;
}

void RingElement::accumulate(const Word& g, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

RingElement& RingElement::operator+=(const RingElement& other) {
  require_same_group(group_, other.group_);
  for (const auto& [g, c] : other.terms_) accumulate(g, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& other) {
  require_same_group(group_, other.group_);
  for (const auto& [g, c] : other.terms_) accumulate(g, -c);
  return *this;
}

RingElement& RingElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [g, v] : terms_) v *= c;
  return *this;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  require_same_group(a.group_, b.group_);
  RingElement out(a.group_);
  const Group& grp = *a.group_;
  for (const auto& [g, c] : a.terms_) {
    for (const auto& [h, d] : b.terms_) {
      out.accumulate(grp.multiply(g, h), c * d);
    }
  }
  return out;
}

bool RingElement::operator==(const RingElement& other) const {
  require_same_group(group_, other.group_);
  return terms_ == other.terms_;
}

RingElement RingElement::star() const {
  RingElement out(group_);
  for (const auto& [g, c] : terms_) out.accumulate(group_->invert(g), c);
  return out;
}

Rational RingElement::augmentation() const {
  Rational sum = 0;
  for (const auto& [g, c] : terms_) sum += c;
  return sum;
}

RingElement RingElement::left_translate(const Word& g) const {
  RingElement out(group_);
  for (const auto& [h, c] : terms_) out.accumulate(group_->multiply(g, h), c);
  return out;
}

RingElement RingElement::right_translate(const Word& g) const {
  RingElement out(group_);
  for (const auto& [h, c] : terms_) out.accumulate(group_->multiply(h, g), c);
  return out;
}

// ---------------------------------------------------------------------------
// RingMatrix

RingMatrix::RingMatrix(GroupPtr group, std::size_t rows, std::size_t cols)
    : group_(group), rows_(rows), cols_(cols), entries_(rows * cols, RingElement(group)) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
}

RingMatrix RingMatrix::identity(GroupPtr group, std::size_t k) {
  return diag(RingElement::one(group), k);
}

RingMatrix RingMatrix::diag(const RingElement& x, std::size_t k) {
  RingMatrix m(x.group(), k, k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = x;
  return m;
}

RingMatrix& RingMatrix::operator+=(const RingMatrix& other) {
  require_same_group(group_, other.group_);
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::ShapeMismatch, "matrix sum shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

RingMatrix& RingMatrix::operator-=(const RingMatrix& other) {
  require_same_group(group_, other.group_);
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::ShapeMismatch, "matrix difference shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

RingMatrix& RingMatrix::operator*=(const Rational& c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
  require_same_group(a.group_, b.group_);
  if (a.cols_ != b.rows_) throw Error(ErrorCode::ShapeMismatch, "matrix product shape mismatch");
  RingMatrix out(a.group_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const RingElement& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
      }
    }
  }
  return out;
}

bool RingMatrix::operator==(const RingMatrix& other) const {
  require_same_group(group_, other.group_);
  return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
}

RingMatrix RingMatrix::star() const {
  RingMatrix out(group_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j).star();
  }
  return out;
}

bool RingMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

}  // namespace augsos
