#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "augsos/rational.hpp"

namespace augsos {

using QVector = std::vector<Rational>;

/// Dense rational matrix, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_symmetric() const;
  bool operator==(const QMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// x^T A x.
Rational quadratic_form(const QMatrix& a, const QVector& x);

/// Symmetric LDL^T with diagonal pivoting (largest remaining diagonal entry).
/// On success the matrix equals sum_k pivots[k] * columns[k] columns[k]^T with
/// every pivot > 0; zero Schur complements are skipped. When the matrix is not
/// PSD, `witness` holds x with x^T A x < 0.
struct LdlResult {
  bool psd = false;
  std::vector<Rational> pivots;
  std::vector<QVector> columns;
  std::optional<QVector> witness;
};

LdlResult ldl_pivoted(const QMatrix& a);

/// PSD and nonsingular.
bool is_positive_definite(const QMatrix& a);

/// Incrementally maintained row space in reduced row echelon form.
class RowSpace {
 public:
  explicit RowSpace(std::size_t dim) : dim_(dim) {}

  /// Returns true if the vector was independent of the current span.
  bool insert(QVector v);
  bool contains(QVector v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<QVector>& rows() const { return rows_; }

 private:
  void reduce(QVector& v) const;

  std::size_t dim_;
  std::vector<QVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace augsos
