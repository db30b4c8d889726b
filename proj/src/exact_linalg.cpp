#include "augsos/exact_linalg.hpp"

#include "augsos/error.hpp"

namespace augsos {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool QMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

Rational quadratic_form(const QMatrix& a, const QVector& x) {
  if (a.rows() != x.size() || a.cols() != x.size()) throw Error(ErrorCode::ShapeMismatch, "quadratic form size mismatch");
  Rational sum = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (x[j] != 0) row += a(i, j) * x[j];
    }
    sum += x[i] * row;
  }
  return sum;
}

LdlResult ldl_pivoted(const QMatrix& a) {
  if (!a.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "LDL requires a symmetric matrix");
  const std::size_t n = a.rows();
  QMatrix s = a;
  std::vector<bool> done(n, false);
  std::vector<std::size_t> order;
  LdlResult out;

  // Builds x with v_k^T x = 0 for every eliminated column and x = y on the
  // remaining coordinates, so that x^T A x = y^T S y.
  auto lift = [&](QVector y) {
    for (std::size_t k = order.size(); k-- > 0;) {
      const QVector& v = out.columns[k];
      Rational dot = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i != order[k] && v[i] != 0) dot += v[i] * y[i];
      }
      y[order[k]] = -dot;
    }
    return y;
  };

  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && (!best || s(i, i) > s(*best, *best))) best = i;
    }
    const std::size_t p = *best;
    const Rational pivot = s(p, p);
    if (pivot < 0) {
      QVector y(n);
      y[p] = 1;
      out.witness = lift(std::move(y));
      return out;
    }
    if (pivot == 0) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (done[i] || done[j] || s(i, j) == 0) continue;
          QVector y(n);
          y[i] = 1;
          y[j] = s(i, j) > 0 ? -1 : 1;
          out.witness = lift(std::move(y));
          return out;
        }
      }
      break;  // remaining block is zero
    }
    QVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i]) v[i] = s(i, p) / pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || v[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j] || v[j] == 0) continue;
        s(i, j) -= pivot * v[i] * v[j];
      }
    }
    done[p] = true;
    order.push_back(p);
    out.pivots.push_back(pivot);
    out.columns.push_back(std::move(v));
  }
  out.psd = true;
  return out;
}

bool is_positive_definite(const QMatrix& a) {
  const LdlResult r = ldl_pivoted(a);
  return r.psd && r.pivots.size() == a.rows();
}

// ---------------------------------------------------------------------------
// RowSpace

void RowSpace::reduce(QVector& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational f = v[pivots_[r]];
    if (f == 0) continue;
    const QVector& row = rows_[r];
    for (std::size_t j = 0; j < dim_; ++j) {
      if (row[j] != 0) v[j] -= f * row[j];
    }
  }
}

bool RowSpace::insert(QVector v) {
  if (v.size() != dim_) throw Error(ErrorCode::ShapeMismatch, "row space dimension mismatch");
  reduce(v);
  std::size_t p = 0;
  while (p < dim_ && v[p] == 0) ++p;
  if (p == dim_) return false;
  const Rational lead = v[p];
  for (std::size_t j = p; j < dim_; ++j) v[j] /= lead;
  for (auto& row : rows_) {
    const Rational f = row[p];
    if (f == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (v[j] != 0) row[j] -= f * v[j];
    }
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool RowSpace::contains(QVector v) const {
  if (v.size() != dim_) throw Error(ErrorCode::ShapeMismatch, "row space dimension mismatch");
  reduce(v);
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

}  // namespace augsos
