#include "qboson/linalg.hpp"

#include <algorithm>

#include "qboson/errors.hpp"

namespace qb {

Matrix Matrix::identity(size_t n, const FieldSpec& s) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(s);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw internal_error("matrix product shape mismatch");
  Matrix r(rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const FieldElement& a = at(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        const FieldElement& b = o.at(k, j);
        if (b.is_zero()) continue;
        r.at(i, j) += a * b;
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw internal_error("matrix sum shape mismatch");
  Matrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw internal_error("matrix diff shape mismatch");
  Matrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Matrix Matrix::scaled(const FieldElement& c) const {
  Matrix r = *this;
  for (auto& x : r.data_) x *= c;
  return r;
}

std::vector<FieldElement> Matrix::apply(const std::vector<FieldElement>& v) const {
  if (v.size() != cols_) throw internal_error("matrix apply shape mismatch");
  std::vector<FieldElement> r(rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      const FieldElement& a = at(i, j);
      if (a.is_zero() || v[j].is_zero()) continue;
      r[i] += a * v[j];
    }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const FieldElement& x) { return x.is_zero(); });
}

Elimination eliminate(const Matrix& m, const FieldSpec& spec) {
  Elimination e;
  e.rref = m;
  e.transform = Matrix::identity(m.rows(), spec);
  std::vector<bool> pivotal(m.rows(), false);
  for (size_t c = 0; c < m.cols(); ++c) {
    size_t pr = m.rows();
    for (size_t r = 0; r < m.rows(); ++r) {
      if (!pivotal[r] && !e.rref.at(r, c).is_zero()) {
        pr = r;
        break;
      }
    }
    if (pr == m.rows()) continue;
    pivotal[pr] = true;
    e.pivot_rows.push_back(pr);
    e.pivot_cols.push_back(c);
    FieldElement inv = e.rref.at(pr, c).inverse();
    for (size_t j = 0; j < m.cols(); ++j)
      if (!e.rref.at(pr, j).is_zero()) e.rref.at(pr, j) *= inv;
    for (size_t j = 0; j < m.rows(); ++j)
      if (!e.transform.at(pr, j).is_zero()) e.transform.at(pr, j) *= inv;
    for (size_t r = 0; r < m.rows(); ++r) {
      if (r == pr) continue;
      FieldElement f = e.rref.at(r, c);
      if (f.is_zero()) continue;
      for (size_t j = 0; j < m.cols(); ++j) {
        const FieldElement& p = e.rref.at(pr, j);
        if (!p.is_zero()) e.rref.at(r, j) -= f * p;
      }
      for (size_t j = 0; j < m.rows(); ++j) {
        const FieldElement& p = e.transform.at(pr, j);
        if (!p.is_zero()) e.transform.at(r, j) -= f * p;
      }
    }
  }
  e.rank = e.pivot_rows.size();
  for (size_t r = 0; r < m.rows(); ++r)
    if (!pivotal[r]) e.free_rows.push_back(r);
  return e;
}

size_t matrix_rank(const Matrix& m, const FieldSpec& spec) { return eliminate(m, spec).rank; }

Matrix inverse(const Matrix& m, const FieldSpec& spec) {
  if (m.rows() != m.cols()) throw internal_error("inverse of non-square matrix");
  Elimination e = eliminate(m, spec);
  if (e.rank != m.rows()) throw internal_error("inverse of singular matrix");
  // rref = P-permuted identity; transform rows must be reordered so that
  // result * m == I. Pivot pair (pr, pc) means transform row pr reproduces
  // unit row pc, so row pc of the inverse is transform row pr.
  Matrix inv(m.rows(), m.rows());
  for (size_t t = 0; t < e.rank; ++t) {
    size_t pr = e.pivot_rows[t], pc = e.pivot_cols[t];
    for (size_t j = 0; j < m.rows(); ++j) inv.at(pc, j) = e.transform.at(pr, j);
  }
  return inv;
}

std::vector<std::vector<FieldElement>> right_nullspace(const Matrix& m, const FieldSpec& spec) {
  Elimination e = eliminate(m, spec);
  std::vector<bool> is_pivot_col(m.cols(), false);
  for (size_t c : e.pivot_cols) is_pivot_col[c] = true;
  std::vector<std::vector<FieldElement>> basis;
  for (size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot_col[c]) continue;
    std::vector<FieldElement> v(m.cols());
    v[c] = FieldElement::one(spec);
    for (size_t t = 0; t < e.rank; ++t) {
      const FieldElement& x = e.rref.at(e.pivot_rows[t], c);
      if (!x.is_zero()) v[e.pivot_cols[t]] = -x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qb
