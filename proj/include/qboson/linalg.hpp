#pragma once

#include <vector>

#include "qboson/field.hpp"

namespace qb {

class Matrix {
public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(size_t n, const FieldSpec& s);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  FieldElement& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const FieldElement& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const FieldElement& c) const;
  std::vector<FieldElement> apply(const std::vector<FieldElement>& v) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElement> data_;
};

// Exact division-based Gaussian elimination without row swaps. Columns are
// swept left to right; each pivot is the first not-yet-pivotal row with a
// nonzero entry in the current column. Pivot pairs are recorded in sweep
// order, so pivot_cols is strictly increasing.
struct Elimination {
  size_t rank = 0;
  std::vector<size_t> pivot_rows;
  std::vector<size_t> pivot_cols;
  Matrix rref;              // reduced form of the input
  Matrix transform;         // transform * input == rref
  std::vector<size_t> free_rows;  // rows that reduced to zero (left-kernel labels)
};

Elimination eliminate(const Matrix& m, const FieldSpec& spec);

size_t matrix_rank(const Matrix& m, const FieldSpec& spec);
Matrix inverse(const Matrix& m, const FieldSpec& spec);  // throws on singular input
// Basis of { v : m v = 0 }, one column vector per basis element, reduced form.
std::vector<std::vector<FieldElement>> right_nullspace(const Matrix& m, const FieldSpec& spec);

}  // namespace qb
