#pragma once

// Dense exact matrices and the row-reduction toolkit everything else
// rests on: rref, rank, kernel, solve, inverse.

#include <optional>
#include <vector>

#include "hlr/scalar.hpp"

namespace hlr {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(const FieldDescriptor& f, std::size_t n) {
  return Vec(n, Scalar::zero(f));
}

inline Vec unit_vec(const FieldDescriptor& f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = Scalar::one(f);
  return v;
}

inline Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec add: length mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec sub: length mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
  return r;
}

inline Vec scale(const Scalar& c, const Vec& a) {
  Vec r = a;
  for (auto& x : r) x = c * x;
  return r;
}

inline bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

class Matrix {
public:
  Matrix() = default;
  Matrix(const FieldDescriptor& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(f)) {}

  static Matrix identity(const FieldDescriptor& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
  }

  static Matrix from_rows(const FieldDescriptor& f, const std::vector<Vec>& rows,
                          std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged input");
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  const FieldDescriptor& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  Vec row(std::size_t i) const {
    Vec v(entries_.begin() + i * cols_, entries_.begin() + (i + 1) * cols_);
    return v;
  }
  Vec col(std::size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
  }

  bool is_zero() const {
    for (const auto& x : entries_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matrix add: shape mismatch");
    Matrix r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] = r.entries_[i] + b.entries_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matrix sub: shape mismatch");
    Matrix r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] = r.entries_[i] - b.entries_[i];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix mul: shape mismatch");
    Matrix r(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
      }
    return r;
  }
  friend Matrix operator*(const Scalar& c, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.entries_) x = c * x;
    return r;
  }

  Vec apply(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix apply: length mismatch");
    Vec r = zero_vec(field_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] = r[i] + at(i, j) * v[j];
    return r;
  }

  Matrix transpose() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

private:
  FieldDescriptor field_ = FieldDescriptor::rationals();
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> entries_;
};

// Gauss-Jordan to the unique reduced row echelon form. Also reports the
// pivot columns.
inline Matrix rref(const Matrix& m, std::vector<std::size_t>* pivot_cols = nullptr) {
  Matrix r = m;
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < r.cols() && pr < r.rows(); ++pc) {
    std::size_t sel = pr;
    while (sel < r.rows() && r.at(sel, pc).is_zero()) ++sel;
    if (sel == r.rows()) continue;
    if (sel != pr)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(sel, j), r.at(pr, j));
    Scalar inv = r.at(pr, pc).inverse();
    for (std::size_t j = pc; j < r.cols(); ++j) r.at(pr, j) = inv * r.at(pr, j);
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == pr || r.at(i, pc).is_zero()) continue;
      Scalar factor = r.at(i, pc);
      for (std::size_t j = pc; j < r.cols(); ++j)
        r.at(i, j) = r.at(i, j) - factor * r.at(pr, j);
    }
    pivots.push_back(pc);
    ++pr;
  }
  if (pivot_cols) *pivot_cols = pivots;
  return r;
}

inline std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> pivots;
  rref(m, &pivots);
  return pivots.size();
}

// Basis of {v : m v = 0} in the standard free-column parameterization,
// one row per kernel basis vector.
inline std::vector<Vec> kernel_basis(const Matrix& m) {
  std::vector<std::size_t> pivots;
  Matrix r = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t fc = 0; fc < m.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    Vec v = zero_vec(m.field(), m.cols());
    v[fc] = Scalar::one(m.field());
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) v[pivots[pi]] = -r.at(pi, fc);
    basis.push_back(v);
  }
  return basis;
}

// Some x with m x = b, or nothing when the system is inconsistent.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> pivots;
  Matrix r = rref(aug, &pivots);
  for (std::size_t p : pivots)
    if (p == m.cols()) return std::nullopt;  // pivot in the augmented column
  Vec x = zero_vec(m.field(), m.cols());
  for (std::size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = r.at(pi, m.cols());
  return x;
}

// Right inverse of a surjective map (m * s = id); exact solve per column.
inline std::optional<Matrix> right_inverse(const Matrix& m) {
  Matrix s(m.field(), m.cols(), m.rows());
  for (std::size_t j = 0; j < m.rows(); ++j) {
    auto x = solve(m, unit_vec(m.field(), m.rows(), j));
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < m.cols(); ++i) s.at(i, j) = (*x)[i];
  }
  return s;
}

// Row-major flattening between endomorphism matrices and coordinate
// vectors of End spaces.
inline Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

inline Matrix unflatten(const FieldDescriptor& f, const Vec& v, std::size_t rows,
                        std::size_t cols) {
  if (v.size() != rows * cols) throw std::invalid_argument("unflatten: length mismatch");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = v[i * cols + j];
  return m;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto r = right_inverse(m);
  if (!r) return std::nullopt;
  if (!(*r * m == Matrix::identity(m.field(), m.rows()))) return std::nullopt;
  return r;
}

}  // namespace hlr
