#pragma once

// Linear systems whose unknown is a matrix U (rows x cols), assembled from
// "sandwich" equations  sum_k  A_k U B_k = T.  Used by the section
// solvers, equivalence tests, and universality witnesses.

#include <optional>

#include "hlr/subspace.hpp"

namespace hlr {

class MatrixUnknownSystem {
public:
  MatrixUnknownSystem(const FieldDescriptor& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols) {}

  // sum over (A, B) pairs of A U B equals target
  void add(const std::vector<std::pair<Matrix, Matrix>>& sandwiches, const Matrix& target) {
    for (const auto& [A, B] : sandwiches) {
      if (A.cols() != rows_ || B.rows() != cols_ || A.rows() != target.rows() ||
          B.cols() != target.cols())
        throw std::invalid_argument("MatrixUnknownSystem: shape mismatch");
    }
    for (std::size_t r = 0; r < target.rows(); ++r)
      for (std::size_t c = 0; c < target.cols(); ++c) {
        Vec row = zero_vec(field_, rows_ * cols_);
        for (const auto& [A, B] : sandwiches)
          for (std::size_t p = 0; p < rows_; ++p) {
            if (A.at(r, p).is_zero()) continue;
            for (std::size_t q = 0; q < cols_; ++q)
              row[p * cols_ + q] = row[p * cols_ + q] + A.at(r, p) * B.at(q, c);
          }
        eq_rows_.push_back(row);
        rhs_.push_back(target.at(r, c));
      }
  }

  std::optional<Matrix> solve_any() const {
    Matrix sys = Matrix::from_rows(field_, eq_rows_, rows_ * cols_);
    auto x = hlr::solve(sys, rhs_);
    if (!x) return std::nullopt;
    return unflatten(field_, *x, rows_, cols_);
  }

  // solution space of the homogeneous system, as matrices
  Subspace homogeneous_solutions() const {
    Matrix sys = Matrix::from_rows(field_, eq_rows_, rows_ * cols_);
    return kernel(sys);
  }

private:
  FieldDescriptor field_;
  std::size_t rows_, cols_;
  std::vector<Vec> eq_rows_;
  Vec rhs_;
};

}  // namespace hlr
