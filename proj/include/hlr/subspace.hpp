#pragma once

// Canonical subspaces (RREF spanning basis) and quotient presentations
// with exact project/lift maps.

#include <vector>

#include "hlr/matrix.hpp"

namespace hlr {

// A subspace of k^ambient_dim held in canonical form: the basis matrix is
// the RREF of any spanning set, so two equal subspaces compare equal as
// matrices.
class Subspace {
public:
  Subspace() = default;

  static Subspace span(const FieldDescriptor& f, const std::vector<Vec>& vectors,
                       std::size_t ambient_dim) {
    for (const auto& v : vectors)
      if (v.size() != ambient_dim) throw std::invalid_argument("span: dimension mismatch");
    Matrix stacked = Matrix::from_rows(f, vectors, ambient_dim);
    std::vector<std::size_t> pivots;
    Matrix r = rref(stacked, &pivots);
    Subspace s;
    s.ambient_ = ambient_dim;
    s.pivots_ = pivots;
    s.basis_ = Matrix(f, pivots.size(), ambient_dim);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      for (std::size_t j = 0; j < ambient_dim; ++j) s.basis_.at(i, j) = r.at(i, j);
    return s;
  }

  static Subspace zero(const FieldDescriptor& f, std::size_t ambient_dim) {
    return span(f, {}, ambient_dim);
  }

  static Subspace full(const FieldDescriptor& f, std::size_t ambient_dim) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < ambient_dim; ++i) rows.push_back(unit_vec(f, ambient_dim, i));
    return span(f, rows, ambient_dim);
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const FieldDescriptor& field() const { return basis_.field(); }

  // Canonical representative of v modulo this subspace: pivot coordinates
  // eliminated against the RREF basis.
  Vec reduce(const Vec& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("reduce: dimension mismatch");
    Vec r = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      const Scalar& c = r[pivots_[i]];
      if (c.is_zero()) continue;
      Vec br = basis_.row(i);
      r = sub(r, scale(c, br));
    }
    return r;
  }

  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

  // Coordinates of v in this subspace's basis; v must lie in the subspace.
  Vec coordinates(const Vec& v) const {
    if (!contains(v)) throw std::invalid_argument("coordinates: vector not in subspace");
    Vec c;
    c.reserve(basis_.rows());
    for (std::size_t i = 0; i < basis_.rows(); ++i) c.push_back(v[pivots_[i]]);
    return c;
  }

  bool contains_subspace(const Subspace& other) const {
    for (std::size_t i = 0; i < other.basis_.rows(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) throw std::invalid_argument("subspace sum: ambient mismatch");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < a.basis_.rows(); ++i) rows.push_back(a.basis_.row(i));
    for (std::size_t i = 0; i < b.basis_.rows(); ++i) rows.push_back(b.basis_.row(i));
    return span(a.field(), rows, a.ambient_);
  }

  // Image under a linear map ambient -> m.rows().
  Subspace image_under(const Matrix& m) const {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < basis_.rows(); ++i) rows.push_back(m.apply(basis_.row(i)));
    return span(m.field(), rows, m.rows());
  }

private:
  std::size_t ambient_ = 0;
  std::vector<std::size_t> pivots_;
  Matrix basis_;  // RREF, rows are the basis
};

inline Subspace kernel(const Matrix& m) {
  return Subspace::span(m.field(), kernel_basis(m), m.cols());
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("intersect: ambient mismatch");
  const FieldDescriptor& f = a.field();
  // v = x B_a = y B_b  <=>  (x, y) in the kernel of [B_a^T | -B_b^T]
  Matrix sys(f, a.ambient_dim(), a.dim() + b.dim());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.ambient_dim(); ++c) sys.at(c, r) = a.basis().at(r, c);
  for (std::size_t r = 0; r < b.dim(); ++r)
    for (std::size_t c = 0; c < b.ambient_dim(); ++c)
      sys.at(c, a.dim() + r) = -b.basis().at(r, c);
  std::vector<Vec> gens;
  for (const Vec& xy : kernel_basis(sys)) {
    Vec v = zero_vec(f, a.ambient_dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
      if (!xy[r].is_zero()) v = add(v, scale(xy[r], a.basis().row(r)));
    gens.push_back(v);
  }
  return Subspace::span(f, gens, a.ambient_dim());
}

inline Subspace image(const Matrix& m) {
  std::vector<Vec> rows;
  for (std::size_t j = 0; j < m.cols(); ++j) rows.push_back(m.col(j));
  return Subspace::span(m.field(), rows, m.rows());
}

// Quotient of the ambient space by a relation subspace. Coset
// representatives live on the non-pivot coordinates of the relation RREF,
// so lift is a coordinate embedding and project is elimination followed by
// reading those coordinates off.
class QuotientPresentation {
public:
  QuotientPresentation() = default;

  QuotientPresentation(std::size_t ambient_dim, Subspace relations)
      : relations_(std::move(relations)) {
    if (relations_.ambient_dim() != ambient_dim)
      throw std::invalid_argument("quotient: relation ambient mismatch");
    const FieldDescriptor& f = relations_.field();
    std::vector<bool> is_pivot(ambient_dim, false);
    for (std::size_t p : relations_.pivots()) is_pivot[p] = true;
    for (std::size_t j = 0; j < ambient_dim; ++j)
      if (!is_pivot[j]) rep_columns_.push_back(j);

    std::size_t q = rep_columns_.size();
    lift_ = Matrix(f, ambient_dim, q);
    for (std::size_t c = 0; c < q; ++c) lift_.at(rep_columns_[c], c) = Scalar::one(f);

    project_ = Matrix(f, q, ambient_dim);
    for (std::size_t j = 0; j < ambient_dim; ++j) {
      Vec red = relations_.reduce(unit_vec(f, ambient_dim, j));
      for (std::size_t c = 0; c < q; ++c) project_.at(c, j) = red[rep_columns_[c]];
    }
  }

  std::size_t ambient_dim() const { return relations_.ambient_dim(); }
  std::size_t quotient_dim() const { return rep_columns_.size(); }
  const Subspace& relations() const { return relations_; }
  const std::vector<std::size_t>& rep_columns() const { return rep_columns_; }
  const Matrix& project_matrix() const { return project_; }
  const Matrix& lift_matrix() const { return lift_; }

  Vec project(const Vec& v) const { return project_.apply(v); }
  Vec lift(const Vec& q) const { return lift_.apply(q); }

private:
  Subspace relations_;
  std::vector<std::size_t> rep_columns_;
  Matrix project_, lift_;
};

inline QuotientPresentation quotient(std::size_t ambient_dim, const Subspace& relations) {
  return QuotientPresentation(ambient_dim, relations);
}

}  // namespace hlr
