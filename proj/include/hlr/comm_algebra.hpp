#pragma once

// Finite-dimensional commutative unital algebras given by structure
// constants, their endomorphisms, and phi-derivations.

#include <vector>

#include "hlr/report.hpp"
#include "hlr/subspace.hpp"

namespace hlr {

// Dense order-3 tensor c[i][j][k] over a field, stored flat.
class Tensor3 {
public:
  Tensor3() = default;
  Tensor3(const FieldDescriptor& f, std::size_t d0, std::size_t d1, std::size_t d2)
      : d0_(d0), d1_(d1), d2_(d2), entries_(d0 * d1 * d2, Scalar::zero(f)) {}

  std::size_t dim0() const { return d0_; }
  std::size_t dim1() const { return d1_; }
  std::size_t dim2() const { return d2_; }

  Scalar& at(std::size_t i, std::size_t j, std::size_t k) {
    return entries_[(i * d1_ + j) * d2_ + k];
  }
  const Scalar& at(std::size_t i, std::size_t j, std::size_t k) const {
    return entries_[(i * d1_ + j) * d2_ + k];
  }

  // bilinear product: out_k = sum_{i,j} u_i v_j c[i][j][k]
  Vec contract(const Vec& u, const Vec& v, const FieldDescriptor& f) const {
    if (u.size() != d0_ || v.size() != d1_)
      throw std::invalid_argument("tensor contract: length mismatch");
    Vec out = zero_vec(f, d2_);
    for (std::size_t i = 0; i < d0_; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < d1_; ++j) {
        if (v[j].is_zero()) continue;
        Scalar uv = u[i] * v[j];
        for (std::size_t k = 0; k < d2_; ++k) {
          const Scalar& c = at(i, j, k);
          if (!c.is_zero()) out[k] = out[k] + uv * c;
        }
      }
    }
    return out;
  }

  friend bool operator==(const Tensor3& a, const Tensor3& b) {
    return a.d0_ == b.d0_ && a.d1_ == b.d1_ && a.d2_ == b.d2_ && a.entries_ == b.entries_;
  }

private:
  std::size_t d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<Scalar> entries_;
};

struct CommAlgebra {
  FieldDescriptor field;
  std::size_t dim = 0;
  Tensor3 structure_constants;  // e_i * e_j = sum_k c[i][j][k] e_k
  Vec unit;                     // coordinates of 1

  Vec mul(const Vec& a, const Vec& b) const {
    return structure_constants.contract(a, b, field);
  }

  Vec basis(std::size_t i) const { return unit_vec(field, dim, i); }

  // matrix of left multiplication by a
  Matrix mult_matrix(const Vec& a) const {
    Matrix m(field, dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      Vec col = mul(a, basis(j));
      for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = col[i];
    }
    return m;
  }
};

struct AlgebraEndo {
  Matrix matrix;  // action on the basis of A

  Vec apply(const Vec& a) const { return matrix.apply(a); }
};

struct PhiDerivation {
  Matrix matrix;

  Vec apply(const Vec& a) const { return matrix.apply(a); }
};

inline CheckReport check_comm_algebra(const CommAlgebra& A) {
  CheckReport rep;
  const auto& c = A.structure_constants;
  if (c.dim0() != A.dim || c.dim1() != A.dim || c.dim2() != A.dim || A.unit.size() != A.dim)
    throw std::invalid_argument("check_comm_algebra: dimension mismatch");
  for (std::size_t i = 0; i < A.dim; ++i)
    for (std::size_t j = i + 1; j < A.dim; ++j)
      for (std::size_t k = 0; k < A.dim; ++k)
        if (c.at(i, j, k) != c.at(j, i, k)) rep.add("commutativity", {i, j, k});
  for (std::size_t i = 0; i < A.dim; ++i)
    for (std::size_t j = 0; j < A.dim; ++j)
      for (std::size_t k = 0; k < A.dim; ++k) {
        Vec lhs = A.mul(A.mul(A.basis(i), A.basis(j)), A.basis(k));
        Vec rhs = A.mul(A.basis(i), A.mul(A.basis(j), A.basis(k)));
        if (lhs != rhs) rep.add("associativity", {i, j, k});
      }
  for (std::size_t i = 0; i < A.dim; ++i)
    if (A.mul(A.unit, A.basis(i)) != A.basis(i)) rep.add("unit", {i});
  return rep;
}

inline CheckReport check_algebra_endo(const CommAlgebra& A, const AlgebraEndo& phi) {
  CheckReport rep;
  if (phi.matrix.rows() != A.dim || phi.matrix.cols() != A.dim)
    throw std::invalid_argument("check_algebra_endo: dimension mismatch");
  if (phi.apply(A.unit) != A.unit) rep.add("endo_unit", {});
  for (std::size_t i = 0; i < A.dim; ++i)
    for (std::size_t j = i; j < A.dim; ++j) {
      Vec lhs = phi.apply(A.mul(A.basis(i), A.basis(j)));
      Vec rhs = A.mul(phi.apply(A.basis(i)), phi.apply(A.basis(j)));
      if (lhs != rhs) rep.add("endo_multiplicative", {i, j});
    }
  return rep;
}

inline bool is_phi_derivation(const CommAlgebra& A, const AlgebraEndo& phi, const Matrix& delta) {
  if (delta.rows() != A.dim || delta.cols() != A.dim)
    throw std::invalid_argument("is_phi_derivation: dimension mismatch");
  for (std::size_t i = 0; i < A.dim; ++i)
    for (std::size_t j = i; j < A.dim; ++j) {
      Vec lhs = delta.apply(A.mul(A.basis(i), A.basis(j)));
      Vec rhs = add(A.mul(phi.apply(A.basis(i)), delta.apply(A.basis(j))),
                    A.mul(phi.apply(A.basis(j)), delta.apply(A.basis(i))));
      if (lhs != rhs) return false;
    }
  return true;
}

// Der_phi(A) as a canonical subspace of End(A) (row-major coordinates),
// cut out by the phi-Leibniz conditions on basis pairs.
inline Subspace phi_derivation_space(const CommAlgebra& A, const AlgebraEndo& phi) {
  const FieldDescriptor& f = A.field;
  std::size_t n = A.dim;
  // unknowns: delta[r][s], r = output coordinate, s = input basis index
  std::vector<Vec> eqs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec prod = A.mul(A.basis(i), A.basis(j));
      Vec phi_i = phi.apply(A.basis(i));
      Vec phi_j = phi.apply(A.basis(j));
      Matrix mult_phi_i = A.mult_matrix(phi_i);
      Matrix mult_phi_j = A.mult_matrix(phi_j);
      // For each output coordinate r: sum_s prod_s delta[r][s]
      //   - sum_s (mult_phi_i delta e_j)_r - sum_s (mult_phi_j delta e_i)_r = 0
      for (std::size_t r = 0; r < n; ++r) {
        Vec eq = zero_vec(f, n * n);
        for (std::size_t s = 0; s < n; ++s) {
          // delta(prod): coefficient of delta[r][s] is prod_s
          eq[r * n + s] = eq[r * n + s] + prod[s];
          // phi(e_i) * delta(e_j): delta(e_j) = sum_t delta[t][j] e_t,
          // contributes mult_phi_i[r][t] * delta[t][j]
          eq[s * n + j] = eq[s * n + j] - mult_phi_i.at(r, s);
          eq[s * n + i] = eq[s * n + i] - mult_phi_j.at(r, s);
        }
        eqs.push_back(eq);
      }
    }
  Matrix sys = Matrix::from_rows(f, eqs, n * n);
  return kernel(sys);
}

}  // namespace hlr
