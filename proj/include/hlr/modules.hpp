#pragma once

// Left and right modules over a hom-Lie-Rinehart algebra.

#include "hlr/hom_lie_rinehart.hpp"

namespace hlr {

struct LeftModule {
  std::size_t M_dim = 0;
  Tensor3 a_action;   // dimA x M x M
  Tensor3 theta;      // L x M x M, {x, m}
  Matrix beta;        // M x M

  Vec a_mul(const CommAlgebra& A, const Vec& a, const Vec& m) const {
    return a_action.contract(a, m, A.field);
  }
  // theta(x) as an endomorphism of M
  Matrix theta_of(const FieldDescriptor& f, const Vec& x) const {
    Matrix t(f, M_dim, M_dim);
    for (std::size_t j = 0; j < theta.dim0(); ++j) {
      if (x[j].is_zero()) continue;
      for (std::size_t m = 0; m < M_dim; ++m)
        for (std::size_t k = 0; k < M_dim; ++k)
          t.at(k, m) = t.at(k, m) + x[j] * theta.at(j, m, k);
    }
    return t;
  }
  Matrix mult_matrix(const CommAlgebra& A, const Vec& a) const {
    Matrix t(A.field, M_dim, M_dim);
    for (std::size_t i = 0; i < A.dim; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t m = 0; m < M_dim; ++m)
        for (std::size_t k = 0; k < M_dim; ++k)
          t.at(k, m) = t.at(k, m) + a[i] * a_action.at(i, m, k);
    }
    return t;
  }
};

struct RightModule {
  std::size_t M_dim = 0;
  Tensor3 a_action;   // dimA x M x M
  Tensor3 theta;      // M x L x M, {m, x}
  Matrix beta;

  // theta'(x): m -> {m, x}
  Matrix theta_of(const FieldDescriptor& f, const Vec& x) const {
    Matrix t(f, M_dim, M_dim);
    for (std::size_t j = 0; j < theta.dim1(); ++j) {
      if (x[j].is_zero()) continue;
      for (std::size_t m = 0; m < M_dim; ++m)
        for (std::size_t k = 0; k < M_dim; ++k)
          t.at(k, m) = t.at(k, m) + x[j] * theta.at(m, j, k);
    }
    return t;
  }
  Matrix mult_matrix(const CommAlgebra& A, const Vec& a) const {
    Matrix t(A.field, M_dim, M_dim);
    for (std::size_t i = 0; i < A.dim; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t m = 0; m < M_dim; ++m)
        for (std::size_t k = 0; k < M_dim; ++k)
          t.at(k, m) = t.at(k, m) + a[i] * a_action.at(i, m, k);
    }
    return t;
  }
};

namespace detail {

inline CheckReport check_a_module_laws(const CommAlgebra& A, std::size_t M_dim,
                                       const Tensor3& a_action) {
  CheckReport rep;
  const FieldDescriptor& F = A.field;
  auto mult = [&](const Vec& a) {
    Matrix t(F, M_dim, M_dim);
    for (std::size_t i = 0; i < A.dim; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t m = 0; m < M_dim; ++m)
        for (std::size_t k = 0; k < M_dim; ++k)
          t.at(k, m) = t.at(k, m) + a[i] * a_action.at(i, m, k);
    }
    return t;
  };
  if (!(mult(A.unit) == Matrix::identity(F, M_dim))) rep.add("module_unit", {});
  for (std::size_t i = 0; i < A.dim; ++i)
    for (std::size_t j = 0; j < A.dim; ++j)
      if (!(mult(A.basis(i)) * mult(A.basis(j)) == mult(A.mul(A.basis(i), A.basis(j)))))
        rep.add("module_associativity", {i, j});
  return rep;
}

}  // namespace detail

inline CheckReport check_left_module(const HomLieRinehart& H, const LeftModule& M) {
  CheckReport rep;
  const FieldDescriptor& F = H.field();
  std::size_t nA = H.A.dim, nL = H.L_dim, nM = M.M_dim;
  if (M.a_action.dim0() != nA || M.a_action.dim1() != nM || M.a_action.dim2() != nM ||
      M.theta.dim0() != nL || M.theta.dim1() != nM || M.theta.dim2() != nM ||
      M.beta.rows() != nM || M.beta.cols() != nM)
    throw std::invalid_argument("check_left_module: shape mismatch");

  rep.merge(detail::check_a_module_laws(H.A, nM, M.a_action));

  // (1) (theta, beta) is a representation of (L, [-,-], alpha) on M
  for (std::size_t j = 0; j < nL; ++j) {
    Matrix lhs = M.theta_of(F, H.alpha_apply(H.L_basis(j))) * M.beta;
    Matrix rhs = M.beta * M.theta_of(F, H.L_basis(j));
    if (!(lhs == rhs)) rep.add("rep_alpha_beta", {j});
  }
  for (std::size_t i = 0; i < nL; ++i)
    for (std::size_t j = i + 1; j < nL; ++j) {
      Matrix lhs = M.theta_of(F, H.bracket(H.L_basis(i), H.L_basis(j))) * M.beta;
      Matrix rhs = M.theta_of(F, H.alpha_apply(H.L_basis(i))) * M.theta_of(F, H.L_basis(j)) -
                   M.theta_of(F, H.alpha_apply(H.L_basis(j))) * M.theta_of(F, H.L_basis(i));
      if (!(lhs == rhs)) rep.add("rep_bracket", {i, j});
    }

  // (2) beta(a.m) = phi(a).beta(m)
  for (std::size_t a = 0; a < nA; ++a) {
    Matrix lhs = M.beta * M.mult_matrix(H.A, H.A.basis(a));
    Matrix rhs = M.mult_matrix(H.A, H.phi_apply(H.A.basis(a))) * M.beta;
    if (!(lhs == rhs)) rep.add("beta_semilinear", {a});
  }

  // (3) {a.X, m} = phi(a){X, m}
  for (std::size_t a = 0; a < nA; ++a)
    for (std::size_t j = 0; j < nL; ++j) {
      Matrix lhs = M.theta_of(F, H.a_mul(H.A.basis(a), H.L_basis(j)));
      Matrix rhs = M.mult_matrix(H.A, H.phi_apply(H.A.basis(a))) * M.theta_of(F, H.L_basis(j));
      if (!(lhs == rhs)) rep.add("theta_semilinear", {a, j});
    }

  // (4) {X, a.m} = phi(a){X, m} + rho(X)(a).beta(m)
  for (std::size_t j = 0; j < nL; ++j)
    for (std::size_t a = 0; a < nA; ++a) {
      Matrix lhs = M.theta_of(F, H.L_basis(j)) * M.mult_matrix(H.A, H.A.basis(a));
      Matrix rhs = M.mult_matrix(H.A, H.phi_apply(H.A.basis(a))) * M.theta_of(F, H.L_basis(j)) +
                   M.mult_matrix(H.A, H.rho_apply(H.L_basis(j), H.A.basis(a))) * M.beta;
      if (!(lhs == rhs)) rep.add("theta_leibniz", {j, a});
    }

  return rep;
}

inline CheckReport check_right_module(const HomLieRinehart& H, const RightModule& M) {
  CheckReport rep;
  const FieldDescriptor& F = H.field();
  std::size_t nA = H.A.dim, nL = H.L_dim, nM = M.M_dim;
  if (M.a_action.dim0() != nA || M.a_action.dim1() != nM || M.a_action.dim2() != nM ||
      M.theta.dim0() != nM || M.theta.dim1() != nL || M.theta.dim2() != nM ||
      M.beta.rows() != nM || M.beta.cols() != nM)
    throw std::invalid_argument("check_right_module: shape mismatch");

  rep.merge(detail::check_a_module_laws(H.A, nM, M.a_action));

  for (std::size_t j = 0; j < nL; ++j) {
    Matrix lhs = M.theta_of(F, H.alpha_apply(H.L_basis(j))) * M.beta;
    Matrix rhs = M.beta * M.theta_of(F, H.L_basis(j));
    if (!(lhs == rhs)) rep.add("rep_alpha_beta", {j});
  }
  for (std::size_t i = 0; i < nL; ++i)
    for (std::size_t j = i + 1; j < nL; ++j) {
      Matrix lhs = M.theta_of(F, H.bracket(H.L_basis(i), H.L_basis(j))) * M.beta;
      Matrix rhs = M.theta_of(F, H.alpha_apply(H.L_basis(i))) * M.theta_of(F, H.L_basis(j)) -
                   M.theta_of(F, H.alpha_apply(H.L_basis(j))) * M.theta_of(F, H.L_basis(i));
      if (!(lhs == rhs)) rep.add("rep_bracket", {i, j});
    }
  for (std::size_t a = 0; a < nA; ++a) {
    Matrix lhs = M.beta * M.mult_matrix(H.A, H.A.basis(a));
    Matrix rhs = M.mult_matrix(H.A, H.phi_apply(H.A.basis(a))) * M.beta;
    if (!(lhs == rhs)) rep.add("beta_semilinear", {a});
  }

  // (3) {a.m, x} = {m, a.x} = phi(a).{m,x} - rho(x)(a).beta(m)
  for (std::size_t j = 0; j < nL; ++j)
    for (std::size_t a = 0; a < nA; ++a) {
      Matrix common = M.mult_matrix(H.A, H.phi_apply(H.A.basis(a))) * M.theta_of(F, H.L_basis(j)) -
                      M.mult_matrix(H.A, H.rho_apply(H.L_basis(j), H.A.basis(a))) * M.beta;
      Matrix lhs1 = M.theta_of(F, H.L_basis(j)) * M.mult_matrix(H.A, H.A.basis(a));
      Matrix lhs2 = M.theta_of(F, H.a_mul(H.A.basis(a), H.L_basis(j)));
      if (!(lhs1 == common)) rep.add("right_leibniz_am", {j, a});
      if (!(lhs2 == common)) rep.add("right_leibniz_ax", {j, a});
    }

  return rep;
}

// (A, phi) as the canonical left module, acting through the anchor.
inline LeftModule canonical_left_module(const HomLieRinehart& H) {
  LeftModule M;
  M.M_dim = H.A.dim;
  M.a_action = H.A.structure_constants;
  M.theta = Tensor3(H.field(), H.L_dim, H.A.dim, H.A.dim);
  for (std::size_t j = 0; j < H.L_dim; ++j)
    for (std::size_t m = 0; m < H.A.dim; ++m) {
      Vec v = H.anchor[j].apply(H.A.basis(m));
      for (std::size_t k = 0; k < H.A.dim; ++k) M.theta.at(j, m, k) = v[k];
    }
  M.beta = H.phi.matrix;
  return M;
}

// The same data declared as a *right* module. No canonical right module
// structure exists on (A, phi); the checker exhibits the failing law.
inline RightModule anchor_as_right_module(const HomLieRinehart& H) {
  RightModule M;
  M.M_dim = H.A.dim;
  M.a_action = H.A.structure_constants;
  M.theta = Tensor3(H.field(), H.A.dim, H.L_dim, H.A.dim);
  for (std::size_t m = 0; m < H.A.dim; ++m)
    for (std::size_t j = 0; j < H.L_dim; ++j) {
      Vec v = H.anchor[j].apply(H.A.basis(m));
      for (std::size_t k = 0; k < H.A.dim; ++k) M.theta.at(m, j, k) = v[k];
    }
  M.beta = H.phi.matrix;
  return M;
}

// Trivial one-dimensional module k with theta = 0 and beta = id. The
// A-action on k goes through a character (algebra map A -> k) given by a
// coordinate row vector; validated against multiplicativity and phi.
inline LeftModule trivial_module(const HomLieRinehart& H, const Vec& epsilon) {
  const FieldDescriptor& F = H.field();
  if (epsilon.size() != H.A.dim) throw std::invalid_argument("trivial_module: bad character");
  auto eval = [&](const Vec& a) {
    Scalar s = Scalar::zero(F);
    for (std::size_t i = 0; i < a.size(); ++i) s = s + epsilon[i] * a[i];
    return s;
  };
  if (!eval(H.A.unit).is_one())
    throw std::invalid_argument("trivial_module: character does not send 1 to 1");
  for (std::size_t i = 0; i < H.A.dim; ++i)
    for (std::size_t j = i; j < H.A.dim; ++j)
      if (eval(H.A.mul(H.A.basis(i), H.A.basis(j))) != eval(H.A.basis(i)) * eval(H.A.basis(j)))
        throw std::invalid_argument("trivial_module: character is not multiplicative");
  LeftModule M;
  M.M_dim = 1;
  M.a_action = Tensor3(F, H.A.dim, 1, 1);
  for (std::size_t i = 0; i < H.A.dim; ++i) M.a_action.at(i, 0, 0) = epsilon[i];
  M.theta = Tensor3(F, H.L_dim, 1, 1);
  M.beta = Matrix::identity(F, 1);
  auto rep = check_left_module(H, M);
  if (!rep.ok())
    throw std::invalid_argument("trivial_module: not a module over this algebra: " +
                                rep.violations.front().to_string());
  return M;
}

// Convenience for A = k: the unique character.
inline LeftModule trivial_module(const HomLieRinehart& H) {
  if (H.A.dim != 1)
    throw std::invalid_argument("trivial_module: character required when dim A > 1");
  return trivial_module(H, {Scalar::one(H.field())});
}

// A module (M, beta) as the abelian object (A, M, 0, phi, beta, 0) of the
// category over (A, phi).
inline HomLieRinehart module_as_hlr(const HomLieRinehart& H, const LeftModule& M) {
  HomLieRinehart R;
  R.A = H.A;
  R.phi = H.phi;
  R.L_dim = M.M_dim;
  R.a_action = M.a_action;
  R.bracket_constants = Tensor3(H.field(), M.M_dim, M.M_dim, M.M_dim);
  R.alpha = M.beta;
  R.anchor.assign(M.M_dim, Matrix(H.field(), H.A.dim, H.A.dim));
  return R;
}

}  // namespace hlr
