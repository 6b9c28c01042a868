#pragma once

// The central structure (A, L, [-,-], phi, alpha, rho) given by structure
// constants, with full axiom checking, the example constructors, centers,
// derived submodules, perfectness predicates, and morphisms.

#include <vector>

#include "hlr/comm_algebra.hpp"

namespace hlr {

struct HomLieRinehart {
  CommAlgebra A;
  AlgebraEndo phi;
  std::size_t L_dim = 0;
  Tensor3 a_action;             // mu[i][j][k]: e_i . x_j = sum_k mu[i][j][k] x_k
  Tensor3 bracket_constants;    // b[i][j][k]: [x_i, x_j] = sum_k b[i][j][k] x_k
  Matrix alpha;                 // L_dim x L_dim
  std::vector<Matrix> anchor;   // per L-basis vector: rho(x_j) as dimA x dimA

  const FieldDescriptor& field() const { return A.field; }

  Vec a_mul(const Vec& a, const Vec& x) const { return a_action.contract(a, x, field()); }
  Vec bracket(const Vec& x, const Vec& y) const {
    return bracket_constants.contract(x, y, field());
  }
  Vec alpha_apply(const Vec& x) const { return alpha.apply(x); }
  Vec phi_apply(const Vec& a) const { return phi.apply(a); }

  // rho(x) as an endomorphism of A, by linearity in x
  Matrix rho(const Vec& x) const {
    Matrix m(field(), A.dim, A.dim);
    for (std::size_t j = 0; j < L_dim; ++j) {
      if (x[j].is_zero()) continue;
      m = m + x[j] * anchor[j];
    }
    return m;
  }
  Vec rho_apply(const Vec& x, const Vec& a) const { return rho(x).apply(a); }

  Vec L_basis(std::size_t j) const { return unit_vec(field(), L_dim, j); }
};

// A morphism (g, f) between hom-Lie-Rinehart algebras over the same field;
// within hLR_A^phi the algebra map g is the identity, but the general pair
// is kept for endomorphism twisting.
struct HLRMorphism {
  Matrix g;  // on A-coordinates (source A -> target A)
  Matrix f;  // on L-coordinates (source L -> target L)
};

inline HLRMorphism identity_morphism(const HomLieRinehart& H) {
  return {Matrix::identity(H.field(), H.A.dim), Matrix::identity(H.field(), H.L_dim)};
}

inline HLRMorphism compose(const HLRMorphism& outer, const HLRMorphism& inner) {
  return {outer.g * inner.g, outer.f * inner.f};
}

inline CheckReport check_axioms(const HomLieRinehart& H) {
  CheckReport rep;
  std::size_t nA = H.A.dim, nL = H.L_dim;
  if (H.a_action.dim0() != nA || H.a_action.dim1() != nL || H.a_action.dim2() != nL ||
      H.bracket_constants.dim0() != nL || H.bracket_constants.dim1() != nL ||
      H.bracket_constants.dim2() != nL || H.alpha.rows() != nL || H.alpha.cols() != nL ||
      H.anchor.size() != nL)
    throw std::invalid_argument("check_axioms: dimension mismatch");
  for (const auto& m : H.anchor)
    if (m.rows() != nA || m.cols() != nA)
      throw std::invalid_argument("check_axioms: anchor shape mismatch");

  rep.merge(check_comm_algebra(H.A));
  rep.merge(check_algebra_endo(H.A, H.phi));

  // bracket skew-symmetry, including the diagonal
  for (std::size_t i = 0; i < nL; ++i)
    for (std::size_t j = i; j < nL; ++j)
      for (std::size_t k = 0; k < nL; ++k)
        if (H.bracket_constants.at(i, j, k) != -H.bracket_constants.at(j, i, k))
          rep.add("bracket_antisymmetry", {i, j, k});

  // unital associative module action of A on L
  for (std::size_t j = 0; j < nL; ++j)
    if (H.a_mul(H.A.unit, H.L_basis(j)) != H.L_basis(j)) rep.add("module_unit", {j});
  for (std::size_t i = 0; i < nA; ++i)
    for (std::size_t j = 0; j < nA; ++j)
      for (std::size_t k = 0; k < nL; ++k) {
        Vec lhs = H.a_mul(H.A.basis(i), H.a_mul(H.A.basis(j), H.L_basis(k)));
        Vec rhs = H.a_mul(H.A.mul(H.A.basis(i), H.A.basis(j)), H.L_basis(k));
        if (lhs != rhs) rep.add("module_associativity", {i, j, k});
      }

  // hom-Lie algebra: alpha multiplicative on brackets, hom-Jacobi
  for (std::size_t i = 0; i < nL; ++i)
    for (std::size_t j = i + 1; j < nL; ++j) {
      Vec lhs = H.alpha_apply(H.bracket(H.L_basis(i), H.L_basis(j)));
      Vec rhs = H.bracket(H.alpha_apply(H.L_basis(i)), H.alpha_apply(H.L_basis(j)));
      if (lhs != rhs) rep.add("alpha_bracket", {i, j});
    }
  for (std::size_t i = 0; i < nL; ++i)
    for (std::size_t j = i + 1; j < nL; ++j)
      for (std::size_t k = j + 1; k < nL; ++k) {
        Vec x = H.L_basis(i), y = H.L_basis(j), z = H.L_basis(k);
        Vec sum = add(add(H.bracket(H.alpha_apply(x), H.bracket(y, z)),
                          H.bracket(H.alpha_apply(y), H.bracket(z, x))),
                      H.bracket(H.alpha_apply(z), H.bracket(x, y)));
        if (!is_zero_vec(sum)) rep.add("hom_jacobi", {i, j, k});
      }

  // (2) alpha(a.x) = phi(a).alpha(x)
  for (std::size_t i = 0; i < nA; ++i)
    for (std::size_t j = 0; j < nL; ++j) {
      Vec lhs = H.alpha_apply(H.a_mul(H.A.basis(i), H.L_basis(j)));
      Vec rhs = H.a_mul(H.phi_apply(H.A.basis(i)), H.alpha_apply(H.L_basis(j)));
      if (lhs != rhs) rep.add("alpha_semilinear", {i, j});
    }

  // each rho(x_j) is a phi-derivation of A
  for (std::size_t j = 0; j < nL; ++j)
    if (!is_phi_derivation(H.A, H.phi, H.anchor[j])) rep.add("anchor_phi_derivation", {j});

  // (3) (rho, phi) is a representation of (L, [-,-], alpha) on A
  for (std::size_t j = 0; j < nL; ++j) {
    Matrix lhs = H.rho(H.alpha_apply(H.L_basis(j))) * H.phi.matrix;
    Matrix rhs = H.phi.matrix * H.anchor[j];
    if (!(lhs == rhs)) rep.add("rep_alpha_phi", {j});
  }
  for (std::size_t i = 0; i < nL; ++i)
    for (std::size_t j = i + 1; j < nL; ++j) {
      Matrix lhs = H.rho(H.bracket(H.L_basis(i), H.L_basis(j))) * H.phi.matrix;
      Matrix rhs = H.rho(H.alpha_apply(H.L_basis(i))) * H.anchor[j] -
                   H.rho(H.alpha_apply(H.L_basis(j))) * H.anchor[i];
      if (!(lhs == rhs)) rep.add("rep_bracket", {i, j});
    }

  // (4) rho(a.x) = phi(a).rho(x)
  for (std::size_t i = 0; i < nA; ++i)
    for (std::size_t j = 0; j < nL; ++j) {
      Matrix lhs = H.rho(H.a_mul(H.A.basis(i), H.L_basis(j)));
      Matrix rhs = H.A.mult_matrix(H.phi_apply(H.A.basis(i))) * H.anchor[j];
      if (!(lhs == rhs)) rep.add("anchor_semilinear", {i, j});
    }

  // (5) [x, a.y] = phi(a)[x,y] + rho(x)(a) alpha(y)
  for (std::size_t i = 0; i < nL; ++i)
    for (std::size_t a = 0; a < nA; ++a)
      for (std::size_t j = 0; j < nL; ++j) {
        Vec x = H.L_basis(i), y = H.L_basis(j), av = H.A.basis(a);
        Vec lhs = H.bracket(x, H.a_mul(av, y));
        Vec rhs = add(H.a_mul(H.phi_apply(av), H.bracket(x, y)),
                      H.a_mul(H.rho_apply(x, av), H.alpha_apply(y)));
        if (lhs != rhs) rep.add("twisted_leibniz", {i, a, j});
      }

  return rep;
}

inline CheckReport check_morphism(const HomLieRinehart& src, const HomLieRinehart& dst,
                                  const HLRMorphism& m) {
  CheckReport rep;
  if (m.g.rows() != dst.A.dim || m.g.cols() != src.A.dim || m.f.rows() != dst.L_dim ||
      m.f.cols() != src.L_dim)
    throw std::invalid_argument("check_morphism: shape mismatch");
  if (src.field() != dst.field()) throw std::invalid_argument("check_morphism: field mismatch");

  if (m.g.apply(src.A.unit) != dst.A.unit) rep.add("morphism_unit", {});
  for (std::size_t i = 0; i < src.A.dim; ++i)
    for (std::size_t j = i; j < src.A.dim; ++j) {
      Vec lhs = m.g.apply(src.A.mul(src.A.basis(i), src.A.basis(j)));
      Vec rhs = dst.A.mul(m.g.apply(src.A.basis(i)), m.g.apply(src.A.basis(j)));
      if (lhs != rhs) rep.add("morphism_algebra_map", {i, j});
    }

  // (1) f(a.x) = g(a).f(x)
  for (std::size_t i = 0; i < src.A.dim; ++i)
    for (std::size_t j = 0; j < src.L_dim; ++j) {
      Vec lhs = m.f.apply(src.a_mul(src.A.basis(i), src.L_basis(j)));
      Vec rhs = dst.a_mul(m.g.apply(src.A.basis(i)), m.f.apply(src.L_basis(j)));
      if (lhs != rhs) rep.add("morphism_semilinear", {i, j});
    }
  // (2) f[x,y] = [f x, f y]
  for (std::size_t i = 0; i < src.L_dim; ++i)
    for (std::size_t j = i + 1; j < src.L_dim; ++j) {
      Vec lhs = m.f.apply(src.bracket(src.L_basis(i), src.L_basis(j)));
      Vec rhs = dst.bracket(m.f.apply(src.L_basis(i)), m.f.apply(src.L_basis(j)));
      if (lhs != rhs) rep.add("morphism_bracket", {i, j});
    }
  // (3) f alpha = alpha' f
  if (!(m.f * src.alpha == dst.alpha * m.f)) rep.add("morphism_alpha", {});
  // (4) g phi = psi g
  if (!(m.g * src.phi.matrix == dst.phi.matrix * m.g)) rep.add("morphism_phi", {});
  // (5) g(rho(x)(a)) = rho'(f x)(g a)
  for (std::size_t j = 0; j < src.L_dim; ++j) {
    Matrix lhs = m.g * src.anchor[j];
    Matrix rhs = dst.rho(m.f.apply(src.L_basis(j))) * m.g;
    if (!(lhs == rhs)) rep.add("morphism_anchor", {j});
  }
  return rep;
}

// Example: a hom-Lie algebra as a hom-Lie-Rinehart algebra over A = k.
inline HomLieRinehart from_hom_lie_algebra(const FieldDescriptor& f, const Tensor3& bracket,
                                           const Matrix& alpha) {
  std::size_t n = bracket.dim0();
  HomLieRinehart H;
  H.A.field = f;
  H.A.dim = 1;
  H.A.structure_constants = Tensor3(f, 1, 1, 1);
  H.A.structure_constants.at(0, 0, 0) = Scalar::one(f);
  H.A.unit = {Scalar::one(f)};
  H.phi = {Matrix::identity(f, 1)};
  H.L_dim = n;
  H.a_action = Tensor3(f, 1, n, n);
  for (std::size_t j = 0; j < n; ++j) H.a_action.at(0, j, j) = Scalar::one(f);
  H.bracket_constants = bracket;
  H.alpha = alpha;
  H.anchor.assign(n, Matrix(f, 1, 1));
  auto rep = check_axioms(H);
  if (!rep.ok())
    throw std::invalid_argument("from_hom_lie_algebra: input is not a hom-Lie algebra: " +
                                rep.violations.front().to_string());
  return H;
}

// Example "obtained by composition": twist a Lie-Rinehart algebra
// (alpha = id, phi = id) by one of its endomorphisms (g, f).
inline HomLieRinehart twist_by_endomorphism(const HomLieRinehart& H, const AlgebraEndo& g,
                                            const Matrix& f) {
  if (!(H.alpha == Matrix::identity(H.field(), H.L_dim)) ||
      !(H.phi.matrix == Matrix::identity(H.field(), H.A.dim)))
    throw std::invalid_argument("twist_by_endomorphism: input must be a Lie-Rinehart algebra");
  HLRMorphism endo{g.matrix, f};
  auto rep = check_morphism(H, H, endo);
  if (!rep.ok())
    throw std::invalid_argument("twist_by_endomorphism: (g,f) is not an endomorphism: " +
                                rep.violations.front().to_string());
  HomLieRinehart T = H;
  T.phi = g;
  T.alpha = f;
  // [x,y]_alpha = f([x,y])
  T.bracket_constants = Tensor3(H.field(), H.L_dim, H.L_dim, H.L_dim);
  for (std::size_t i = 0; i < H.L_dim; ++i)
    for (std::size_t j = 0; j < H.L_dim; ++j) {
      Vec v = f.apply(H.bracket(H.L_basis(i), H.L_basis(j)));
      for (std::size_t k = 0; k < H.L_dim; ++k) T.bracket_constants.at(i, j, k) = v[k];
    }
  // rho_phi(x)(a) = g(rho(x)(a))
  for (std::size_t j = 0; j < H.L_dim; ++j) T.anchor[j] = g.matrix * H.anchor[j];
  auto check = check_axioms(T);
  if (!check.ok())
    throw std::logic_error("twist_by_endomorphism: twisted structure failed validation: " +
                           check.violations.front().to_string());
  return T;
}

// Restrict the full structure to a subspace S of L that is closed under
// the A-action, alpha, and brackets; coordinates are taken in S's
// canonical basis. Throws if S is not closed.
inline HomLieRinehart restrict_to_subspace(const HomLieRinehart& H, const Subspace& S) {
  const FieldDescriptor& F = H.field();
  std::size_t n = S.dim();
  HomLieRinehart R;
  R.A = H.A;
  R.phi = H.phi;
  R.L_dim = n;
  R.a_action = Tensor3(F, H.A.dim, n, n);
  R.bracket_constants = Tensor3(F, n, n, n);
  R.alpha = Matrix(F, n, n);
  R.anchor.assign(n, Matrix(F, H.A.dim, H.A.dim));
  for (std::size_t r = 0; r < n; ++r) {
    Vec br = S.basis().row(r);
    Vec av = S.coordinates(H.alpha_apply(br));
    for (std::size_t k = 0; k < n; ++k) R.alpha.at(k, r) = av[k];
    R.anchor[r] = H.rho(br);
    for (std::size_t i = 0; i < H.A.dim; ++i) {
      Vec m = S.coordinates(H.a_mul(H.A.basis(i), br));
      for (std::size_t k = 0; k < n; ++k) R.a_action.at(i, r, k) = m[k];
    }
    for (std::size_t s = 0; s < n; ++s) {
      Vec b = S.coordinates(H.bracket(br, S.basis().row(s)));
      for (std::size_t k = 0; k < n; ++k) R.bracket_constants.at(r, s, k) = b[k];
    }
  }
  return R;
}

// Categorical product over (A, phi): the solution space of rho_L(l) =
// rho_M(m) inside L + M with componentwise structure.
struct FiberProduct {
  HomLieRinehart product;
  Subspace carrier;      // inside L + M coordinates
  HLRMorphism proj1, proj2;
};

inline FiberProduct fiber_product(const HomLieRinehart& H1, const HomLieRinehart& H2) {
  if (!(H1.A.structure_constants == H2.A.structure_constants) || H1.A.unit != H2.A.unit ||
      !(H1.phi.matrix == H2.phi.matrix))
    throw std::invalid_argument("fiber_product: algebras must share (A, phi)");
  const FieldDescriptor& F = H1.field();
  std::size_t n1 = H1.L_dim, n2 = H2.L_dim, nA = H1.A.dim;

  // rho_L(l) - rho_M(m) = 0 as a linear condition on (l, m)
  Matrix cond(F, nA * nA, n1 + n2);
  for (std::size_t j = 0; j < n1; ++j) {
    Vec v = flatten(H1.anchor[j]);
    for (std::size_t r = 0; r < v.size(); ++r) cond.at(r, j) = v[r];
  }
  for (std::size_t j = 0; j < n2; ++j) {
    Vec v = flatten(H2.anchor[j]);
    for (std::size_t r = 0; r < v.size(); ++r) cond.at(r, n1 + j) = -v[r];
  }
  Subspace carrier = kernel(cond);

  auto split = [&](const Vec& v) {
    Vec l(v.begin(), v.begin() + n1), m(v.begin() + n1, v.end());
    return std::pair<Vec, Vec>(l, m);
  };
  auto join = [&](const Vec& l, const Vec& m) {
    Vec v = l;
    v.insert(v.end(), m.begin(), m.end());
    return v;
  };

  std::size_t n = carrier.dim();
  HomLieRinehart P;
  P.A = H1.A;
  P.phi = H1.phi;
  P.L_dim = n;
  P.a_action = Tensor3(F, nA, n, n);
  P.bracket_constants = Tensor3(F, n, n, n);
  P.alpha = Matrix(F, n, n);
  P.anchor.assign(n, Matrix(F, nA, nA));
  for (std::size_t r = 0; r < n; ++r) {
    auto [l, m] = split(carrier.basis().row(r));
    Vec av = carrier.coordinates(join(H1.alpha_apply(l), H2.alpha_apply(m)));
    for (std::size_t k = 0; k < n; ++k) P.alpha.at(k, r) = av[k];
    P.anchor[r] = H1.rho(l);
    for (std::size_t i = 0; i < nA; ++i) {
      Vec mv = carrier.coordinates(
          join(H1.a_mul(H1.A.basis(i), l), H2.a_mul(H2.A.basis(i), m)));
      for (std::size_t k = 0; k < n; ++k) P.a_action.at(i, r, k) = mv[k];
    }
    for (std::size_t s = 0; s < n; ++s) {
      auto [l2, m2] = split(carrier.basis().row(s));
      Vec b = carrier.coordinates(join(H1.bracket(l, l2), H2.bracket(m, m2)));
      for (std::size_t k = 0; k < n; ++k) P.bracket_constants.at(r, s, k) = b[k];
    }
  }

  Matrix p1(F, n1, n), p2(F, n2, n);
  for (std::size_t r = 0; r < n; ++r) {
    auto [l, m] = split(carrier.basis().row(r));
    for (std::size_t i = 0; i < n1; ++i) p1.at(i, r) = l[i];
    for (std::size_t i = 0; i < n2; ++i) p2.at(i, r) = m[i];
  }
  Matrix gid = Matrix::identity(F, nA);
  return {P, carrier, {gid, p1}, {gid, p2}};
}

inline bool is_ideal(const HomLieRinehart& H, const Subspace& S);

// Z_A(L): x with [a.x, z] = [a.alpha(x), z] = 0 and rho(x) = 0 for all
// basis a, z. Returned canonically; the ideal property is re-verified.
inline Subspace center(const HomLieRinehart& H) {
  const FieldDescriptor& F = H.field();
  std::size_t nA = H.A.dim, nL = H.L_dim;
  std::vector<Vec> eqs;
  for (std::size_t a = 0; a < nA; ++a)
    for (std::size_t z = 0; z < nL; ++z)
      for (std::size_t out = 0; out < nL; ++out) {
        Vec eq1 = zero_vec(F, nL), eq2 = zero_vec(F, nL);
        for (std::size_t j = 0; j < nL; ++j) {
          Vec v1 = H.bracket(H.a_mul(H.A.basis(a), H.L_basis(j)), H.L_basis(z));
          eq1[j] = v1[out];
          Vec v2 = H.bracket(H.a_mul(H.A.basis(a), H.alpha_apply(H.L_basis(j))), H.L_basis(z));
          eq2[j] = v2[out];
        }
        eqs.push_back(eq1);
        eqs.push_back(eq2);
      }
  for (std::size_t r = 0; r < nA; ++r)
    for (std::size_t c = 0; c < nA; ++c) {
      Vec eq = zero_vec(F, nL);
      for (std::size_t j = 0; j < nL; ++j) eq[j] = H.anchor[j].at(r, c);
      eqs.push_back(eq);
    }
  Subspace Z = kernel(Matrix::from_rows(F, eqs, nL));
  if (!is_ideal(H, Z)) throw std::logic_error("center: computed subspace is not an ideal");
  return Z;
}

// {L, L}: the A-submodule generated by all brackets, computed as the
// field-span of one A-multiplication pass over basis brackets.
inline Subspace derived_submodule(const HomLieRinehart& H) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < H.L_dim; ++i)
    for (std::size_t j = i + 1; j < H.L_dim; ++j) {
      Vec b = H.bracket(H.L_basis(i), H.L_basis(j));
      for (std::size_t a = 0; a < H.A.dim; ++a) gens.push_back(H.a_mul(H.A.basis(a), b));
    }
  return Subspace::span(H.field(), gens, H.L_dim);
}

inline bool is_perfect(const HomLieRinehart& H) {
  return derived_submodule(H).dim() == H.L_dim;
}

// {alpha(L), alpha(L)}: the A-span of brackets of alpha-images.
inline Subspace alpha_derived_submodule(const HomLieRinehart& H) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < H.L_dim; ++i)
    for (std::size_t j = i + 1; j < H.L_dim; ++j) {
      Vec b = H.bracket(H.alpha_apply(H.L_basis(i)), H.alpha_apply(H.L_basis(j)));
      for (std::size_t a = 0; a < H.A.dim; ++a) gens.push_back(H.a_mul(H.A.basis(a), b));
    }
  return Subspace::span(H.field(), gens, H.L_dim);
}

inline bool is_alpha_perfect(const HomLieRinehart& H) {
  return alpha_derived_submodule(H).dim() == H.L_dim;
}

inline bool is_subalgebra(const HomLieRinehart& H, const Subspace& S) {
  for (std::size_t r = 0; r < S.dim(); ++r) {
    Vec s = S.basis().row(r);
    for (std::size_t a = 0; a < H.A.dim; ++a)
      if (!S.contains(H.a_mul(H.A.basis(a), s))) return false;
    if (!S.contains(H.alpha_apply(s))) return false;
    for (std::size_t t = 0; t < S.dim(); ++t)
      if (!S.contains(H.bracket(s, S.basis().row(t)))) return false;
  }
  return true;
}

inline bool is_quasi_ideal(const HomLieRinehart& H, const Subspace& S) {
  if (!is_subalgebra(H, S)) return false;
  for (std::size_t r = 0; r < S.dim(); ++r)
    for (std::size_t j = 0; j < H.L_dim; ++j)
      if (!S.contains(H.bracket(S.basis().row(r), H.L_basis(j)))) return false;
  return true;
}

inline bool is_ideal(const HomLieRinehart& H, const Subspace& S) {
  if (!is_quasi_ideal(H, S)) return false;
  for (std::size_t r = 0; r < S.dim(); ++r)
    if (!H.rho(S.basis().row(r)).is_zero()) return false;
  return true;
}

}  // namespace hlr
