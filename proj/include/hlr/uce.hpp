#pragma once

// The generators-and-relations quotient uce^phi_A(L) of A (x) L (x) L, its
// induced hom-Lie-Rinehart structure, the projection u, functoriality, and
// the universality witnesses for perfect and alpha-perfect sources.
//
// Every induced map is defined on ambient representatives and projected;
// well-definedness on the relation subspace is verified at build time
// rather than assumed.

#include "hlr/extensions.hpp"

namespace hlr {

namespace uce_detail {

struct Ambient {
  const HomLieRinehart* H;
  std::size_t nA, nL, dim;

  explicit Ambient(const HomLieRinehart& h)
      : H(&h), nA(h.A.dim), nL(h.L_dim), dim(h.A.dim * h.L_dim * h.L_dim) {}

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * nL + j) * nL + k;
  }
  void decompose(std::size_t t, std::size_t& i, std::size_t& j, std::size_t& k) const {
    k = t % nL;
    j = (t / nL) % nL;
    i = t / (nL * nL);
  }

  // a (x) x (x) y as an ambient vector
  Vec tensor(const Vec& a, const Vec& x, const Vec& y) const {
    Vec v = zero_vec(H->field(), dim);
    for (std::size_t i = 0; i < nA; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < nL; ++j) {
        if (x[j].is_zero()) continue;
        Scalar ax = a[i] * x[j];
        for (std::size_t k = 0; k < nL; ++k)
          if (!y[k].is_zero()) v[index(i, j, k)] = v[index(i, j, k)] + ax * y[k];
      }
    }
    return v;
  }

  // the A-module structure b.(a,x,y) = (ba,x,y)
  Vec a_mult(const Vec& b, const Vec& v) const {
    Vec out = zero_vec(H->field(), dim);
    for (std::size_t t = 0; t < dim; ++t) {
      if (v[t].is_zero()) continue;
      std::size_t i, j, k;
      decompose(t, i, j, k);
      Vec ba = H->A.mul(b, H->A.basis(i));
      for (std::size_t i2 = 0; i2 < nA; ++i2)
        if (!ba[i2].is_zero())
          out[index(i2, j, k)] = out[index(i2, j, k)] + v[t] * ba[i2];
    }
    return out;
  }

  // alpha-tilde on the ambient: (a,x,y) -> (phi a, alpha x, alpha y)
  Vec alpha_map(const Vec& v) const {
    Vec out = zero_vec(H->field(), dim);
    for (std::size_t t = 0; t < dim; ++t) {
      if (v[t].is_zero()) continue;
      std::size_t i, j, k;
      decompose(t, i, j, k);
      Vec w = tensor(H->phi_apply(H->A.basis(i)), H->alpha_apply(H->L_basis(j)),
                     H->alpha_apply(H->L_basis(k)));
      out = add(out, scale(v[t], w));
    }
    return out;
  }

  // the bracket of two ambient basis tensors, by the three-term formula
  Vec bracket_basis(std::size_t s, std::size_t t) const {
    std::size_t i1, j1, k1, i2, j2, k2;
    decompose(s, i1, j1, k1);
    decompose(t, i2, j2, k2);
    Vec a1 = H->A.basis(i1), a2 = H->A.basis(i2);
    Vec br1 = H->bracket(H->L_basis(j1), H->L_basis(k1));
    Vec br2 = H->bracket(H->L_basis(j2), H->L_basis(k2));
    Vec out = tensor(H->phi_apply(H->A.mul(a1, a2)), br1, br2);
    Vec c1 = H->A.mul(H->phi_apply(a1), H->rho_apply(br1, a2));
    if (!is_zero_vec(c1))
      out = add(out, tensor(c1, H->alpha_apply(H->L_basis(j2)), H->alpha_apply(H->L_basis(k2))));
    Vec c2 = H->A.mul(H->phi_apply(a2), H->rho_apply(br2, a1));
    if (!is_zero_vec(c2))
      out = sub(out, tensor(c2, H->alpha_apply(H->L_basis(j1)), H->alpha_apply(H->L_basis(k1))));
    return out;
  }

  Vec bracket_vec(const Vec& v, const Vec& w) const {
    Vec out = zero_vec(H->field(), dim);
    for (std::size_t s = 0; s < dim; ++s) {
      if (v[s].is_zero()) continue;
      for (std::size_t t = 0; t < dim; ++t) {
        if (w[t].is_zero()) continue;
        out = add(out, scale(v[s] * w[t], bracket_basis(s, t)));
      }
    }
    return out;
  }

  // rho-tilde of an ambient vector, as an endomorphism of A
  Matrix rho_map(const Vec& v) const {
    Matrix m(H->field(), nA, nA);
    for (std::size_t t = 0; t < dim; ++t) {
      if (v[t].is_zero()) continue;
      std::size_t i, j, k;
      decompose(t, i, j, k);
      Matrix term = H->A.mult_matrix(H->phi_apply(H->A.basis(i))) *
                    H->rho(H->bracket(H->L_basis(j), H->L_basis(k)));
      m = m + v[t] * term;
    }
    return m;
  }

  // Psi(a,x,y) = a [x,y], as a matrix ambient -> L
  Matrix psi_matrix() const {
    Matrix m(H->field(), nL, dim);
    for (std::size_t t = 0; t < dim; ++t) {
      std::size_t i, j, k;
      decompose(t, i, j, k);
      Vec v = H->a_mul(H->A.basis(i), H->bracket(H->L_basis(j), H->L_basis(k)));
      for (std::size_t r = 0; r < nL; ++r) m.at(r, t) = v[r];
    }
    return m;
  }
};

}  // namespace uce_detail

// M^phi_A L: the A-submodule of A (x) L (x) L spanned by the four relation
// families, enumerated on bases (family (1) polarized through family (2))
// and closed under one A-multiplication pass.
inline Subspace relation_submodule(const HomLieRinehart& H) {
  uce_detail::Ambient amb(H);
  const FieldDescriptor& F = H.field();
  std::vector<Vec> gens;
  auto push = [&](Vec v) {
    if (!is_zero_vec(v)) gens.push_back(std::move(v));
  };

  for (std::size_t i = 0; i < amb.nA; ++i) {
    // (1) diagonal a (x) x (x) x
    for (std::size_t j = 0; j < amb.nL; ++j) push(unit_vec(F, amb.dim, amb.index(i, j, j)));
    // (2) symmetric sums
    for (std::size_t j = 0; j < amb.nL; ++j)
      for (std::size_t k = j + 1; k < amb.nL; ++k) {
        Vec v = zero_vec(F, amb.dim);
        v[amb.index(i, j, k)] = Scalar::one(F);
        v[amb.index(i, k, j)] = Scalar::one(F);
        push(std::move(v));
      }
    // (3) hom-Jacobi family
    for (std::size_t j = 0; j < amb.nL; ++j)
      for (std::size_t k = j + 1; k < amb.nL; ++k)
        for (std::size_t l = k + 1; l < amb.nL; ++l) {
          Vec x = H.L_basis(j), y = H.L_basis(k), z = H.L_basis(l);
          Vec a = H.A.basis(i);
          Vec v = amb.tensor(a, H.alpha_apply(x), H.bracket(y, z));
          v = add(v, amb.tensor(a, H.alpha_apply(y), H.bracket(z, x)));
          v = add(v, amb.tensor(a, H.alpha_apply(z), H.bracket(x, y)));
          push(std::move(v));
        }
    // (4) anchor-twisted A-linearity of the second bracket slot
    for (std::size_t j = 0; j < amb.nL; ++j)
      for (std::size_t k = j + 1; k < amb.nL; ++k) {
        Vec br = H.bracket(H.L_basis(j), H.L_basis(k));
        for (std::size_t j2 = 0; j2 < amb.nL; ++j2)
          for (std::size_t k2 = j2 + 1; k2 < amb.nL; ++k2) {
            Vec br2 = H.bracket(H.L_basis(j2), H.L_basis(k2));
            Vec a = H.A.basis(i);
            Vec v = amb.tensor(H.phi_apply(a), br, br2);
            v = add(v, amb.tensor(H.rho_apply(br, a), H.alpha_apply(H.L_basis(j2)),
                                  H.alpha_apply(H.L_basis(k2))));
            v = sub(v, amb.tensor(H.A.unit, br, H.a_mul(a, br2)));
            push(std::move(v));
          }
      }
  }

  // one closure pass makes the span an A-submodule
  std::size_t base_count = gens.size();
  for (std::size_t b = 0; b < amb.nA; ++b)
    for (std::size_t g = 0; g < base_count; ++g) push(amb.a_mult(H.A.basis(b), gens[g]));

  return Subspace::span(F, gens, amb.dim);
}

struct UceAlgebra {
  HomLieRinehart source;
  QuotientPresentation presentation;
  HomLieRinehart algebra;  // structure on the quotient coordinates
  HLRMorphism u;           // algebra -> source
};

inline UceAlgebra build_uce(const HomLieRinehart& H) {
  uce_detail::Ambient amb(H);
  const FieldDescriptor& F = H.field();
  Subspace rel = relation_submodule(H);
  QuotientPresentation pres = quotient(amb.dim, rel);
  std::size_t n = pres.quotient_dim();

  // quotient basis vectors lift to ambient unit vectors on the free columns
  const auto& reps = pres.rep_columns();

  HomLieRinehart U;
  U.A = H.A;
  U.phi = H.phi;
  U.L_dim = n;
  U.a_action = Tensor3(F, amb.nA, n, n);
  U.bracket_constants = Tensor3(F, n, n, n);
  U.alpha = Matrix(F, n, n);
  U.anchor.assign(n, Matrix(F, amb.nA, amb.nA));

  for (std::size_t r = 0; r < n; ++r) {
    Vec lift_r = unit_vec(F, amb.dim, reps[r]);
    Vec av = pres.project(amb.alpha_map(lift_r));
    for (std::size_t k = 0; k < n; ++k) U.alpha.at(k, r) = av[k];
    U.anchor[r] = amb.rho_map(lift_r);
    for (std::size_t b = 0; b < amb.nA; ++b) {
      Vec mv = pres.project(amb.a_mult(H.A.basis(b), lift_r));
      for (std::size_t k = 0; k < n; ++k) U.a_action.at(b, r, k) = mv[k];
    }
    for (std::size_t s = 0; s < n; ++s) {
      Vec bv = pres.project(amb.bracket_basis(reps[r], reps[s]));
      for (std::size_t k = 0; k < n; ++k) U.bracket_constants.at(r, s, k) = bv[k];
    }
  }

  // well-definedness: every induced map must kill the relation subspace
  Matrix psi = amb.psi_matrix();
  for (std::size_t w = 0; w < rel.dim(); ++w) {
    Vec wv = rel.basis().row(w);
    if (!is_zero_vec(pres.project(amb.alpha_map(wv))))
      throw std::logic_error("build_uce: alpha does not descend to the quotient");
    if (!amb.rho_map(wv).is_zero())
      throw std::logic_error("build_uce: anchor does not descend to the quotient");
    if (!is_zero_vec(psi.apply(wv)))
      throw std::logic_error("build_uce: u does not vanish on the relations");
    for (std::size_t b = 0; b < amb.nA; ++b)
      if (!is_zero_vec(pres.project(amb.a_mult(H.A.basis(b), wv))))
        throw std::logic_error("build_uce: A-action does not descend to the quotient");
    for (std::size_t s = 0; s < n; ++s) {
      Vec lift_s = unit_vec(F, amb.dim, reps[s]);
      if (!is_zero_vec(pres.project(amb.bracket_vec(wv, lift_s))) ||
          !is_zero_vec(pres.project(amb.bracket_vec(lift_s, wv))))
        throw std::logic_error("build_uce: bracket does not descend to the quotient");
    }
  }

  auto axioms = check_axioms(U);
  if (!axioms.ok())
    throw std::logic_error("build_uce: quotient structure fails the axioms: " +
                           axioms.violations.front().to_string());

  Matrix u_mat = psi * pres.lift_matrix();
  HLRMorphism u{Matrix::identity(F, amb.nA), u_mat};
  auto morph = check_morphism(U, H, u);
  if (!morph.ok())
    throw std::logic_error("build_uce: u is not a morphism: " +
                           morph.violations.front().to_string());

  return {H, pres, U, u};
}

inline Subspace kernel_of_u(const UceAlgebra& U) { return kernel(U.u.f); }

// Functor action on a morphism f (over g = Id_A): (a,x,y) -> (a,f x,f y),
// verified to preserve relations and to commute with the projections.
inline HLRMorphism uce_of_morphism(const UceAlgebra& U1, const UceAlgebra& U2,
                                   const HLRMorphism& f) {
  const FieldDescriptor& F = U1.source.field();
  if (!(f.g == Matrix::identity(F, U1.source.A.dim)))
    throw std::invalid_argument("uce_of_morphism: only morphisms over g = Id_A");
  uce_detail::Ambient amb1(U1.source), amb2(U2.source);

  Matrix T(F, amb2.dim, amb1.dim);
  for (std::size_t t = 0; t < amb1.dim; ++t) {
    std::size_t i, j, k;
    amb1.decompose(t, i, j, k);
    Vec img = amb2.tensor(U1.source.A.basis(i), f.f.apply(U1.source.L_basis(j)),
                          f.f.apply(U1.source.L_basis(k)));
    for (std::size_t r = 0; r < amb2.dim; ++r) T.at(r, t) = img[r];
  }

  const Subspace& rel1 = U1.presentation.relations();
  const Subspace& rel2 = U2.presentation.relations();
  for (std::size_t w = 0; w < rel1.dim(); ++w)
    if (!rel2.contains(T.apply(rel1.basis().row(w))))
      throw std::logic_error("uce_of_morphism: relations are not preserved");

  Matrix induced = U2.presentation.project_matrix() * T * U1.presentation.lift_matrix();
  if (!(U2.u.f * induced == f.f * U1.u.f))
    throw std::logic_error("uce_of_morphism: naturality square does not commute");

  HLRMorphism out{Matrix::identity(F, U1.source.A.dim), induced};
  auto rep = check_morphism(U1.algebra, U2.algebra, out);
  if (!rep.ok())
    throw std::logic_error("uce_of_morphism: induced map is not a morphism: " +
                           rep.violations.front().to_string());
  return out;
}

// The universal morphism tau: uce(H) -> E.mid for perfect H and central E
// over H, built from any linear section s of sigma via
// psi(a,x,y) = a [s x, s y].
inline HLRMorphism universality_witness(const UceAlgebra& U, const Extension& E,
                                        const Matrix* section = nullptr) {
  const FieldDescriptor& F = U.source.field();
  if (!is_perfect(U.source))
    throw std::invalid_argument("universality_witness: source is not perfect");
  if (!is_central(E))
    throw std::invalid_argument("universality_witness: extension is not central");
  if (!detail::same_structure(E.base, U.source))
    throw std::invalid_argument("universality_witness: extension base differs from the source");

  std::optional<Matrix> s;
  if (section) {
    if (!(E.sigma.f * *section == Matrix::identity(F, E.base.L_dim)))
      throw std::invalid_argument("universality_witness: supplied section is not a section");
    s = *section;
  } else {
    s = right_inverse(E.sigma.f);
  }
  if (!s) throw std::logic_error("universality_witness: sigma admits no linear section");

  uce_detail::Ambient amb(U.source);
  Matrix psi(F, E.mid.L_dim, amb.dim);
  for (std::size_t t = 0; t < amb.dim; ++t) {
    std::size_t i, j, k;
    amb.decompose(t, i, j, k);
    Vec v = E.mid.a_mul(U.source.A.basis(i),
                        E.mid.bracket(s->apply(U.source.L_basis(j)),
                                      s->apply(U.source.L_basis(k))));
    for (std::size_t r = 0; r < E.mid.L_dim; ++r) psi.at(r, t) = v[r];
  }

  const Subspace& rel = U.presentation.relations();
  for (std::size_t w = 0; w < rel.dim(); ++w)
    if (!is_zero_vec(psi.apply(rel.basis().row(w))))
      throw std::logic_error("universality_witness: psi does not vanish on the relations");

  Matrix tau = psi * U.presentation.lift_matrix();
  if (!(E.sigma.f * tau == U.u.f))
    throw std::logic_error("universality_witness: sigma tau != u");
  HLRMorphism out{Matrix::identity(F, U.source.A.dim), tau};
  auto rep = check_morphism(U.algebra, E.mid, out);
  if (!rep.ok())
    throw std::logic_error("universality_witness: tau is not a morphism: " +
                           rep.violations.front().to_string());
  return out;
}

// The alpha-universal morphism for alpha-perfect H and alpha-central E:
// defined by a [alpha(s x), alpha(s y)] on the alpha-pair spanning set and
// extended by solving the projection system. Refuses when the spanning
// set fails to determine the map.
inline HLRMorphism alpha_universality_witness(const UceAlgebra& U, const Extension& E,
                                              const Matrix* section = nullptr) {
  const FieldDescriptor& F = U.source.field();
  if (!is_alpha_perfect(U.source))
    throw std::invalid_argument("alpha_universality_witness: source is not alpha-perfect");
  if (!is_alpha_central(E))
    throw std::invalid_argument("alpha_universality_witness: extension is not alpha-central");
  if (!detail::same_structure(E.base, U.source))
    throw std::invalid_argument("alpha_universality_witness: extension base differs");

  std::optional<Matrix> s;
  if (section) {
    if (!(E.sigma.f * *section == Matrix::identity(F, E.base.L_dim)))
      throw std::invalid_argument("alpha_universality_witness: supplied section is not a section");
    s = *section;
  } else {
    s = right_inverse(E.sigma.f);
  }
  if (!s) throw std::logic_error("alpha_universality_witness: sigma admits no linear section");

  uce_detail::Ambient amb(U.source);
  std::size_t n = U.presentation.quotient_dim();
  MatrixUnknownSystem sys(F, E.mid.L_dim, n);
  for (std::size_t i = 0; i < amb.nA; ++i)
    for (std::size_t j = 0; j < amb.nL; ++j)
      for (std::size_t k = j + 1; k < amb.nL; ++k) {
        Vec span_elt = U.presentation.project(
            amb.tensor(U.source.A.basis(i), U.source.alpha_apply(U.source.L_basis(j)),
                       U.source.alpha_apply(U.source.L_basis(k))));
        Matrix col(F, n, 1);
        for (std::size_t r = 0; r < n; ++r) col.at(r, 0) = span_elt[r];
        Vec rhs = E.mid.a_mul(
            U.source.A.basis(i),
            E.mid.bracket(E.mid.alpha_apply(s->apply(U.source.L_basis(j))),
                          E.mid.alpha_apply(s->apply(U.source.L_basis(k)))));
        Matrix target(F, E.mid.L_dim, 1);
        for (std::size_t r = 0; r < E.mid.L_dim; ++r) target.at(r, 0) = rhs[r];
        sys.add({{Matrix::identity(F, E.mid.L_dim), col}}, target);
      }

  if (sys.homogeneous_solutions().dim() != 0)
    throw std::invalid_argument(
        "alpha_universality_witness: alpha-pairs do not span the quotient; refusing");
  auto tau = sys.solve_any();
  if (!tau)
    throw std::logic_error("alpha_universality_witness: defining system is inconsistent");

  if (!(E.sigma.f * *tau == U.u.f))
    throw std::logic_error("alpha_universality_witness: sigma tau != u");
  HLRMorphism out{Matrix::identity(F, U.source.A.dim), *tau};
  auto rep = check_morphism(U.algebra, E.mid, out);
  if (!rep.ok())
    throw std::logic_error("alpha_universality_witness: tau is not a morphism: " +
                           rep.violations.front().to_string());
  return out;
}

}  // namespace hlr
