#pragma once

// Alpha-derivations, the induced derivation on uce, and lifting of
// automorphisms and alpha-derivations through central extensions of
// alpha-perfect algebras.

#include "hlr/uce.hpp"

namespace hlr {

struct AlphaDerivation {
  Matrix D;        // on L
  Matrix sigma_D;  // on A, the symbol
};

inline CheckReport check_alpha_derivation(const HomLieRinehart& H, const AlphaDerivation& d) {
  CheckReport rep;
  std::size_t nA = H.A.dim, nL = H.L_dim;
  if (d.D.rows() != nL || d.D.cols() != nL || d.sigma_D.rows() != nA || d.sigma_D.cols() != nA)
    throw std::invalid_argument("check_alpha_derivation: shape mismatch");

  if (!(d.D * H.alpha == H.alpha * d.D)) rep.add("d_alpha_commute", {});

  for (std::size_t i = 0; i < nL; ++i)
    for (std::size_t j = i + 1; j < nL; ++j) {
      Vec lhs = d.D.apply(H.bracket(H.L_basis(i), H.L_basis(j)));
      Vec rhs = add(H.bracket(d.D.apply(H.L_basis(i)), H.alpha_apply(H.L_basis(j))),
                    H.bracket(H.alpha_apply(H.L_basis(i)), d.D.apply(H.L_basis(j))));
      if (lhs != rhs) rep.add("d_bracket_leibniz", {i, j});
    }

  if (!is_phi_derivation(H.A, H.phi, d.sigma_D)) rep.add("symbol_phi_derivation", {});
  if (!(d.sigma_D * H.phi.matrix == H.phi.matrix * d.sigma_D)) rep.add("symbol_phi_commute", {});

  for (std::size_t a = 0; a < nA; ++a)
    for (std::size_t j = 0; j < nL; ++j) {
      Vec lhs = d.D.apply(H.a_mul(H.A.basis(a), H.L_basis(j)));
      Vec rhs = add(H.a_mul(H.phi_apply(H.A.basis(a)), d.D.apply(H.L_basis(j))),
                    H.a_mul(d.sigma_D.apply(H.A.basis(a)), H.alpha_apply(H.L_basis(j))));
      if (lhs != rhs) rep.add("d_semilinear", {a, j});
    }

  // sigma_D(x(a)) = alpha(x)(sigma_D(a)) + D(x)(phi(a))
  for (std::size_t j = 0; j < nL; ++j) {
    Matrix lhs = d.sigma_D * H.anchor[j];
    Matrix rhs = H.rho(H.alpha_apply(H.L_basis(j))) * d.sigma_D +
                 H.rho(d.D.apply(H.L_basis(j))) * H.phi.matrix;
    if (!(lhs == rhs)) rep.add("symbol_anchor", {j});
  }
  return rep;
}

// All conditions are jointly linear in (D, sigma_D); the solution space is
// returned inside End(L) (+) End(A), coordinates row-major D then sigma.
inline Subspace alpha_derivation_space(const HomLieRinehart& H) {
  const FieldDescriptor& F = H.field();
  std::size_t nL = H.L_dim, nA = H.A.dim;
  std::size_t unknowns = nL * nL + nA * nA;

  auto residual = [&](const AlphaDerivation& d) {
    Vec out;
    auto push_mat = [&](const Matrix& m) {
      Vec v = flatten(m);
      out.insert(out.end(), v.begin(), v.end());
    };
    auto push_vec = [&](const Vec& v) { out.insert(out.end(), v.begin(), v.end()); };
    push_mat(d.D * H.alpha - H.alpha * d.D);
    for (std::size_t i = 0; i < nL; ++i)
      for (std::size_t j = i + 1; j < nL; ++j)
        push_vec(sub(d.D.apply(H.bracket(H.L_basis(i), H.L_basis(j))),
                     add(H.bracket(d.D.apply(H.L_basis(i)), H.alpha_apply(H.L_basis(j))),
                         H.bracket(H.alpha_apply(H.L_basis(i)), d.D.apply(H.L_basis(j))))));
    // phi-Leibniz for the symbol
    for (std::size_t i = 0; i < nA; ++i)
      for (std::size_t j = i; j < nA; ++j)
        push_vec(sub(d.sigma_D.apply(H.A.mul(H.A.basis(i), H.A.basis(j))),
                     add(H.A.mul(H.phi_apply(H.A.basis(i)), d.sigma_D.apply(H.A.basis(j))),
                         H.A.mul(H.phi_apply(H.A.basis(j)), d.sigma_D.apply(H.A.basis(i))))));
    push_mat(d.sigma_D * H.phi.matrix - H.phi.matrix * d.sigma_D);
    for (std::size_t a = 0; a < nA; ++a)
      for (std::size_t j = 0; j < nL; ++j)
        push_vec(sub(d.D.apply(H.a_mul(H.A.basis(a), H.L_basis(j))),
                     add(H.a_mul(H.phi_apply(H.A.basis(a)), d.D.apply(H.L_basis(j))),
                         H.a_mul(d.sigma_D.apply(H.A.basis(a)), H.alpha_apply(H.L_basis(j))))));
    for (std::size_t j = 0; j < nL; ++j)
      push_mat(d.sigma_D * H.anchor[j] - H.rho(H.alpha_apply(H.L_basis(j))) * d.sigma_D -
               H.rho(d.D.apply(H.L_basis(j))) * H.phi.matrix);
    return out;
  };

  std::vector<Vec> cols;
  for (std::size_t u = 0; u < unknowns; ++u) {
    Vec unit = unit_vec(F, unknowns, u);
    AlphaDerivation d{unflatten(F, Vec(unit.begin(), unit.begin() + nL * nL), nL, nL),
                      unflatten(F, Vec(unit.begin() + nL * nL, unit.end()), nA, nA)};
    cols.push_back(residual(d));
  }
  std::size_t out_dim = cols.empty() ? 0 : cols[0].size();
  Matrix sys(F, out_dim, unknowns);
  for (std::size_t c = 0; c < unknowns; ++c)
    for (std::size_t r = 0; r < out_dim; ++r) sys.at(r, c) = cols[c][r];
  return kernel(sys);
}

// uce(D): the three-term formula on ambient tensors, projected; verified
// well-defined on the relations and a valid alpha-derivation downstairs.
inline AlphaDerivation uce_derivation(const UceAlgebra& U, const AlphaDerivation& d) {
  auto pre = check_alpha_derivation(U.source, d);
  if (!pre.ok())
    throw std::invalid_argument("uce_derivation: input is not an alpha-derivation: " +
                                pre.violations.front().to_string());
  const FieldDescriptor& F = U.source.field();
  uce_detail::Ambient amb(U.source);

  Matrix T(F, amb.dim, amb.dim);
  for (std::size_t t = 0; t < amb.dim; ++t) {
    std::size_t i, j, k;
    amb.decompose(t, i, j, k);
    Vec a = U.source.A.basis(i), x = U.source.L_basis(j), y = U.source.L_basis(k);
    Vec img = amb.tensor(d.sigma_D.apply(a), U.source.alpha_apply(x), U.source.alpha_apply(y));
    img = add(img, amb.tensor(U.source.phi_apply(a), d.D.apply(x), U.source.alpha_apply(y)));
    img = add(img, amb.tensor(U.source.phi_apply(a), U.source.alpha_apply(x), d.D.apply(y)));
    for (std::size_t r = 0; r < amb.dim; ++r) T.at(r, t) = img[r];
  }

  const Subspace& rel = U.presentation.relations();
  for (std::size_t w = 0; w < rel.dim(); ++w)
    if (!rel.contains(T.apply(rel.basis().row(w))))
      throw std::logic_error("uce_derivation: relations are not preserved");

  Matrix Du = U.presentation.project_matrix() * T * U.presentation.lift_matrix();
  AlphaDerivation out{Du, d.sigma_D};
  auto rep = check_alpha_derivation(U.algebra, out);
  if (!rep.ok())
    throw std::logic_error("uce_derivation: induced map is not an alpha-derivation: " +
                           rep.violations.front().to_string());
  if (!(U.u.f * Du == d.D * U.u.f))
    throw std::logic_error("uce_derivation: u does not intertwine the derivations");
  Subspace ker = kernel(U.u.f);
  for (std::size_t r = 0; r < ker.dim(); ++r)
    if (!ker.contains(Du.apply(ker.basis().row(r))))
      throw std::logic_error("uce_derivation: Ker(u) is not preserved");
  return out;
}

// Inner alpha-derivation from an alpha-fixed element x0:
// D(y) = [alpha(x0), y] with symbol sigma_D(a) = x0(a).
inline AlphaDerivation inner_derivation(const HomLieRinehart& H, const Vec& x0) {
  if (H.alpha_apply(x0) != x0)
    throw std::invalid_argument("inner_derivation: element is not alpha-fixed");
  Matrix D(H.field(), H.L_dim, H.L_dim);
  for (std::size_t j = 0; j < H.L_dim; ++j) {
    Vec v = H.bracket(H.alpha_apply(x0), H.L_basis(j));
    for (std::size_t k = 0; k < H.L_dim; ++k) D.at(k, j) = v[k];
  }
  return {D, H.rho(x0)};
}

// Shared pipeline data for the two lifting theorems: the isomorphism
// uce(K) ~ uce(L) over a central extension of an alpha-perfect K, and the
// ideal P = uce(f)(Ker u_K) inside uce(L).
struct LiftingContext {
  UceAlgebra uce_mid, uce_base;
  Matrix uce_f;          // uce(K) -> uce(L), invertible
  Matrix uce_f_inv;
  Subspace P;            // inside uce(L) coordinates
  Matrix w;              // u_K uce(f)^{-1}: uce(L) -> K
  Matrix w_section;      // right inverse of w
};

inline LiftingContext make_lifting_context(const Extension& E) {
  if (!is_central(E))
    throw std::invalid_argument("lifting: extension is not central");
  if (!is_alpha_perfect(E.mid))
    throw std::invalid_argument("lifting: middle algebra is not alpha-perfect");
  LiftingContext cx{build_uce(E.mid), build_uce(E.base), {}, {}, {}, {}, {}};
  HLRMorphism uf = uce_of_morphism(cx.uce_mid, cx.uce_base, E.sigma);
  cx.uce_f = uf.f;
  auto inv = inverse(cx.uce_f);
  if (!inv)
    throw std::logic_error("lifting: uce(f) is not invertible despite the hypotheses");
  cx.uce_f_inv = *inv;
  cx.P = kernel(cx.uce_mid.u.f).image_under(cx.uce_f);
  cx.w = cx.uce_mid.u.f * cx.uce_f_inv;
  auto ws = right_inverse(cx.w);
  if (!ws) throw std::logic_error("lifting: u_K uce(f)^{-1} is not surjective");
  cx.w_section = *ws;
  return cx;
}

struct AutomorphismLift {
  std::optional<Matrix> lifted;  // h-tilde on K when the gate passes
  Subspace P;                    // always reported, names the obstruction
};

// An automorphism h of the base lifts iff uce(h)(P) = P; the lift is
// h~ = w uce(h) w^{-1} with w = u_K uce(f)^{-1}.
inline AutomorphismLift lift_automorphism(const Extension& E, const HLRMorphism& h) {
  auto hrep = check_morphism(E.base, E.base, h);
  if (!hrep.ok())
    throw std::invalid_argument("lift_automorphism: h is not a morphism: " +
                                hrep.violations.front().to_string());
  if (!inverse(h.f)) throw std::invalid_argument("lift_automorphism: h is not invertible");

  LiftingContext cx = make_lifting_context(E);
  HLRMorphism uce_h = uce_of_morphism(cx.uce_base, cx.uce_base, h);
  if (!(cx.P.image_under(uce_h.f) == cx.P)) return {std::nullopt, cx.P};

  // preimage independence: w uce(h) kills Ker(w) = P
  for (std::size_t r = 0; r < cx.P.dim(); ++r)
    if (!is_zero_vec(cx.w.apply(uce_h.f.apply(cx.P.basis().row(r)))))
      throw std::logic_error("lift_automorphism: lift is not well-defined");

  Matrix h_tilde = cx.w * uce_h.f * cx.w_section;
  if (!(E.sigma.f * h_tilde == h.f * E.sigma.f))
    throw std::logic_error("lift_automorphism: f h~ != h f");
  auto rep = check_morphism(E.mid, E.mid, HLRMorphism{h.g, h_tilde});
  if (!rep.ok())
    throw std::logic_error("lift_automorphism: lift is not a morphism: " +
                           rep.violations.front().to_string());
  if (!inverse(h_tilde)) throw std::logic_error("lift_automorphism: lift is not invertible");
  Subspace kerf = kernel(E.sigma.f);
  if (!(kerf.image_under(h_tilde) == kerf))
    throw std::logic_error("lift_automorphism: Ker(f) is not preserved");
  return {h_tilde, cx.P};
}

struct DerivationLift {
  std::optional<AlphaDerivation> lifted;
  Subspace P;
};

// An alpha-derivation D_L of the base lifts iff uce(D_L)(P) stays inside
// P; the lift keeps the symbol sigma_D.
inline DerivationLift lift_alpha_derivation(const Extension& E, const AlphaDerivation& dL) {
  auto drep = check_alpha_derivation(E.base, dL);
  if (!drep.ok())
    throw std::invalid_argument("lift_alpha_derivation: not an alpha-derivation: " +
                                drep.violations.front().to_string());

  LiftingContext cx = make_lifting_context(E);
  AlphaDerivation du = uce_derivation(cx.uce_base, dL);

  bool stable = true;
  for (std::size_t r = 0; r < cx.P.dim(); ++r)
    if (!cx.P.contains(du.D.apply(cx.P.basis().row(r)))) stable = false;
  if (!stable) return {std::nullopt, cx.P};

  for (std::size_t r = 0; r < cx.P.dim(); ++r)
    if (!is_zero_vec(cx.w.apply(du.D.apply(cx.P.basis().row(r)))))
      throw std::logic_error("lift_alpha_derivation: lift is not well-defined");

  Matrix dK = cx.w * du.D * cx.w_section;
  AlphaDerivation out{dK, dL.sigma_D};
  if (!(E.sigma.f * dK == dL.D * E.sigma.f))
    throw std::logic_error("lift_alpha_derivation: f D_K != D_L f");
  auto rep = check_alpha_derivation(E.mid, out);
  if (!rep.ok())
    throw std::logic_error("lift_alpha_derivation: lift is not an alpha-derivation: " +
                           rep.violations.front().to_string());
  Subspace kerf = kernel(E.sigma.f);
  for (std::size_t r = 0; r < kerf.dim(); ++r)
    if (!kerf.contains(dK.apply(kerf.basis().row(r))))
      throw std::logic_error("lift_alpha_derivation: Ker(f) is not preserved");
  return {out, cx.P};
}

}  // namespace hlr
