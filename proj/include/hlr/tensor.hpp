#pragma once

// Quasi hom-actions, compatible pairs, hom-Lie-Rinehart pairings, the
// non-abelian tensor product L * M with its projections, and the
// comparison with uce for perfect algebras.
//
// The ambient model is A (x) L (x) M with a.(x * m) -> a (x) x (x) m; the
// bilinearity relations (1), (2) are absorbed by the tensor structure and
// only families (3)-(6) generate the relation subspace.

#include "hlr/uce.hpp"

namespace hlr {

// theta[j][m][k]: action of the j-th L-basis vector on the m-th M-basis
// vector, coordinates in M.
struct QuasiHomAction {
  Tensor3 theta;

  Vec apply(const FieldDescriptor& f, const Vec& x, const Vec& m) const {
    return theta.contract(x, m, f);
  }
  Matrix acting_matrix(const FieldDescriptor& f, const Vec& x) const {
    std::size_t nM = theta.dim1();
    Matrix t(f, nM, nM);
    for (std::size_t j = 0; j < theta.dim0(); ++j) {
      if (x[j].is_zero()) continue;
      for (std::size_t m = 0; m < nM; ++m)
        for (std::size_t k = 0; k < nM; ++k)
          t.at(k, m) = t.at(k, m) + x[j] * theta.at(j, m, k);
    }
    return t;
  }
};

struct CompatiblePair {
  HomLieRinehart L, M;
  QuasiHomAction act_lm;  // L x M -> M
  QuasiHomAction act_ml;  // M x L -> L
};

inline CheckReport check_quasi_action(const HomLieRinehart& HL, const HomLieRinehart& HM,
                                      const QuasiHomAction& act) {
  CheckReport rep;
  const FieldDescriptor& F = HL.field();
  std::size_t nA = HL.A.dim, nL = HL.L_dim, nM = HM.L_dim;
  if (act.theta.dim0() != nL || act.theta.dim1() != nM || act.theta.dim2() != nM)
    throw std::invalid_argument("check_quasi_action: shape mismatch");
  if (!detail::same_A_phi(HL, HM))
    throw std::invalid_argument("check_quasi_action: algebras must share (A, phi)");

  auto multM = [&](const Vec& a) { return detail::a_mult_matrix(HM, a); };

  // (1) x(a.m) = phi(a).(x m) + (x(a)).alpha_M(m)
  for (std::size_t j = 0; j < nL; ++j)
    for (std::size_t a = 0; a < nA; ++a) {
      Matrix lhs = act.acting_matrix(F, HL.L_basis(j)) * multM(HL.A.basis(a));
      Matrix rhs = multM(HL.phi_apply(HL.A.basis(a))) * act.acting_matrix(F, HL.L_basis(j)) +
                   multM(HL.rho_apply(HL.L_basis(j), HL.A.basis(a))) * HM.alpha;
      if (!(lhs == rhs)) rep.add("qa_module_leibniz", {j, a});
    }
  // (2) [x,y](alpha_M m) = (alpha x)(y m) - (alpha y)(x m)
  for (std::size_t i = 0; i < nL; ++i)
    for (std::size_t j = i + 1; j < nL; ++j) {
      Matrix lhs = act.acting_matrix(F, HL.bracket(HL.L_basis(i), HL.L_basis(j))) * HM.alpha;
      Matrix rhs =
          act.acting_matrix(F, HL.alpha_apply(HL.L_basis(i))) * act.acting_matrix(F, HL.L_basis(j)) -
          act.acting_matrix(F, HL.alpha_apply(HL.L_basis(j))) * act.acting_matrix(F, HL.L_basis(i));
      if (!(lhs == rhs)) rep.add("qa_rep", {i, j});
    }
  // (3) (alpha x)[m,n] = [x m, alpha_M n] + [alpha_M m, x n]
  for (std::size_t j = 0; j < nL; ++j)
    for (std::size_t m = 0; m < nM; ++m)
      for (std::size_t n = m + 1; n < nM; ++n) {
        Vec lhs = act.apply(F, HL.alpha_apply(HL.L_basis(j)),
                            HM.bracket(HM.L_basis(m), HM.L_basis(n)));
        Vec rhs = add(HM.bracket(act.apply(F, HL.L_basis(j), HM.L_basis(m)),
                                 HM.alpha_apply(HM.L_basis(n))),
                      HM.bracket(HM.alpha_apply(HM.L_basis(m)),
                                 act.apply(F, HL.L_basis(j), HM.L_basis(n))));
        if (lhs != rhs) rep.add("qa_bracket_leibniz", {j, m, n});
      }
  // (4) (x m)(phi(a)) = (alpha x)(m(a)) - (alpha_M m)(x(a))
  for (std::size_t j = 0; j < nL; ++j)
    for (std::size_t m = 0; m < nM; ++m) {
      Matrix lhs = HM.rho(act.apply(F, HL.L_basis(j), HM.L_basis(m))) * HL.phi.matrix;
      Matrix rhs = HL.rho(HL.alpha_apply(HL.L_basis(j))) * HM.rho(HM.L_basis(m)) -
                   HM.rho(HM.alpha_apply(HM.L_basis(m))) * HL.rho(HL.L_basis(j));
      if (!(lhs == rhs)) rep.add("qa_anchor", {j, m});
    }
  // (5) alpha_M(x m) = (alpha x)(alpha_M m)
  for (std::size_t j = 0; j < nL; ++j) {
    Matrix lhs = HM.alpha * act.acting_matrix(F, HL.L_basis(j));
    Matrix rhs = act.acting_matrix(F, HL.alpha_apply(HL.L_basis(j))) * HM.alpha;
    if (!(lhs == rhs)) rep.add("qa_alpha_equivariance", {j});
  }
  return rep;
}

inline CheckReport check_compatible(const CompatiblePair& P) {
  CheckReport rep;
  const FieldDescriptor& F = P.L.field();
  rep.merge(check_quasi_action(P.L, P.M, P.act_lm));
  rep.merge(check_quasi_action(P.M, P.L, P.act_ml));
  std::size_t nL = P.L.L_dim, nM = P.M.L_dim;

  // (1) (x m)(a) = -(m x)(a)
  for (std::size_t j = 0; j < nL; ++j)
    for (std::size_t m = 0; m < nM; ++m) {
      Matrix lhs = P.M.rho(P.act_lm.apply(F, P.L.L_basis(j), P.M.L_basis(m)));
      Matrix rhs = P.L.rho(P.act_ml.apply(F, P.M.L_basis(m), P.L.L_basis(j)));
      if (!(lhs == Scalar::from_int(F, -1) * rhs)) rep.add("compat_anchor", {j, m});
    }
  // (2) ((m x)) n = [n, x m]
  for (std::size_t j = 0; j < nL; ++j)
    for (std::size_t m = 0; m < nM; ++m) {
      Vec mx = P.act_ml.apply(F, P.M.L_basis(m), P.L.L_basis(j));
      Matrix lhs = P.act_lm.acting_matrix(F, mx);
      Matrix rhs = detail::bracket_right(P.M, P.act_lm.apply(F, P.L.L_basis(j), P.M.L_basis(m)));
      if (!(lhs == rhs)) rep.add("compat_action_ml", {j, m});
    }
  // (3) ((x m)) y = [y, m x]
  for (std::size_t j = 0; j < nL; ++j)
    for (std::size_t m = 0; m < nM; ++m) {
      Vec xm = P.act_lm.apply(F, P.L.L_basis(j), P.M.L_basis(m));
      Matrix lhs = P.act_ml.acting_matrix(F, xm);
      Matrix rhs = detail::bracket_right(P.L, P.act_ml.apply(F, P.M.L_basis(m), P.L.L_basis(j)));
      if (!(lhs == rhs)) rep.add("compat_action_lm", {j, m});
    }
  return rep;
}

// The adjoint quasi hom-action of an algebra on itself.
inline CompatiblePair self_action(const HomLieRinehart& H) {
  CompatiblePair P{H, H, {H.bracket_constants}, {H.bracket_constants}};
  auto rep = check_compatible(P);
  if (!rep.ok())
    throw std::logic_error("self_action: bracket action fails compatibility: " +
                           rep.violations.front().to_string());
  return P;
}

// f: L x M -> N as a tensor f[j][m][k] with k in N-coordinates.
inline CheckReport check_pairing(const CompatiblePair& P, const HomLieRinehart& HN,
                                 const Tensor3& f) {
  CheckReport rep;
  const FieldDescriptor& F = P.L.field();
  std::size_t nA = P.L.A.dim, nL = P.L.L_dim, nM = P.M.L_dim;
  if (f.dim0() != nL || f.dim1() != nM || f.dim2() != HN.L_dim)
    throw std::invalid_argument("check_pairing: shape mismatch");
  auto fv = [&](const Vec& x, const Vec& m) { return f.contract(x, m, F); };

  // (1) f(x,m)(a) = (x m)(a)
  for (std::size_t j = 0; j < nL; ++j)
    for (std::size_t m = 0; m < nM; ++m) {
      Matrix lhs = HN.rho(fv(P.L.L_basis(j), P.M.L_basis(m)));
      Matrix rhs = P.M.rho(P.act_lm.apply(F, P.L.L_basis(j), P.M.L_basis(m)));
      if (!(lhs == rhs)) rep.add("pairing_anchor", {j, m});
    }
  // (2) f([x,y], alpha_M m) = f(alpha x, y m) - f(alpha y, x m)
  for (std::size_t i = 0; i < nL; ++i)
    for (std::size_t j = i + 1; j < nL; ++j)
      for (std::size_t m = 0; m < nM; ++m) {
        Vec lhs = fv(P.L.bracket(P.L.L_basis(i), P.L.L_basis(j)),
                     P.M.alpha_apply(P.M.L_basis(m)));
        Vec rhs = sub(fv(P.L.alpha_apply(P.L.L_basis(i)),
                         P.act_lm.apply(F, P.L.L_basis(j), P.M.L_basis(m))),
                      fv(P.L.alpha_apply(P.L.L_basis(j)),
                         P.act_lm.apply(F, P.L.L_basis(i), P.M.L_basis(m))));
        if (lhs != rhs) rep.add("pairing_l_bracket", {i, j, m});
      }
  // (3) f(alpha x, [m,n]) = f(n x, alpha_M m) - f(m x, alpha_M n)
  for (std::size_t j = 0; j < nL; ++j)
    for (std::size_t m = 0; m < nM; ++m)
      for (std::size_t n = m + 1; n < nM; ++n) {
        Vec lhs = fv(P.L.alpha_apply(P.L.L_basis(j)),
                     P.M.bracket(P.M.L_basis(m), P.M.L_basis(n)));
        Vec rhs = sub(fv(P.act_ml.apply(F, P.M.L_basis(n), P.L.L_basis(j)),
                         P.M.alpha_apply(P.M.L_basis(m))),
                      fv(P.act_ml.apply(F, P.M.L_basis(m), P.L.L_basis(j)),
                         P.M.alpha_apply(P.M.L_basis(n))));
        if (lhs != rhs) rep.add("pairing_m_bracket", {j, m, n});
      }
  // (4) f(alpha x, alpha_M m) = alpha_N(f(x, m))
  for (std::size_t j = 0; j < nL; ++j)
    for (std::size_t m = 0; m < nM; ++m) {
      Vec lhs = fv(P.L.alpha_apply(P.L.L_basis(j)), P.M.alpha_apply(P.M.L_basis(m)));
      Vec rhs = HN.alpha_apply(fv(P.L.L_basis(j), P.M.L_basis(m)));
      if (lhs != rhs) rep.add("pairing_alpha", {j, m});
    }
  // (5) f(a.(m x), b.(y n)) = -phi(ab).[f(x,m), f(y,n)]
  //     - phi(a) f(x,m)(b).alpha_N f(y,n) + phi(b) f(y,n)(a).alpha_N f(x,m)
  for (std::size_t a = 0; a < nA; ++a)
    for (std::size_t b = 0; b < nA; ++b)
      for (std::size_t x = 0; x < nL; ++x)
        for (std::size_t y = 0; y < nL; ++y)
          for (std::size_t m = 0; m < nM; ++m)
            for (std::size_t n = 0; n < nM; ++n) {
              Vec mx = P.act_ml.apply(F, P.M.L_basis(m), P.L.L_basis(x));
              Vec yn = P.act_lm.apply(F, P.L.L_basis(y), P.M.L_basis(n));
              Vec lhs = fv(P.L.a_mul(P.L.A.basis(a), mx), P.M.a_mul(P.M.A.basis(b), yn));
              Vec fxm = fv(P.L.L_basis(x), P.M.L_basis(m));
              Vec fyn = fv(P.L.L_basis(y), P.M.L_basis(n));
              Vec phi_ab = P.L.phi_apply(P.L.A.mul(P.L.A.basis(a), P.L.A.basis(b)));
              Vec rhs = scale(Scalar::from_int(F, -1), HN.a_mul(phi_ab, HN.bracket(fxm, fyn)));
              Vec c1 = P.L.A.mul(P.L.phi_apply(P.L.A.basis(a)),
                                 HN.rho_apply(fxm, P.L.A.basis(b)));
              rhs = sub(rhs, HN.a_mul(c1, HN.alpha_apply(fyn)));
              Vec c2 = P.L.A.mul(P.L.phi_apply(P.L.A.basis(b)),
                                 HN.rho_apply(fyn, P.L.A.basis(a)));
              rhs = add(rhs, HN.a_mul(c2, HN.alpha_apply(fxm)));
              if (lhs != rhs) rep.add("pairing_product", {a, b, x, y, m, n});
            }
  return rep;
}

struct TensorAlgebra {
  CompatiblePair pair;
  QuotientPresentation presentation;  // over A (x) L (x) M
  HomLieRinehart algebra;

  std::size_t nA() const { return pair.L.A.dim; }
  std::size_t nL() const { return pair.L.L_dim; }
  std::size_t nM() const { return pair.M.L_dim; }
  std::size_t amb_index(std::size_t i, std::size_t j, std::size_t m) const {
    return (i * nL() + j) * nM() + m;
  }

  // coset of the symbol x * m for coordinate vectors x, m
  Vec symbol(const Vec& x, const Vec& m) const {
    const FieldDescriptor& F = pair.L.field();
    Vec amb = zero_vec(F, presentation.ambient_dim());
    for (std::size_t j = 0; j < nL(); ++j) {
      if (x[j].is_zero()) continue;
      for (std::size_t mm = 0; mm < nM(); ++mm)
        if (!m[mm].is_zero()) {
          Vec unit_a = pair.L.A.unit;
          for (std::size_t i = 0; i < nA(); ++i)
            if (!unit_a[i].is_zero())
              amb[amb_index(i, j, mm)] = amb[amb_index(i, j, mm)] + unit_a[i] * x[j] * m[mm];
        }
    }
    return presentation.project(amb);
  }
};

namespace tensor_detail {

struct Ambient {
  const CompatiblePair* P;
  std::size_t nA, nL, nM, dim;

  explicit Ambient(const CompatiblePair& pair)
      : P(&pair), nA(pair.L.A.dim), nL(pair.L.L_dim), nM(pair.M.L_dim),
        dim(pair.L.A.dim * pair.L.L_dim * pair.M.L_dim) {}

  std::size_t index(std::size_t i, std::size_t j, std::size_t m) const {
    return (i * nL + j) * nM + m;
  }
  void decompose(std::size_t t, std::size_t& i, std::size_t& j, std::size_t& m) const {
    m = t % nM;
    j = (t / nM) % nL;
    i = t / (nM * nL);
  }

  Vec tensor(const Vec& a, const Vec& x, const Vec& m) const {
    const FieldDescriptor& F = P->L.field();
    Vec v = zero_vec(F, dim);
    for (std::size_t i = 0; i < nA; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < nL; ++j) {
        if (x[j].is_zero()) continue;
        Scalar ax = a[i] * x[j];
        for (std::size_t k = 0; k < nM; ++k)
          if (!m[k].is_zero()) v[index(i, j, k)] = v[index(i, j, k)] + ax * m[k];
      }
    }
    return v;
  }

  Vec a_mult(const Vec& b, const Vec& v) const {
    const FieldDescriptor& F = P->L.field();
    Vec out = zero_vec(F, dim);
    for (std::size_t t = 0; t < dim; ++t) {
      if (v[t].is_zero()) continue;
      std::size_t i, j, m;
      decompose(t, i, j, m);
      Vec ba = P->L.A.mul(b, P->L.A.basis(i));
      for (std::size_t i2 = 0; i2 < nA; ++i2)
        if (!ba[i2].is_zero()) out[index(i2, j, m)] = out[index(i2, j, m)] + v[t] * ba[i2];
    }
    return out;
  }

  Vec alpha_map(const Vec& v) const {
    const FieldDescriptor& F = P->L.field();
    Vec out = zero_vec(F, dim);
    for (std::size_t t = 0; t < dim; ++t) {
      if (v[t].is_zero()) continue;
      std::size_t i, j, m;
      decompose(t, i, j, m);
      out = add(out, scale(v[t], tensor(P->L.phi_apply(P->L.A.basis(i)),
                                        P->L.alpha_apply(P->L.L_basis(j)),
                                        P->M.alpha_apply(P->M.L_basis(m)))));
    }
    return out;
  }

  // [a(x*m), b(y*n)] = -(a.(m x)) * (b.(y n))
  Vec bracket_basis(std::size_t s, std::size_t t) const {
    const FieldDescriptor& F = P->L.field();
    std::size_t i1, j1, m1, i2, j2, m2;
    decompose(s, i1, j1, m1);
    decompose(t, i2, j2, m2);
    Vec mx = P->act_ml.apply(F, P->M.L_basis(m1), P->L.L_basis(j1));
    Vec yn = P->act_lm.apply(F, P->L.L_basis(j2), P->M.L_basis(m2));
    Vec first = P->L.a_mul(P->L.A.basis(i1), mx);
    Vec second = P->M.a_mul(P->M.A.basis(i2), yn);
    return scale(Scalar::from_int(F, -1), tensor(P->L.A.unit, first, second));
  }

  Vec bracket_vec(const Vec& v, const Vec& w) const {
    const FieldDescriptor& F = P->L.field();
    Vec out = zero_vec(F, dim);
    for (std::size_t s = 0; s < dim; ++s) {
      if (v[s].is_zero()) continue;
      for (std::size_t t = 0; t < dim; ++t) {
        if (w[t].is_zero()) continue;
        out = add(out, scale(v[s] * w[t], bracket_basis(s, t)));
      }
    }
    return out;
  }

  // rho(a(x*m))(b) = phi(a) rho_M(x m)(b)
  Matrix rho_map(const Vec& v) const {
    const FieldDescriptor& F = P->L.field();
    Matrix out(F, nA, nA);
    for (std::size_t t = 0; t < dim; ++t) {
      if (v[t].is_zero()) continue;
      std::size_t i, j, m;
      decompose(t, i, j, m);
      Matrix term = P->L.A.mult_matrix(P->L.phi_apply(P->L.A.basis(i))) *
                    P->M.rho(P->act_lm.apply(F, P->L.L_basis(j), P->M.L_basis(m)));
      out = out + v[t] * term;
    }
    return out;
  }
};

}  // namespace tensor_detail

// The relation subspace spanned by families (3)-(6) on basis tuples, with
// one A-multiplication closure pass.
inline Subspace tensor_relations(const CompatiblePair& P) {
  tensor_detail::Ambient amb(P);
  const FieldDescriptor& F = P.L.field();
  std::size_t nA = amb.nA, nL = amb.nL, nM = amb.nM;
  std::vector<Vec> gens;
  auto push = [&](Vec v) {
    if (!is_zero_vec(v)) gens.push_back(std::move(v));
  };
  const Vec& one = P.L.A.unit;

  // (3) [x,y] * alpha_M(m) = alpha(x) * (y m) - alpha(y) * (x m)
  for (std::size_t x = 0; x < nL; ++x)
    for (std::size_t y = x + 1; y < nL; ++y)
      for (std::size_t m = 0; m < nM; ++m) {
        Vec v = amb.tensor(one, P.L.bracket(P.L.L_basis(x), P.L.L_basis(y)),
                           P.M.alpha_apply(P.M.L_basis(m)));
        v = sub(v, amb.tensor(one, P.L.alpha_apply(P.L.L_basis(x)),
                              P.act_lm.apply(F, P.L.L_basis(y), P.M.L_basis(m))));
        v = add(v, amb.tensor(one, P.L.alpha_apply(P.L.L_basis(y)),
                              P.act_lm.apply(F, P.L.L_basis(x), P.M.L_basis(m))));
        push(std::move(v));
      }
  // (4) alpha(x) * [m,n] = (n x) * alpha_M(m) - (m x) * alpha_M(n)
  for (std::size_t x = 0; x < nL; ++x)
    for (std::size_t m = 0; m < nM; ++m)
      for (std::size_t n = m + 1; n < nM; ++n) {
        Vec v = amb.tensor(one, P.L.alpha_apply(P.L.L_basis(x)),
                           P.M.bracket(P.M.L_basis(m), P.M.L_basis(n)));
        v = sub(v, amb.tensor(one, P.act_ml.apply(F, P.M.L_basis(n), P.L.L_basis(x)),
                              P.M.alpha_apply(P.M.L_basis(m))));
        v = add(v, amb.tensor(one, P.act_ml.apply(F, P.M.L_basis(m), P.L.L_basis(x)),
                              P.M.alpha_apply(P.M.L_basis(n))));
        push(std::move(v));
      }
  // (5) a(m x) * b(y n) = -b(n y) * a(x m)
  // (6) a(m x) * b(y n) = phi(ab).((m x) * (y n))
  //     - phi(a)(x m)(b).(alpha(y) * alpha_M(n)) + phi(b)(y n)(a).(alpha(x) * alpha_M(m))
  for (std::size_t a = 0; a < nA; ++a)
    for (std::size_t b = 0; b < nA; ++b)
      for (std::size_t x = 0; x < nL; ++x)
        for (std::size_t y = 0; y < nL; ++y)
          for (std::size_t m = 0; m < nM; ++m)
            for (std::size_t n = 0; n < nM; ++n) {
              Vec mx = P.act_ml.apply(F, P.M.L_basis(m), P.L.L_basis(x));
              Vec yn = P.act_lm.apply(F, P.L.L_basis(y), P.M.L_basis(n));
              Vec ny = P.act_ml.apply(F, P.M.L_basis(n), P.L.L_basis(y));
              Vec xm = P.act_lm.apply(F, P.L.L_basis(x), P.M.L_basis(m));
              Vec a_mx = P.L.a_mul(P.L.A.basis(a), mx);
              Vec b_yn = P.M.a_mul(P.M.A.basis(b), yn);
              Vec lhs = amb.tensor(one, a_mx, b_yn);

              Vec v5 = add(lhs, amb.tensor(one, P.L.a_mul(P.L.A.basis(b), ny),
                                           P.M.a_mul(P.M.A.basis(a), xm)));
              push(std::move(v5));

              Vec v6 = lhs;
              Vec phi_ab = P.L.phi_apply(P.L.A.mul(P.L.A.basis(a), P.L.A.basis(b)));
              v6 = sub(v6, amb.tensor(phi_ab, mx, yn));
              Vec c1 = P.L.A.mul(P.L.phi_apply(P.L.A.basis(a)),
                                 P.M.rho_apply(xm, P.L.A.basis(b)));
              v6 = add(v6, amb.tensor(c1, P.L.alpha_apply(P.L.L_basis(y)),
                                      P.M.alpha_apply(P.M.L_basis(n))));
              Vec c2 = P.L.A.mul(P.L.phi_apply(P.L.A.basis(b)),
                                 P.M.rho_apply(yn, P.L.A.basis(a)));
              v6 = sub(v6, amb.tensor(c2, P.L.alpha_apply(P.L.L_basis(x)),
                                      P.M.alpha_apply(P.M.L_basis(m))));
              push(std::move(v6));
            }

  std::size_t base_count = gens.size();
  for (std::size_t b = 0; b < nA; ++b)
    for (std::size_t g = 0; g < base_count; ++g) push(amb.a_mult(P.L.A.basis(b), gens[g]));
  return Subspace::span(F, gens, amb.dim);
}

inline TensorAlgebra build_tensor(const CompatiblePair& P) {
  auto compat = check_compatible(P);
  if (!compat.ok())
    throw std::invalid_argument("build_tensor: actions are not compatible: " +
                                compat.violations.front().to_string());
  tensor_detail::Ambient amb(P);
  const FieldDescriptor& F = P.L.field();
  Subspace rel = tensor_relations(P);
  QuotientPresentation pres = quotient(amb.dim, rel);
  std::size_t n = pres.quotient_dim();
  const auto& reps = pres.rep_columns();

  HomLieRinehart T;
  T.A = P.L.A;
  T.phi = P.L.phi;
  T.L_dim = n;
  T.a_action = Tensor3(F, amb.nA, n, n);
  T.bracket_constants = Tensor3(F, n, n, n);
  T.alpha = Matrix(F, n, n);
  T.anchor.assign(n, Matrix(F, amb.nA, amb.nA));

  for (std::size_t r = 0; r < n; ++r) {
    Vec lift_r = unit_vec(F, amb.dim, reps[r]);
    Vec av = pres.project(amb.alpha_map(lift_r));
    for (std::size_t k = 0; k < n; ++k) T.alpha.at(k, r) = av[k];
    T.anchor[r] = amb.rho_map(lift_r);
    for (std::size_t b = 0; b < amb.nA; ++b) {
      Vec mv = pres.project(amb.a_mult(P.L.A.basis(b), lift_r));
      for (std::size_t k = 0; k < n; ++k) T.a_action.at(b, r, k) = mv[k];
    }
    for (std::size_t s = 0; s < n; ++s) {
      Vec bv = pres.project(amb.bracket_basis(reps[r], reps[s]));
      for (std::size_t k = 0; k < n; ++k) T.bracket_constants.at(r, s, k) = bv[k];
    }
  }

  for (std::size_t w = 0; w < rel.dim(); ++w) {
    Vec wv = rel.basis().row(w);
    if (!is_zero_vec(pres.project(amb.alpha_map(wv))))
      throw std::logic_error("build_tensor: alpha does not descend");
    if (!amb.rho_map(wv).is_zero())
      throw std::logic_error("build_tensor: anchor does not descend");
    for (std::size_t b = 0; b < amb.nA; ++b)
      if (!is_zero_vec(pres.project(amb.a_mult(P.L.A.basis(b), wv))))
        throw std::logic_error("build_tensor: A-action does not descend");
    for (std::size_t s = 0; s < n; ++s) {
      Vec lift_s = unit_vec(F, amb.dim, reps[s]);
      if (!is_zero_vec(pres.project(amb.bracket_vec(wv, lift_s))) ||
          !is_zero_vec(pres.project(amb.bracket_vec(lift_s, wv))))
        throw std::logic_error("build_tensor: bracket does not descend");
    }
  }

  auto axioms = check_axioms(T);
  if (!axioms.ok())
    throw std::logic_error("build_tensor: quotient structure fails the axioms: " +
                           axioms.violations.front().to_string());
  return {P, pres, T};
}

struct TensorProjections {
  HLRMorphism pi1;  // T -> L, a(x*m) -> -a(m x)
  HLRMorphism pi2;  // T -> M, a(x*m) -> a(x m)
};

inline TensorProjections projections(const TensorAlgebra& T) {
  const FieldDescriptor& F = T.pair.L.field();
  tensor_detail::Ambient amb(T.pair);
  Matrix p1(F, amb.nL, amb.dim), p2(F, amb.nM, amb.dim);
  for (std::size_t t = 0; t < amb.dim; ++t) {
    std::size_t i, j, m;
    amb.decompose(t, i, j, m);
    Vec v1 = scale(Scalar::from_int(F, -1),
                   T.pair.L.a_mul(T.pair.L.A.basis(i),
                                  T.pair.act_ml.apply(F, T.pair.M.L_basis(m), T.pair.L.L_basis(j))));
    Vec v2 = T.pair.M.a_mul(T.pair.M.A.basis(i),
                            T.pair.act_lm.apply(F, T.pair.L.L_basis(j), T.pair.M.L_basis(m)));
    for (std::size_t r = 0; r < amb.nL; ++r) p1.at(r, t) = v1[r];
    for (std::size_t r = 0; r < amb.nM; ++r) p2.at(r, t) = v2[r];
  }
  const Subspace& rel = T.presentation.relations();
  for (std::size_t w = 0; w < rel.dim(); ++w) {
    if (!is_zero_vec(p1.apply(rel.basis().row(w))) ||
        !is_zero_vec(p2.apply(rel.basis().row(w))))
      throw std::logic_error("projections: maps do not vanish on the relations");
  }
  Matrix q1 = p1 * T.presentation.lift_matrix();
  Matrix q2 = p2 * T.presentation.lift_matrix();
  Matrix gid = Matrix::identity(F, amb.nA);
  HLRMorphism m1{gid, q1}, m2{gid, q2};
  auto r1 = check_morphism(T.algebra, T.pair.L, m1);
  auto r2 = check_morphism(T.algebra, T.pair.M, m2);
  if (!r1.ok() || !r2.ok())
    throw std::logic_error("projections: induced maps are not morphisms");
  Subspace Z = center(T.algebra);
  if (!Z.contains_subspace(kernel(q1)) || !Z.contains_subspace(kernel(q2)))
    throw std::logic_error("projections: kernels are not central");
  return {m1, m2};
}

// Factor a pairing g through the canonical one: Phi(a(x*m)) = a.g(x,m).
inline HLRMorphism universal_pairing_factorization(const TensorAlgebra& T,
                                                   const HomLieRinehart& HN, const Tensor3& g) {
  auto grep = check_pairing(T.pair, HN, g);
  if (!grep.ok())
    throw std::invalid_argument("universal_pairing_factorization: g is not a pairing: " +
                                grep.violations.front().to_string());
  const FieldDescriptor& F = T.pair.L.field();
  tensor_detail::Ambient amb(T.pair);
  Matrix phi_amb(F, HN.L_dim, amb.dim);
  for (std::size_t t = 0; t < amb.dim; ++t) {
    std::size_t i, j, m;
    amb.decompose(t, i, j, m);
    Vec v = HN.a_mul(HN.A.basis(i), g.contract(T.pair.L.L_basis(j), T.pair.M.L_basis(m), F));
    for (std::size_t r = 0; r < HN.L_dim; ++r) phi_amb.at(r, t) = v[r];
  }
  const Subspace& rel = T.presentation.relations();
  for (std::size_t w = 0; w < rel.dim(); ++w)
    if (!is_zero_vec(phi_amb.apply(rel.basis().row(w))))
      throw std::logic_error("universal_pairing_factorization: Phi does not kill the relations");
  Matrix phi = phi_amb * T.presentation.lift_matrix();
  HLRMorphism out{Matrix::identity(F, amb.nA), phi};
  auto rep = check_morphism(T.algebra, HN, out);
  if (!rep.ok())
    throw std::logic_error("universal_pairing_factorization: Phi is not a morphism: " +
                           rep.violations.front().to_string());
  // Phi composed with the canonical pairing returns g
  for (std::size_t j = 0; j < amb.nL; ++j)
    for (std::size_t m = 0; m < amb.nM; ++m) {
      Vec lhs = phi.apply(T.symbol(T.pair.L.L_basis(j), T.pair.M.L_basis(m)));
      if (lhs != g.contract(T.pair.L.L_basis(j), T.pair.M.L_basis(m), F))
        throw std::logic_error("universal_pairing_factorization: Phi does not factor g");
    }
  // uniqueness: the symbols span the quotient
  std::vector<Vec> sym;
  for (std::size_t t = 0; t < amb.dim; ++t)
    sym.push_back(T.presentation.project(unit_vec(F, amb.dim, t)));
  if (Subspace::span(F, sym, T.presentation.quotient_dim()).dim() !=
      T.presentation.quotient_dim())
    throw std::logic_error("universal_pairing_factorization: symbols do not span");
  return out;
}

// The symmetry isomorphism L*M -> M*L. With the verbatim sign conventions
// (bracket -a(m x) * b(y n), relation (5)) the plain factor swap reverses
// brackets; the negated swap x * m -> -(m * x) is the morphism.
inline HLRMorphism symmetry_iso(const TensorAlgebra& T_lm, const TensorAlgebra& T_ml) {
  const FieldDescriptor& F = T_lm.pair.L.field();
  tensor_detail::Ambient amb1(T_lm.pair), amb2(T_ml.pair);
  if (amb1.dim != amb2.dim) throw std::invalid_argument("symmetry_iso: shape mismatch");
  Matrix S(F, amb2.dim, amb1.dim);
  for (std::size_t t = 0; t < amb1.dim; ++t) {
    std::size_t i, j, m;
    amb1.decompose(t, i, j, m);
    S.at(amb2.index(i, m, j), t) = Scalar::from_int(F, -1);
  }
  const Subspace& rel1 = T_lm.presentation.relations();
  const Subspace& rel2 = T_ml.presentation.relations();
  for (std::size_t w = 0; w < rel1.dim(); ++w)
    if (!rel2.contains(S.apply(rel1.basis().row(w))))
      throw std::logic_error("symmetry_iso: relations are not preserved");
  Matrix f = T_ml.presentation.project_matrix() * S * T_lm.presentation.lift_matrix();
  HLRMorphism out{Matrix::identity(F, amb1.nA), f};
  auto rep = check_morphism(T_lm.algebra, T_ml.algebra, out);
  if (!rep.ok())
    throw std::logic_error("symmetry_iso: map is not a morphism: " +
                           rep.violations.front().to_string());
  if (!inverse(f)) throw std::logic_error("symmetry_iso: map is not invertible");
  return out;
}

struct TensorExactness {
  TensorAlgebra T1, T2, T3;
  Matrix f_induced, g_induced;
  bool g_surjective = false;
  bool exact = false;
};

namespace tensor_detail {

// f (x) Id on the ambient spaces, checked against the relation subspaces.
inline Matrix induce_on_tensors(const TensorAlgebra& Ta, const TensorAlgebra& Tb,
                                const Matrix& f) {
  const FieldDescriptor& F = Ta.pair.L.field();
  Ambient amb1(Ta.pair), amb2(Tb.pair);
  Matrix T(F, amb2.dim, amb1.dim);
  for (std::size_t t = 0; t < amb1.dim; ++t) {
    std::size_t i, j, m;
    amb1.decompose(t, i, j, m);
    Vec img = amb2.tensor(Ta.pair.L.A.basis(i), f.apply(Ta.pair.L.L_basis(j)),
                          Ta.pair.M.L_basis(m));
    for (std::size_t r = 0; r < amb2.dim; ++r) T.at(r, t) = img[r];
  }
  const Subspace& rel1 = Ta.presentation.relations();
  const Subspace& rel2 = Tb.presentation.relations();
  for (std::size_t w = 0; w < rel1.dim(); ++w)
    if (!rel2.contains(T.apply(rel1.basis().row(w))))
      throw std::logic_error("tensor functor: relations are not preserved");
  Matrix out = Tb.presentation.project_matrix() * T * Ta.presentation.lift_matrix();
  HLRMorphism mor{Matrix::identity(F, amb1.nA), out};
  auto rep = check_morphism(Ta.algebra, Tb.algebra, mor);
  if (!rep.ok())
    throw std::logic_error("tensor functor: induced map is not a morphism: " +
                           rep.violations.front().to_string());
  return out;
}

inline void require_action_preserved(const HomLieRinehart& La, const HomLieRinehart& Lb,
                                     const Matrix& f, const CompatiblePair& Pa,
                                     const CompatiblePair& Pb) {
  const FieldDescriptor& F = La.field();
  std::size_t nM = Pa.M.L_dim;
  for (std::size_t m = 0; m < nM; ++m)
    for (std::size_t x = 0; x < La.L_dim; ++x) {
      // f(p x) = p f(x)
      Vec lhs = f.apply(Pa.act_ml.apply(F, Pa.M.L_basis(m), La.L_basis(x)));
      Vec rhs = Pb.act_ml.apply(F, Pb.M.L_basis(m), f.apply(La.L_basis(x)));
      if (lhs != rhs)
        throw std::invalid_argument("tensor_exactness: morphism does not preserve the M-action");
      // x p = f(x) p
      Vec lhs2 = Pa.act_lm.apply(F, La.L_basis(x), Pa.M.L_basis(m));
      Vec rhs2 = Pb.act_lm.apply(F, f.apply(La.L_basis(x)), Pb.M.L_basis(m));
      if (lhs2 != rhs2)
        throw std::invalid_argument("tensor_exactness: morphism does not preserve the L-action");
    }
  (void)Lb;
}

}  // namespace tensor_detail

// The right-exactness of - * M along a short exact sequence whose
// morphisms preserve the quasi hom-actions.
inline TensorExactness tensor_exactness(const Extension& E, const CompatiblePair& P1,
                                        const CompatiblePair& P2, const CompatiblePair& P3) {
  if (!detail::same_structure(P1.L, E.ker) || !detail::same_structure(P2.L, E.mid) ||
      !detail::same_structure(P3.L, E.base))
    throw std::invalid_argument("tensor_exactness: pairs do not match the sequence");
  auto ext_rep = check_extension(E);
  if (!ext_rep.ok())
    throw std::invalid_argument("tensor_exactness: not a short exact sequence: " +
                                ext_rep.violations.front().to_string());
  tensor_detail::require_action_preserved(E.ker, E.mid, E.i.f, P1, P2);
  tensor_detail::require_action_preserved(E.mid, E.base, E.sigma.f, P2, P3);

  TensorExactness out{build_tensor(P1), build_tensor(P2), build_tensor(P3), {}, {}};
  out.f_induced = tensor_detail::induce_on_tensors(out.T1, out.T2, E.i.f);
  out.g_induced = tensor_detail::induce_on_tensors(out.T2, out.T3, E.sigma.f);
  out.g_surjective = rank(out.g_induced) == out.T3.presentation.quotient_dim();
  out.exact = kernel(out.g_induced) == image(out.f_induced);
  return out;
}

// Comparison with uce for perfect H: (a,x,y) -> a(x*y) is an isomorphism
// commuting with the projections to H.
struct UceTensorComparison {
  HLRMorphism phi;   // uce(H) -> H*H
  HLRMorphism pi;    // H*H -> H (the second projection)
};

inline UceTensorComparison compare_uce_tensor(const UceAlgebra& U, const TensorAlgebra& T) {
  if (!is_perfect(U.source))
    throw std::invalid_argument("compare_uce_tensor: source is not perfect");
  const FieldDescriptor& F = U.source.field();
  // both quotients present the same ambient A (x) L (x) L
  if (U.presentation.ambient_dim() != T.presentation.ambient_dim())
    throw std::invalid_argument("compare_uce_tensor: ambient mismatch");
  const Subspace& relU = U.presentation.relations();
  const Subspace& relT = T.presentation.relations();
  for (std::size_t w = 0; w < relU.dim(); ++w)
    if (!relT.contains(relU.basis().row(w)))
      throw std::logic_error("compare_uce_tensor: uce relations escape the tensor relations");

  Matrix f = T.presentation.project_matrix() * U.presentation.lift_matrix();
  HLRMorphism phi{Matrix::identity(F, U.source.A.dim), f};
  auto rep = check_morphism(U.algebra, T.algebra, phi);
  if (!rep.ok())
    throw std::logic_error("compare_uce_tensor: Phi is not a morphism: " +
                           rep.violations.front().to_string());
  if (!inverse(f)) throw std::logic_error("compare_uce_tensor: Phi is not an isomorphism");

  TensorProjections proj = projections(T);
  if (!(proj.pi2.f * f == U.u.f))
    throw std::logic_error("compare_uce_tensor: u != pi Phi");
  return {phi, proj.pi2};
}

}  // namespace hlr
