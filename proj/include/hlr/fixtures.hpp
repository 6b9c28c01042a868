#pragma once

// Shared instance corpus: the small fixtures F1-F4 exercised throughout
// the test suites and CLI, plus larger perfect algebras (oscillator,
// doubled oscillator base) used by the lifting gate tests.

#include "hlr/extensions.hpp"
#include "hlr/hom_lie_rinehart.hpp"

namespace hlr::fixtures {

inline Scalar q(std::int64_t n, std::int64_t d = 1) {
  return Scalar::rational(BigInt(n), BigInt(d));
}

inline const FieldDescriptor& Q() {
  static FieldDescriptor f = FieldDescriptor::rationals();
  return f;
}

// sl2 structure constants on basis (e, f, h): [e,f]=h, [h,e]=2e, [h,f]=-2f
inline Tensor3 sl2_bracket() {
  Tensor3 b(Q(), 3, 3, 3);
  b.at(0, 1, 2) = q(1);
  b.at(1, 0, 2) = q(-1);
  b.at(2, 0, 0) = q(2);
  b.at(0, 2, 0) = q(-2);
  b.at(2, 1, 1) = q(-2);
  b.at(1, 2, 1) = q(2);
  return b;
}

// F1: A = Q, L abelian 2-dim, alpha = id, rho = 0
inline HomLieRinehart F1() {
  return from_hom_lie_algebra(Q(), Tensor3(Q(), 2, 2, 2), Matrix::identity(Q(), 2));
}

// F2: sl2 over Q with identity twists
inline HomLieRinehart F2() {
  return from_hom_lie_algebra(Q(), sl2_bracket(), Matrix::identity(Q(), 3));
}

// The sl2 automorphism alpha(e) = 2e, alpha(f) = f/2, alpha(h) = h
inline Matrix sl2_scaling_automorphism() {
  Matrix a(Q(), 3, 3);
  a.at(0, 0) = q(2);
  a.at(1, 1) = q(1, 2);
  a.at(2, 2) = q(1);
  return a;
}

// F3: sl2 twisted by that automorphism, [x,y]_alpha = alpha([x,y])
inline HomLieRinehart F3() {
  AlgebraEndo g{Matrix::identity(Q(), 1)};
  return twist_by_endomorphism(F2(), g, sl2_scaling_automorphism());
}

// k[t]/(t^2) over Q, basis (1, t)
inline CommAlgebra dual_numbers() {
  CommAlgebra A;
  A.field = Q();
  A.dim = 2;
  A.structure_constants = Tensor3(Q(), 2, 2, 2);
  A.structure_constants.at(0, 0, 0) = q(1);
  A.structure_constants.at(0, 1, 1) = q(1);
  A.structure_constants.at(1, 0, 1) = q(1);
  A.unit = {q(1), q(0)};
  return A;
}

// The Witt-type Lie-Rinehart algebra: A = Q[t]/(t^2), L free on D with
// D(t) = t, bracket [aD, bD] = (aD(b) - bD(a))D, identity twists.
// L-basis: (D, tD).
inline HomLieRinehart F4_lie_rinehart() {
  HomLieRinehart H;
  H.A = dual_numbers();
  H.phi = {Matrix::identity(Q(), 2)};
  H.L_dim = 2;
  H.a_action = Tensor3(Q(), 2, 2, 2);
  H.a_action.at(0, 0, 0) = q(1);  // 1.D = D
  H.a_action.at(0, 1, 1) = q(1);  // 1.tD = tD
  H.a_action.at(1, 0, 1) = q(1);  // t.D = tD
  // t.tD = t^2 D = 0
  H.bracket_constants = Tensor3(Q(), 2, 2, 2);
  H.bracket_constants.at(0, 1, 1) = q(1);   // [D, tD] = tD
  H.bracket_constants.at(1, 0, 1) = q(-1);
  H.alpha = Matrix::identity(Q(), 2);
  // rho(D): 1 -> 0, t -> t;  rho(tD): 1 -> 0, t -> t^2 = 0
  Matrix rD(Q(), 2, 2);
  rD.at(1, 1) = q(1);
  H.anchor = {rD, Matrix(Q(), 2, 2)};
  return H;
}

// The endomorphism used to twist F4_lie_rinehart: g(t) = 0, f(aD) = g(a)D.
inline AlgebraEndo F4_twist_g() {
  Matrix g(Q(), 2, 2);
  g.at(0, 0) = q(1);
  return {g};
}

inline Matrix F4_twist_f() {
  Matrix f(Q(), 2, 2);
  f.at(0, 0) = q(1);  // f(D) = D, f(tD) = g(t)D = 0
  return f;
}

// F4: the twist of the Witt-type algebra by (g, f); nontrivial phi.
inline HomLieRinehart F4() {
  return twist_by_endomorphism(F4_lie_rinehart(), F4_twist_g(), F4_twist_f());
}

// sl2 semidirect the standard 2-dim representation V = span(v, w):
// h v = v, h w = -w, e w = v, f v = w. Basis (e, f, h, v, w). Perfect,
// 5-dimensional, with a 1-dim second cohomology spanned by the
// symplectic cocycle.
inline HomLieRinehart sl2_semidirect_v2() {
  Tensor3 b(Q(), 5, 5, 5);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, std::int64_t c) {
    b.at(i, j, k) = q(c);
    b.at(j, i, k) = q(-c);
  };
  set(0, 1, 2, 1);   // [e,f] = h
  set(2, 0, 0, 2);   // [h,e] = 2e
  set(2, 1, 1, -2);  // [h,f] = -2f
  set(2, 3, 3, 1);   // [h,v] = v
  set(2, 4, 4, -1);  // [h,w] = -w
  set(0, 4, 3, 1);   // [e,w] = v
  set(1, 3, 4, 1);   // [f,v] = w
  return from_hom_lie_algebra(Q(), b, Matrix::identity(Q(), 5));
}

// The oscillator algebra: central extension of sl2_semidirect_v2 by z
// with [v,w] = z. Basis (e, f, h, v, w, z). Perfect, 6-dimensional.
inline HomLieRinehart oscillator() {
  Tensor3 b(Q(), 6, 6, 6);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, std::int64_t c) {
    b.at(i, j, k) = q(c);
    b.at(j, i, k) = q(-c);
  };
  set(0, 1, 2, 1);
  set(2, 0, 0, 2);
  set(2, 1, 1, -2);
  set(2, 3, 3, 1);
  set(2, 4, 4, -1);
  set(0, 4, 3, 1);
  set(1, 3, 4, 1);
  set(3, 4, 5, 1);  // [v,w] = z
  return from_hom_lie_algebra(Q(), b, Matrix::identity(Q(), 6));
}

// Direct sum of two hom-Lie-Rinehart algebras over the same (A, phi).
inline HomLieRinehart direct_sum(const HomLieRinehart& H1, const HomLieRinehart& H2) {
  const FieldDescriptor& F = H1.field();
  std::size_t n1 = H1.L_dim, n2 = H2.L_dim, nA = H1.A.dim;
  HomLieRinehart S;
  S.A = H1.A;
  S.phi = H1.phi;
  S.L_dim = n1 + n2;
  S.a_action = Tensor3(F, nA, n1 + n2, n1 + n2);
  S.bracket_constants = Tensor3(F, n1 + n2, n1 + n2, n1 + n2);
  S.alpha = Matrix(F, n1 + n2, n1 + n2);
  S.anchor.assign(n1 + n2, Matrix(F, nA, nA));
  for (std::size_t i = 0; i < nA; ++i) {
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t k = 0; k < n1; ++k) S.a_action.at(i, j, k) = H1.a_action.at(i, j, k);
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t k = 0; k < n2; ++k)
        S.a_action.at(i, n1 + j, n1 + k) = H2.a_action.at(i, j, k);
  }
  for (std::size_t j = 0; j < n1; ++j)
    for (std::size_t k = 0; k < n1; ++k) {
      for (std::size_t l = 0; l < n1; ++l)
        S.bracket_constants.at(j, k, l) = H1.bracket_constants.at(j, k, l);
      S.alpha.at(k, j) = H1.alpha.at(k, j);
    }
  for (std::size_t j = 0; j < n2; ++j)
    for (std::size_t k = 0; k < n2; ++k) {
      for (std::size_t l = 0; l < n2; ++l)
        S.bracket_constants.at(n1 + j, n1 + k, n1 + l) = H2.bracket_constants.at(j, k, l);
      S.alpha.at(n1 + k, n1 + j) = H2.alpha.at(j, k);
    }
  for (std::size_t j = 0; j < n1; ++j) S.anchor[j] = H1.anchor[j];
  for (std::size_t j = 0; j < n2; ++j) S.anchor[n1 + j] = H2.anchor[j];
  return S;
}

// L10 = (sl2 x| V2) + (sl2 x| V2): perfect base whose universal central
// extension has a 2-dim kernel that the swap automorphism permutes.
inline HomLieRinehart doubled_base() {
  HomLieRinehart L5 = sl2_semidirect_v2();
  return direct_sum(L5, L5);
}

// K11 = (sl2 x| V2) + oscillator: covers doubled_base with central kernel
// spanned by the z of the second summand.
inline HomLieRinehart doubled_mid() {
  return direct_sum(sl2_semidirect_v2(), oscillator());
}

// The swap automorphism of doubled_base (exchanges the two summands).
inline Matrix doubled_swap() {
  Matrix s(Q(), 10, 10);
  for (std::size_t i = 0; i < 5; ++i) {
    s.at(i, 5 + i) = q(1);
    s.at(5 + i, i) = q(1);
  }
  return s;
}

// The grading automorphism of doubled_base: fixes both sl2 parts, negates
// both V2 parts. Lifts through doubled_extension.
inline Matrix doubled_grading() {
  Matrix s = Matrix::identity(Q(), 10);
  for (std::size_t b : {3, 4, 8, 9}) s.at(b, b) = q(-1);
  return s;
}

// The central extension z -> K11 -> L10 collapsing the oscillator center.
inline Extension doubled_extension() {
  HomLieRinehart mid = doubled_mid();    // (sl2 x| V2) + oscillator, dim 11
  HomLieRinehart base = doubled_base();  // (sl2 x| V2) + (sl2 x| V2), dim 10
  HomLieRinehart ker = from_hom_lie_algebra(Q(), Tensor3(Q(), 1, 1, 1), Matrix::identity(Q(), 1));
  Matrix inc(Q(), 11, 1);
  inc.at(10, 0) = q(1);  // the z of the oscillator summand
  Matrix proj(Q(), 10, 11);
  for (std::size_t i = 0; i < 10; ++i) proj.at(i, i) = q(1);
  Matrix gid = Matrix::identity(Q(), 1);
  return {ker, mid, base, {gid, inc}, {gid, proj}};
}

}  // namespace hlr::fixtures
