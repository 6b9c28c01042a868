#pragma once

// Randomized valid Lie-Rinehart seeds, their composition twists, and
// structure-constant mutations, shared by the unit and acceptance suites.
// Deterministic: everything is driven by a caller-provided engine.

#include <random>

#include "hlr/fixtures.hpp"

namespace gen {

using namespace hlr;

inline Scalar rq(std::mt19937& rng, int span = 3) {
  return fixtures::q(static_cast<std::int64_t>(rng() % (2 * span + 1)) - span);
}

// Random invertible 2x2 integer matrix (det != 0), used to conjugate sl2.
inline Matrix random_gl2(std::mt19937& rng) {
  const FieldDescriptor& Q = fixtures::Q();
  for (;;) {
    Matrix T(Q, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) T.at(i, j) = rq(rng, 2);
    Scalar det = T.at(0, 0) * T.at(1, 1) - T.at(0, 1) * T.at(1, 0);
    if (!det.is_zero()) return T;
  }
}

// The adjoint action of T in GL2 on traceless 2x2 matrices in the basis
// (e, f, h) = ([[0,1],[0,0]], [[0,0],[1,0]], [[1,0],[0,-1]]); always an
// automorphism of sl2.
inline Matrix sl2_adjoint(const Matrix& T) {
  const FieldDescriptor& Q = fixtures::Q();
  Scalar det = T.at(0, 0) * T.at(1, 1) - T.at(0, 1) * T.at(1, 0);
  Matrix Tinv(Q, 2, 2);
  Tinv.at(0, 0) = T.at(1, 1) / det;
  Tinv.at(0, 1) = -T.at(0, 1) / det;
  Tinv.at(1, 0) = -T.at(1, 0) / det;
  Tinv.at(1, 1) = T.at(0, 0) / det;
  auto to_mat = [&](std::size_t b) {
    Matrix m(Q, 2, 2);
    if (b == 0) m.at(0, 1) = fixtures::q(1);
    if (b == 1) m.at(1, 0) = fixtures::q(1);
    if (b == 2) { m.at(0, 0) = fixtures::q(1); m.at(1, 1) = fixtures::q(-1); }
    return m;
  };
  Matrix ad(Q, 3, 3);
  for (std::size_t b = 0; b < 3; ++b) {
    Matrix img = T * to_mat(b) * Tinv;
    // coordinates back in (e, f, h)
    ad.at(0, b) = img.at(0, 1);
    ad.at(1, b) = img.at(1, 0);
    ad.at(2, b) = img.at(0, 0);
  }
  return ad;
}

// A random valid Lie-Rinehart seed together with a random endomorphism of
// it, suitable for twist_by_endomorphism.
struct TwistCase {
  HomLieRinehart seed;
  AlgebraEndo g;
  Matrix f;
};

inline TwistCase random_twist_case(std::mt19937& rng) {
  const FieldDescriptor& Q = fixtures::Q();
  switch (rng() % 3) {
    case 0: {
      // sl2 with a random inner automorphism
      HomLieRinehart H = fixtures::F2();
      return {H, AlgebraEndo{Matrix::identity(Q, 1)}, sl2_adjoint(random_gl2(rng))};
    }
    case 1: {
      // Witt-type algebra over Q[t]/(t^2): endomorphisms
      // g(t) = c t, f(D) = D + w tD (c arbitrary, w arbitrary; for c = 0
      // also f(D) = w0 D + w tD with arbitrary w0)
      HomLieRinehart H = fixtures::F4_lie_rinehart();
      Scalar c = rq(rng, 2);
      Matrix g(Q, 2, 2);
      g.at(0, 0) = fixtures::q(1);
      g.at(1, 1) = c;
      Matrix f(Q, 2, 2);
      Scalar w0 = c.is_zero() ? rq(rng, 2) : fixtures::q(1);
      f.at(0, 0) = w0;
      f.at(1, 0) = rq(rng, 2);   // coefficient of tD in f(D)
      f.at(1, 1) = c * w0;       // f(tD) = g(t) f(D), and t.tD = 0
      return {H, AlgebraEndo{g}, f};
    }
    default: {
      // abelian free A-module over Q[t]/(t^2) with a semilinear twist
      HomLieRinehart H;
      H.A = fixtures::dual_numbers();
      H.phi = {Matrix::identity(Q, 2)};
      H.L_dim = 2;  // free rank 1: basis (D, tD), zero bracket and anchor
      H.a_action = Tensor3(Q, 2, 2, 2);
      H.a_action.at(0, 0, 0) = fixtures::q(1);
      H.a_action.at(0, 1, 1) = fixtures::q(1);
      H.a_action.at(1, 0, 1) = fixtures::q(1);
      H.bracket_constants = Tensor3(Q, 2, 2, 2);
      H.alpha = Matrix::identity(Q, 2);
      H.anchor = {Matrix(Q, 2, 2), Matrix(Q, 2, 2)};
      Scalar c = rq(rng, 2);
      Matrix g(Q, 2, 2);
      g.at(0, 0) = fixtures::q(1);
      g.at(1, 1) = c;
      // f(D) = u0 D + u1 tD, f(tD) = g(t).f(D) = c u0 tD
      Matrix f(Q, 2, 2);
      Scalar u0 = rq(rng, 2), u1 = rq(rng, 2);
      f.at(0, 0) = u0;
      f.at(1, 0) = u1;
      f.at(1, 1) = c * u0;
      return {H, AlgebraEndo{g}, f};
    }
  }
}

// Corrupt one structure constant of a valid instance until the axiom
// checker reports at least one violation; returns the mutated instance.
inline HomLieRinehart mutate_until_invalid(const HomLieRinehart& H, std::mt19937& rng,
                                           int max_tries = 64) {
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    HomLieRinehart M = H;
    Scalar bump = fixtures::q(1 + static_cast<std::int64_t>(rng() % 3));
    switch (rng() % 4) {
      case 0: {
        std::size_t i = rng() % M.L_dim, j = rng() % M.L_dim, k = rng() % M.L_dim;
        M.bracket_constants.at(i, j, k) = M.bracket_constants.at(i, j, k) + bump;
        break;
      }
      case 1: {
        std::size_t i = rng() % M.L_dim, j = rng() % M.L_dim;
        M.alpha.at(i, j) = M.alpha.at(i, j) + bump;
        break;
      }
      case 2: {
        std::size_t i = rng() % M.A.dim, j = rng() % M.L_dim, k = rng() % M.L_dim;
        M.a_action.at(i, j, k) = M.a_action.at(i, j, k) + bump;
        break;
      }
      default: {
        std::size_t j = rng() % M.L_dim;
        std::size_t r = rng() % M.A.dim, c = rng() % M.A.dim;
        M.anchor[j].at(r, c) = M.anchor[j].at(r, c) + bump;
        break;
      }
    }
    if (!check_axioms(M).ok()) return M;
  }
  throw std::logic_error("mutate_until_invalid: no detectable mutation found");
}

}  // namespace gen
