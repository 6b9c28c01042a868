#include "doctest.h"

#include "hlr/cohomology.hpp"
#include "hlr/fixtures.hpp"
#include "hlr/uce.hpp"
#include "oracle.hpp"

using namespace hlr;
using fixtures::q;

namespace {
const FieldDescriptor& Q = fixtures::Q();

HomLieRinehart abelian(std::size_t n) {
  return from_hom_lie_algebra(Q, Tensor3(Q, n, n, n), Matrix::identity(Q, n));
}

Extension direct_sum_ext(const HomLieRinehart& H) {
  LeftModule M = trivial_module(H);
  CochainComplex cx(H, M);
  return extension_from_cocycle(H, M, Cochain{2, zero_vec(Q, cx.coeff_dim(2))});
}
}  // namespace

TEST_CASE("relation submodule ranks against the independent oracle") {
  SUBCASE("F1: antisymmetry relations only, rank 3 in ambient 4") {
    Subspace rel = relation_submodule(fixtures::F1());
    CHECK(rel.ambient_dim() == 4);
    CHECK(rel.dim() == 3);
    // independent enumeration: with zero bracket the four families reduce
    // to a (x) x (x) x and the symmetric sums
    oracle::Mat rows = {
        {oracle::Frac(1), oracle::Frac(0), oracle::Frac(0), oracle::Frac(0)},   // e1 (x) e1
        {oracle::Frac(0), oracle::Frac(0), oracle::Frac(0), oracle::Frac(1)},   // e2 (x) e2
        {oracle::Frac(0), oracle::Frac(1), oracle::Frac(1), oracle::Frac(0)}};  // sym pair
    CHECK(oracle::rank(rows) == 3);
  }
  SUBCASE("F2: rank 6 in ambient 9") {
    Subspace rel = relation_submodule(fixtures::F2());
    CHECK(rel.ambient_dim() == 9);
    CHECK(rel.dim() == 6);
    // independent enumeration over the sl2 table: symmetric tensors (rank
    // 6) plus the Jacobi generator e(x)[f,h] + f(x)[h,e] + h(x)[e,f] =
    // 2 e(x)f + 2 f(x)e + h(x)h, which is itself symmetric
    oracle::Mat rows;
    auto unit = [](int p, int q) {
      oracle::Row r(9);
      r[3 * p + q] = oracle::Frac(1);
      return r;
    };
    for (int j = 0; j < 3; ++j) rows.push_back(unit(j, j));
    for (int j = 0; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k) {
        oracle::Row r(9);
        r[3 * j + k] = oracle::Frac(1);
        r[3 * k + j] = oracle::Frac(1);
        rows.push_back(r);
      }
    oracle::Row jac(9);
    jac[3 * 0 + 1] = oracle::Frac(2);
    jac[3 * 1 + 0] = oracle::Frac(2);
    jac[3 * 2 + 2] = oracle::Frac(1);
    rows.push_back(jac);
    CHECK(oracle::rank(rows) == 6);
  }
  SUBCASE("zero bracket, zero anchor over A = k: quotient is the exterior square") {
    for (std::size_t n = 2; n <= 4; ++n) {
      HomLieRinehart Ab = abelian(n);
      Subspace rel = relation_submodule(Ab);
      CHECK(rel.dim() == n * (n + 1) / 2);  // symmetric tensors
      CHECK(quotient(n * n, rel).quotient_dim() == n * (n - 1) / 2);
    }
  }
}

TEST_CASE("build_uce on the small fixtures") {
  SUBCASE("F1: quotient dim 1, zero structure, u = 0") {
    UceAlgebra U = build_uce(fixtures::F1());
    CHECK(U.presentation.quotient_dim() == 1);
    CHECK(U.algebra.bracket_constants == Tensor3(Q, 1, 1, 1));
    CHECK(U.algebra.anchor[0].is_zero());
    CHECK(U.u.f.is_zero());
    CHECK(kernel_of_u(U).dim() == 1);
    // matches dim H^2(F1; k) = 1
    LeftModule k1 = trivial_module(fixtures::F1());
    CHECK(cohomology(fixtures::F1(), k1, 2).dim == kernel_of_u(U).dim());
  }
  SUBCASE("F2: u is an isomorphism onto sl2") {
    UceAlgebra U = build_uce(fixtures::F2());
    CHECK(U.presentation.quotient_dim() == 3);
    CHECK(kernel_of_u(U).dim() == 0);
    CHECK(rank(U.u.f) == 3);
    CHECK(inverse(U.u.f).has_value());
  }
  SUBCASE("F3: u surjective, kernel inside the center") {
    UceAlgebra U = build_uce(fixtures::F3());
    CHECK(rank(U.u.f) == 3);
    CHECK(center(U.algebra).contains_subspace(kernel_of_u(U)));
  }
  SUBCASE("F4: nontrivial A with twisted phi builds and validates") {
    UceAlgebra U = build_uce(fixtures::F4());
    CHECK(check_axioms(U.algebra).ok());
    CHECK(U.presentation.ambient_dim() == 8);
  }
}

TEST_CASE("uce preserves perfectness and alpha-perfectness") {
  for (const auto& H : {fixtures::F2(), fixtures::F3(), fixtures::sl2_semidirect_v2()}) {
    UceAlgebra U = build_uce(H);
    if (is_perfect(H)) CHECK(is_perfect(U.algebra));
    if (is_alpha_perfect(H)) CHECK(is_alpha_perfect(U.algebra));
  }
}

TEST_CASE("kernel of u sits in the center for perfect sources") {
  // sl2 x| V2 has a one-dimensional kernel: the symplectic class
  UceAlgebra U5 = build_uce(fixtures::sl2_semidirect_v2());
  CHECK(kernel_of_u(U5).dim() == 1);
  CHECK(center(U5.algebra).contains_subspace(kernel_of_u(U5)));

  // and its uce is the oscillator algebra: same dimension, zero kernel
  UceAlgebra Uosc = build_uce(fixtures::oscillator());
  CHECK(Uosc.presentation.quotient_dim() == 6);
  CHECK(kernel_of_u(Uosc).dim() == 0);

  // kernel is alpha-stable
  for (const auto& H : {fixtures::F4(), fixtures::sl2_semidirect_v2()}) {
    UceAlgebra U = build_uce(H);
    Subspace ker = kernel_of_u(U);
    for (std::size_t r = 0; r < ker.dim(); ++r)
      CHECK(ker.contains(U.algebra.alpha_apply(ker.basis().row(r))));
  }
}

TEST_CASE("functoriality of uce") {
  HomLieRinehart F3 = fixtures::F3();
  UceAlgebra U = build_uce(F3);

  SUBCASE("identity maps to the identity") {
    HLRMorphism id = identity_morphism(F3);
    HLRMorphism lifted = uce_of_morphism(U, U, id);
    CHECK(lifted.f == Matrix::identity(Q, U.presentation.quotient_dim()));
  }
  SUBCASE("alpha of F3 induces alpha-tilde") {
    HLRMorphism am{Matrix::identity(Q, 1), F3.alpha};
    HLRMorphism lifted = uce_of_morphism(U, U, am);
    CHECK(lifted.f == U.algebra.alpha);
  }
  SUBCASE("composition is preserved") {
    HLRMorphism am{Matrix::identity(Q, 1), F3.alpha};
    HLRMorphism a2{Matrix::identity(Q, 1), F3.alpha * F3.alpha};
    HLRMorphism lift_a = uce_of_morphism(U, U, am);
    HLRMorphism lift_a2 = uce_of_morphism(U, U, a2);
    CHECK(lift_a2.f == lift_a.f * lift_a.f);
  }
  SUBCASE("maps that fail naturality are rejected") {
    // doubling alpha scales u-values inconsistently: (a, 2x, 2y) maps to
    // 4 a[x,y] under u but to 2 a[x,y] through f, so the square breaks
    HLRMorphism doubled{Matrix::identity(Q, 1),
                        Scalar::from_int(Q, 2) * Matrix::identity(Q, 3)};
    CHECK_THROWS(uce_of_morphism(U, U, doubled));
  }
  SUBCASE("inclusion of the derived subalgebra of a non-perfect algebra") {
    HomLieRinehart F4LR = fixtures::F4_lie_rinehart();
    Subspace D = derived_submodule(F4LR);
    REQUIRE(D.dim() == 1);
    HomLieRinehart sub = restrict_to_subspace(F4LR, D);
    Matrix inc(Q, 2, 1);
    for (std::size_t i = 0; i < 2; ++i) inc.at(i, 0) = D.basis().at(0, i);
    HLRMorphism inc_m{Matrix::identity(Q, 2), inc};
    REQUIRE(check_morphism(sub, F4LR, inc_m).ok());
    UceAlgebra Usub = build_uce(sub);
    UceAlgebra UF4 = build_uce(F4LR);
    // naturality u2 uce(f) = f u1 is verified inside the call
    CHECK_NOTHROW(uce_of_morphism(Usub, UF4, inc_m));
  }
}

TEST_CASE("universality witness for perfect sources") {
  HomLieRinehart F2 = fixtures::F2();
  UceAlgebra U = build_uce(F2);

  SUBCASE("identity extension: tau = u") {
    Extension E = identity_extension(F2);
    HLRMorphism tau = universality_witness(U, E);
    CHECK(tau.f == U.u.f);
  }
  SUBCASE("direct sum: tau = inclusion of u") {
    Extension E = direct_sum_ext(F2);
    HLRMorphism tau = universality_witness(U, E);
    CHECK(E.sigma.f * tau.f == U.u.f);
    // the kernel coordinate of tau is zero: tau = inclusion after u
    for (std::size_t c = 0; c < tau.f.cols(); ++c) CHECK(tau.f.at(3, c).is_zero());
  }
  SUBCASE("different sections give the same tau") {
    Extension E = direct_sum_ext(F2);
    Matrix s1(Q, 4, 3);
    for (std::size_t i = 0; i < 3; ++i) s1.at(i, i) = q(1);
    Matrix s2 = s1;
    s2.at(3, 0) = q(5);  // shift the section by a kernel-valued map
    s2.at(3, 2) = q(-7);
    HLRMorphism t1 = universality_witness(U, E, &s1);
    HLRMorphism t2 = universality_witness(U, E, &s2);
    CHECK(t1.f == t2.f);
  }
  SUBCASE("kernel-valued perturbations of tau are not morphisms") {
    Extension E = direct_sum_ext(F2);
    HLRMorphism tau = universality_witness(U, E);
    for (std::size_t c = 0; c < tau.f.cols(); ++c) {
      Matrix perturbed = tau.f;
      perturbed.at(3, c) = perturbed.at(3, c) + q(1);
      CHECK(E.sigma.f * perturbed == U.u.f);  // still lifts u through sigma
      CHECK(!check_morphism(U.algebra, E.mid, {Matrix::identity(Q, 1), perturbed}).ok());
    }
  }
  SUBCASE("refuses non-perfect sources") {
    UceAlgebra U1 = build_uce(fixtures::F1());
    Extension E1 = direct_sum_ext(fixtures::F1());
    CHECK_THROWS(universality_witness(U1, E1));
  }
}

TEST_CASE("alpha-universality witness") {
  HomLieRinehart F3 = fixtures::F3();
  UceAlgebra U = build_uce(F3);

  SUBCASE("identity extension: tau = u") {
    Extension E = identity_extension(F3);
    HLRMorphism tau = alpha_universality_witness(U, E);
    CHECK(tau.f == U.u.f);
  }
  SUBCASE("direct sum: sigma tau = u") {
    Extension E = direct_sum_ext(F3);
    HLRMorphism tau = alpha_universality_witness(U, E);
    CHECK(E.sigma.f * tau.f == U.u.f);
  }
  SUBCASE("agrees with the plain witness where both apply") {
    Extension E = direct_sum_ext(F3);
    Matrix s(Q, 4, 3);
    for (std::size_t i = 0; i < 3; ++i) s.at(i, i) = q(1);
    HLRMorphism t1 = universality_witness(U, E, &s);
    HLRMorphism t2 = alpha_universality_witness(U, E, &s);
    CHECK(t1.f == t2.f);
  }
  SUBCASE("refuses non-alpha-perfect sources") {
    UceAlgebra U1 = build_uce(fixtures::F1());
    Extension E1 = direct_sum_ext(fixtures::F1());
    CHECK_THROWS(alpha_universality_witness(U1, E1));
  }
}

TEST_CASE("the uce extension is central over a perfect source") {
  for (const auto& H : {fixtures::F2(), fixtures::F3(), fixtures::sl2_semidirect_v2()}) {
    UceAlgebra U = build_uce(H);
    // assemble the short exact sequence Ker(u) -> uce -> {L,L} = L
    Subspace ker = kernel_of_u(U);
    HomLieRinehart ker_alg = restrict_to_subspace(U.algebra, ker);
    Matrix inc(Q, U.presentation.quotient_dim(), ker.dim());
    for (std::size_t r = 0; r < ker.dim(); ++r)
      for (std::size_t c = 0; c < U.presentation.quotient_dim(); ++c)
        inc.at(c, r) = ker.basis().at(r, c);
    Extension E{ker_alg, U.algebra, H, {Matrix::identity(Q, H.A.dim), inc}, U.u};
    CHECK(check_extension(E).ok());
    CHECK(is_central(E));
    // the uce extension splits as a morphism exactly when Ker(u) = 0
    if (ker.dim() == 0) {
      auto s = find_central_splitting(E);
      CHECK(s.has_value());
    }
  }
}
