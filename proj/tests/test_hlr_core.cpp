#include "doctest.h"

#include <random>

#include "generators.hpp"
#include "hlr/fixtures.hpp"
#include "oracle.hpp"

using namespace hlr;
using fixtures::q;

namespace {
const FieldDescriptor& Q = fixtures::Q();
}

TEST_CASE("fixtures pass the axiom checker") {
  CHECK(check_axioms(fixtures::F1()).ok());
  CHECK(check_axioms(fixtures::F2()).ok());
  CHECK(check_axioms(fixtures::F3()).ok());
  CHECK(check_axioms(fixtures::F4_lie_rinehart()).ok());
  CHECK(check_axioms(fixtures::F4()).ok());
  CHECK(check_axioms(fixtures::sl2_semidirect_v2()).ok());
  CHECK(check_axioms(fixtures::oscillator()).ok());
  CHECK(check_axioms(fixtures::doubled_base()).ok());
  CHECK(check_axioms(fixtures::doubled_mid()).ok());
}

TEST_CASE("independent brute-force Jacobi enumeration agrees on F2") {
  // recompute hom-Jacobi for sl2 from the raw table with oracle fractions
  HomLieRinehart F2 = fixtures::F2();
  auto coeff = [&](std::size_t i, std::size_t j, std::size_t k) {
    const Scalar& c = F2.bracket_constants.at(i, j, k);
    if (c.is_zero()) return oracle::Frac(0);
    if (c == q(1)) return oracle::Frac(1);
    if (c == q(-1)) return oracle::Frac(-1);
    if (c == q(2)) return oracle::Frac(2);
    return oracle::Frac(-2);
  };
  auto br = [&](const std::vector<oracle::Frac>& x, const std::vector<oracle::Frac>& y) {
    std::vector<oracle::Frac> out(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) out[k] = out[k] + x[i] * y[j] * coeff(i, j, k);
    return out;
  };
  std::vector<std::vector<oracle::Frac>> basis(3, std::vector<oracle::Frac>(3));
  for (int i = 0; i < 3; ++i) basis[i][i] = oracle::Frac(1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        auto j1 = br(basis[i], br(basis[j], basis[k]));
        auto j2 = br(basis[j], br(basis[k], basis[i]));
        auto j3 = br(basis[k], br(basis[i], basis[j]));
        for (int c = 0; c < 3; ++c) CHECK((j1[c] + j2[c] + j3[c]).is_zero());
      }
}

TEST_CASE("corrupted bracket is reported with a hom-Jacobi witness") {
  HomLieRinehart bad = fixtures::F2();
  bad.bracket_constants.at(0, 1, 2) = q(2);  // one-sided: [e,f] = 2h, [f,e] = -h
  auto rep = check_axioms(bad);
  REQUIRE(!rep.ok());
  bool jacobi = false, antisym = false;
  for (const auto& v : rep.violations) {
    if (v.condition == "hom_jacobi") jacobi = true;
    if (v.condition == "bracket_antisymmetry") antisym = true;
  }
  CHECK(jacobi);
  CHECK(antisym);
}

TEST_CASE("from_hom_lie_algebra embeds hom-Lie algebras") {
  HomLieRinehart F1 = fixtures::F1();
  CHECK(F1.A.dim == 1);
  CHECK(F1.L_dim == 2);
  CHECK(F1.anchor[0].is_zero());

  // direct construction of F3's table agrees with the twist constructor
  HomLieRinehart F3 = fixtures::F3();
  Matrix a = fixtures::sl2_scaling_automorphism();
  Tensor3 twisted(Q, 3, 3, 3);
  HomLieRinehart F2 = fixtures::F2();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Vec v = a.apply(F2.bracket(F2.L_basis(i), F2.L_basis(j)));
      for (std::size_t k = 0; k < 3; ++k) twisted.at(i, j, k) = v[k];
    }
  HomLieRinehart direct = from_hom_lie_algebra(Q, twisted, a);
  CHECK(direct.bracket_constants == F3.bracket_constants);
  CHECK(direct.alpha == F3.alpha);

  // not a hom-Lie algebra: alpha incompatible with the bracket
  Matrix bad_alpha(Q, 3, 3);
  bad_alpha.at(0, 0) = q(2);
  bad_alpha.at(1, 1) = q(1);
  bad_alpha.at(2, 2) = q(1);
  CHECK_THROWS(from_hom_lie_algebra(Q, fixtures::sl2_bracket(), bad_alpha));
}

TEST_CASE("twist_by_endomorphism") {
  HomLieRinehart F2 = fixtures::F2();
  SUBCASE("identity twist leaves the algebra unchanged") {
    HomLieRinehart T = twist_by_endomorphism(F2, AlgebraEndo{Matrix::identity(Q, 1)},
                                             Matrix::identity(Q, 3));
    CHECK(T.bracket_constants == F2.bracket_constants);
    CHECK(T.alpha == F2.alpha);
  }
  SUBCASE("sl2 twisted by the scaling automorphism gives F3") {
    HomLieRinehart T =
        twist_by_endomorphism(F2, AlgebraEndo{Matrix::identity(Q, 1)},
                              fixtures::sl2_scaling_automorphism());
    HomLieRinehart F3 = fixtures::F3();
    CHECK(T.bracket_constants == F3.bracket_constants);
  }
  SUBCASE("F4 twist is valid and has nontrivial phi") {
    HomLieRinehart F4 = fixtures::F4();
    CHECK(check_axioms(F4).ok());
    CHECK(F4.phi.matrix != Matrix::identity(Q, 2));
  }
  SUBCASE("non-endomorphism input is rejected") {
    Matrix not_endo = Matrix::identity(Q, 3);
    not_endo.at(0, 0) = q(2);  // scales e only: not a bracket map
    CHECK_THROWS(twist_by_endomorphism(F2, AlgebraEndo{Matrix::identity(Q, 1)}, not_endo));
  }
}

TEST_CASE("fiber products") {
  SUBCASE("zero anchors: product is the full direct sum") {
    auto fp = fiber_product(fixtures::F1(), fixtures::F1());
    CHECK(fp.product.L_dim == 4);
    CHECK(check_axioms(fp.product).ok());
    CHECK(check_morphism(fp.product, fixtures::F1(), fp.proj1).ok());
    CHECK(check_morphism(fp.product, fixtures::F1(), fp.proj2).ok());
  }
  SUBCASE("Witt-type algebra: anchor constraint cuts the diagonal") {
    HomLieRinehart F4LR = fixtures::F4_lie_rinehart();
    auto fp = fiber_product(F4LR, F4LR);
    CHECK(fp.product.L_dim == 3);  // rho(tD) = 0, so only the D-coefficients must agree
    CHECK(check_axioms(fp.product).ok());
    CHECK(check_morphism(fp.product, F4LR, fp.proj1).ok());
    CHECK(check_morphism(fp.product, F4LR, fp.proj2).ok());
  }
  SUBCASE("product with the zero algebra recovers the factor") {
    HomLieRinehart F2 = fixtures::F2();
    HomLieRinehart zero = from_hom_lie_algebra(Q, Tensor3(Q, 0, 0, 0), Matrix(Q, 0, 0));
    auto fp = fiber_product(F2, zero);
    CHECK(fp.product.L_dim == 3);
    CHECK(fp.product.bracket_constants == F2.bracket_constants);
  }
  SUBCASE("universal property against a test cone") {
    // cone from F2 with the diagonal maps into F2 x F2
    HomLieRinehart F2 = fixtures::F2();
    auto fp = fiber_product(F2, F2);
    Matrix diag(Q, 6, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      diag.at(i, i) = q(1);
      diag.at(3 + i, i) = q(1);
    }
    // mediating map: coordinates of the diagonal in the carrier basis
    Matrix med(Q, fp.product.L_dim, 3);
    for (std::size_t j = 0; j < 3; ++j) {
      Vec c = fp.carrier.coordinates(diag.col(j));
      for (std::size_t i = 0; i < c.size(); ++i) med.at(i, j) = c[i];
    }
    HLRMorphism m{Matrix::identity(Q, 1), med};
    CHECK(check_morphism(F2, fp.product, m).ok());
    CHECK(fp.proj1.f * med == Matrix::identity(Q, 3));
    CHECK(fp.proj2.f * med == Matrix::identity(Q, 3));
    // uniqueness: the pairing (proj1, proj2) of the carrier is injective
    Matrix paired(Q, 6, fp.product.L_dim);
    for (std::size_t r = 0; r < fp.product.L_dim; ++r)
      for (std::size_t i = 0; i < 6; ++i) paired.at(i, r) = fp.carrier.basis().at(r, i);
    CHECK(kernel(paired).dim() == 0);
  }
}

TEST_CASE("centers") {
  CHECK(center(fixtures::F1()).dim() == 2);
  CHECK(center(fixtures::F2()).dim() == 0);
  CHECK(center(fixtures::F4_lie_rinehart()).dim() == 0);
  CHECK(center(fixtures::F4()).dim() == 2);  // trivial bracket and anchor after the twist
  CHECK(center(fixtures::oscillator()).dim() == 1);

  SUBCASE("independent enumeration of the sl2 center conditions") {
    // [x, z] = 0 for all basis z, assembled independently from the table
    HomLieRinehart F2 = fixtures::F2();
    auto coeff = [&](std::size_t i, std::size_t j, std::size_t k) {
      const Scalar& c = F2.bracket_constants.at(i, j, k);
      if (c.is_zero()) return oracle::Frac(0);
      if (c == q(1)) return oracle::Frac(1);
      if (c == q(-1)) return oracle::Frac(-1);
      if (c == q(2)) return oracle::Frac(2);
      return oracle::Frac(-2);
    };
    oracle::Mat rows;
    for (std::size_t z = 0; z < 3; ++z)
      for (std::size_t out = 0; out < 3; ++out) {
        oracle::Row row(3);
        for (std::size_t j = 0; j < 3; ++j) row[j] = coeff(j, z, out);
        rows.push_back(row);
      }
    CHECK(oracle::rank(rows) == 3);  // full rank -> center dim 0
  }

  SUBCASE("center is always an ideal") {
    for (const auto& H : {fixtures::F1(), fixtures::F2(), fixtures::F3(), fixtures::F4(),
                          fixtures::F4_lie_rinehart(), fixtures::oscillator()})
      CHECK(is_ideal(H, center(H)));
  }
}

TEST_CASE("derived submodules and perfectness") {
  CHECK(derived_submodule(fixtures::F1()).dim() == 0);
  CHECK(derived_submodule(fixtures::F2()).dim() == 3);
  CHECK(derived_submodule(fixtures::F3()).dim() == 3);

  CHECK(!is_perfect(fixtures::F1()));
  CHECK(!is_alpha_perfect(fixtures::F1()));
  CHECK(is_perfect(fixtures::F2()));
  CHECK(is_alpha_perfect(fixtures::F2()));
  CHECK(is_perfect(fixtures::F3()));
  CHECK(is_alpha_perfect(fixtures::F3()));
  CHECK(is_perfect(fixtures::doubled_base()));
  CHECK(is_perfect(fixtures::doubled_mid()));

  SUBCASE("independent span-rank oracle for F3") {
    // brackets of F3: [e,f]=h, [h,e]=4e, [h,f]=-f span everything
    oracle::Mat rows = {{oracle::Frac(0), oracle::Frac(0), oracle::Frac(1)},
                        {oracle::Frac(4), oracle::Frac(0), oracle::Frac(0)},
                        {oracle::Frac(0), oracle::Frac(-1), oracle::Frac(0)}};
    CHECK(oracle::rank(rows) == 3);
  }

  SUBCASE("derived submodule is A-stable and alpha-stable") {
    for (const auto& H : {fixtures::F2(), fixtures::F3(), fixtures::F4(),
                          fixtures::F4_lie_rinehart(), fixtures::doubled_mid()}) {
      Subspace D = derived_submodule(H);
      for (std::size_t r = 0; r < D.dim(); ++r) {
        CHECK(D.contains(H.alpha_apply(D.basis().row(r))));
        for (std::size_t a = 0; a < H.A.dim; ++a)
          CHECK(D.contains(H.a_mul(H.A.basis(a), D.basis().row(r))));
      }
    }
  }

  SUBCASE("alpha-perfect implies perfect on the corpus") {
    for (const auto& H : {fixtures::F1(), fixtures::F2(), fixtures::F3(), fixtures::F4(),
                          fixtures::F4_lie_rinehart(), fixtures::doubled_base()})
      if (is_alpha_perfect(H)) CHECK(is_perfect(H));
  }
}

TEST_CASE("morphism checking") {
  HomLieRinehart F2 = fixtures::F2();
  HomLieRinehart F3 = fixtures::F3();

  CHECK(check_morphism(F2, F2, identity_morphism(F2)).ok());

  HLRMorphism zero{Matrix::identity(Q, 1), Matrix(Q, 3, 3)};
  CHECK(check_morphism(F2, F2, zero).ok());

  HLRMorphism alpha_m{Matrix::identity(Q, 1), F3.alpha};
  CHECK(check_morphism(F3, F3, alpha_m).ok());

  // doubling alpha breaks the bracket condition on sl2
  CHECK(!check_morphism(F2, F2, HLRMorphism{Matrix::identity(Q, 1), F2.alpha + F2.alpha}).ok());
}

TEST_CASE("subalgebras, quasi-ideals, ideals") {
  HomLieRinehart F1 = fixtures::F1();
  HomLieRinehart F2 = fixtures::F2();

  CHECK(is_ideal(F1, Subspace::zero(Q, 2)));
  CHECK(is_ideal(F1, Subspace::full(Q, 2)));

  Subspace e_line = Subspace::span(Q, {F2.L_basis(0)}, 3);
  CHECK(is_subalgebra(F2, e_line));
  CHECK(!is_quasi_ideal(F2, e_line));  // [f, e] = -h leaves the line
  CHECK(!is_ideal(F2, e_line));
}

TEST_CASE("randomized composition twists pass; mutations are caught") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 20; ++i) {
    auto tc = gen::random_twist_case(rng);
    REQUIRE(check_axioms(tc.seed).ok());
    HomLieRinehart twisted = twist_by_endomorphism(tc.seed, tc.g, tc.f);
    CHECK(check_axioms(twisted).ok());
  }
  for (int i = 0; i < 20; ++i) {
    auto tc = gen::random_twist_case(rng);
    HomLieRinehart bad = gen::mutate_until_invalid(tc.seed, rng);
    auto rep = check_axioms(bad);
    REQUIRE(!rep.ok());
    CHECK(!rep.violations.front().condition.empty());
    CHECK(!rep.violations.front().to_string().empty());
  }
}
