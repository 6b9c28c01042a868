#include "doctest.h"

#include <random>

#include "hlr/cohomology.hpp"
#include "hlr/fixtures.hpp"

using namespace hlr;
using fixtures::q;

namespace {
const FieldDescriptor& Q = fixtures::Q();

Extension direct_sum_ext(const HomLieRinehart& H, const LeftModule& M) {
  CochainComplex cx(H, M);
  Cochain zero{2, zero_vec(H.field(), cx.coeff_dim(2))};
  return extension_from_cocycle(H, M, zero);
}

Extension heisenberg_of_F1() {
  HomLieRinehart F1 = fixtures::F1();
  LeftModule k1 = trivial_module(F1);
  auto h2 = cohomology(F1, k1, 2);
  return extension_from_cocycle(F1, k1, Cochain{2, h2.representatives[0]});
}

// scaled generator c * gen of Z^2(F1; k)
Extension scaled_heisenberg(std::int64_t c) {
  HomLieRinehart F1 = fixtures::F1();
  LeftModule k1 = trivial_module(F1);
  auto h2 = cohomology(F1, k1, 2);
  Vec v = h2.representatives[0];
  for (auto& x : v) x = q(c) * x;
  return extension_from_cocycle(F1, k1, Cochain{2, v});
}
}  // namespace

TEST_CASE("check_extension") {
  HomLieRinehart F2 = fixtures::F2();
  LeftModule k2 = trivial_module(F2);
  Extension E = direct_sum_ext(F2, k2);
  CHECK(check_extension(E).ok());

  SUBCASE("corrupted sigma loses surjectivity") {
    Extension bad = E;
    for (std::size_t j = 0; j < bad.sigma.f.cols(); ++j) bad.sigma.f.at(0, j) = q(0);
    auto rep = check_extension(bad);
    REQUIRE(!rep.ok());
    bool surj = false;
    for (const auto& v : rep.violations)
      if (v.condition == "sigma_surjective") surj = true;
    CHECK(surj);
  }
  SUBCASE("identity extension validates") {
    CHECK(check_extension(identity_extension(F2)).ok());
  }
}

TEST_CASE("centrality predicates") {
  SUBCASE("Heisenberg extension of F1 is central") {
    Extension E = heisenberg_of_F1();
    CHECK(is_central(E));
    CHECK(is_alpha_central(E));
  }
  SUBCASE("zero kernel is central trivially") {
    Extension E = identity_extension(fixtures::F3());
    CHECK(is_central(E));
    CHECK(is_alpha_central(E));
  }
  SUBCASE("central implies alpha-central on the corpus") {
    HomLieRinehart F3 = fixtures::F3();
    LeftModule k3 = trivial_module(F3);
    for (const Extension& E :
         {heisenberg_of_F1(), direct_sum_ext(fixtures::F2(), trivial_module(fixtures::F2())),
          direct_sum_ext(F3, k3), identity_extension(fixtures::F2())}) {
      if (is_central(E)) CHECK(is_alpha_central(E));
    }
  }
}

TEST_CASE("A-split sections") {
  SUBCASE("split direct sum: solver finds a section") {
    HomLieRinehart F2 = fixtures::F2();
    Extension E = direct_sum_ext(F2, trivial_module(F2));
    auto tau = find_A_split_section(E);
    REQUIRE(tau.has_value());
    CHECK(E.sigma.f * *tau == Matrix::identity(Q, 3));
    CHECK(*tau * E.base.alpha == E.mid.alpha * *tau);
  }
  SUBCASE("identity extension: tau = id") {
    Extension E = identity_extension(fixtures::F2());
    auto tau = find_A_split_section(E);
    REQUIRE(tau.has_value());
    CHECK(*tau == Matrix::identity(Q, 3));
  }
  SUBCASE("Heisenberg fixture admits an A-alpha-section") {
    Extension E = heisenberg_of_F1();
    auto tau = find_A_split_section(E);
    REQUIRE(tau.has_value());
    CHECK(E.sigma.f * *tau == Matrix::identity(Q, 2));
  }
}

TEST_CASE("central splittings") {
  SUBCASE("split direct sum splits as a morphism") {
    HomLieRinehart F2 = fixtures::F2();
    Extension E = direct_sum_ext(F2, trivial_module(F2));
    auto s = find_central_splitting(E);
    REQUIRE(s.has_value());
    CHECK(check_morphism(E.base, E.mid, s->section).ok());
    CHECK(E.sigma.f * s->section.f == Matrix::identity(Q, 3));
  }
  SUBCASE("Heisenberg extension has no morphism splitting") {
    Extension E = heisenberg_of_F1();
    CHECK(!find_central_splitting(E).has_value());
  }
  SUBCASE("kernel-zero extension splits by inversion") {
    Extension E = identity_extension(fixtures::F2());
    auto s = find_central_splitting(E);
    REQUIRE(s.has_value());
    CHECK(s->section.f == Matrix::identity(Q, 3));
    CHECK(s->unique);
  }
  SUBCASE("refuses non-central input") {
    // abelian but non-central: canonical module coefficients over F4LR
    HomLieRinehart F4LR = fixtures::F4_lie_rinehart();
    LeftModule M = canonical_left_module(F4LR);
    Extension E = direct_sum_ext(F4LR, M);
    REQUIRE(!is_central(E));
    CHECK_THROWS(find_central_splitting(E));
  }
}

TEST_CASE("uniqueness of morphisms into central extensions over perfect sources") {
  // two morphisms agreeing after sigma are equal when the source is
  // perfect; exercised via splitting translates
  HomLieRinehart F2 = fixtures::F2();
  Extension E = direct_sum_ext(F2, trivial_module(F2));
  auto s = find_central_splitting(E);
  REQUIRE(s.has_value());
  CHECK(s->unique);

  // a central translate tau + i mu is a morphism only if it still splits
  // the brackets; for perfect base the solver's homogeneous system pinned
  // this down to zero, so any second section equals the first
  auto s2 = find_central_splitting(E);
  CHECK(s2->section.f == s->section.f);
}

TEST_CASE("composition of central extensions") {
  HomLieRinehart F2 = fixtures::F2();
  LeftModule k2 = trivial_module(F2);

  SUBCASE("composing with the identity extension returns E2") {
    Extension E2 = direct_sum_ext(F2, k2);
    Extension E1 = identity_extension(E2.mid);
    Extension comp = compose_central(E2, E1);
    CHECK(comp.base.L_dim == E2.base.L_dim);
    CHECK(comp.ker.L_dim == E2.ker.L_dim);
    CHECK(is_alpha_central(comp));
  }
  SUBCASE("stacked extensions over the perfect middle F2") {
    Extension E2 = identity_extension(F2);
    Extension E1 = direct_sum_ext(F2, k2);
    Extension comp = compose_central(E2, E1);
    CHECK(check_extension(comp).ok());
    CHECK(is_alpha_central(comp));
    CHECK(comp.ker.L_dim == 1);
  }
  SUBCASE("both kernels zero: composite central trivially") {
    Extension comp = compose_central(identity_extension(F2), identity_extension(F2));
    CHECK(is_central(comp));
  }
  SUBCASE("mismatched middles are rejected") {
    CHECK_THROWS(compose_central(identity_extension(F2), identity_extension(fixtures::F1())));
  }
  SUBCASE("randomized coboundary stacks over perfect middles are alpha-central") {
    // property form of the composition law over perfect middles; composite
    // centrality itself is not promised, only alpha-centrality
    CochainComplex cx(F2, k2);
    std::mt19937 rng(1717);
    for (int trial = 0; trial < 5; ++trial) {
      Cochain g{1, zero_vec(Q, cx.coeff_dim(1))};
      g.coefficients[2] = q(static_cast<std::int64_t>(rng() % 5) - 2);
      Extension inner = extension_from_cocycle(F2, k2, cx.differential(g));
      Extension comp = compose_central(identity_extension(F2), inner);
      CHECK(is_alpha_central(comp));
    }
  }
}

TEST_CASE("equivalence of extensions") {
  HomLieRinehart F1 = fixtures::F1();
  HomLieRinehart F2 = fixtures::F2();
  LeftModule k1 = trivial_module(F1);
  LeftModule k2 = trivial_module(F2);

  SUBCASE("reflexive") {
    Extension E = heisenberg_of_F1();
    CHECK(are_equivalent(E, E));
  }
  SUBCASE("cohomologous cocycles give equivalent extensions") {
    CochainComplex cx(F2, k2);
    Extension E0 = direct_sum_ext(F2, k2);
    Cochain g{1, zero_vec(Q, cx.coeff_dim(1))};
    g.coefficients[2] = q(1);  // h-dual
    Cochain dg = cx.differential(g);
    Extension E1 = extension_from_cocycle(F2, k2, dg);
    CHECK(are_equivalent(E0, E1));
    CHECK(are_equivalent(E1, E0));
  }
  SUBCASE("non-cohomologous cocycles are inequivalent") {
    Extension E0 = direct_sum_ext(F1, k1);
    Extension Eh = heisenberg_of_F1();
    CHECK(!are_equivalent(E0, Eh));
    // distinct H^2 classes: c gen vs gen for c != 1
    CHECK(!are_equivalent(scaled_heisenberg(2), scaled_heisenberg(1)));
    CHECK(are_equivalent(scaled_heisenberg(1), heisenberg_of_F1()));
  }
  SUBCASE("symmetric and transitive on a fixture chain") {
    CochainComplex cx(F2, k2);
    Extension E0 = direct_sum_ext(F2, k2);
    Cochain g{1, zero_vec(Q, cx.coeff_dim(1))};
    g.coefficients[2] = q(2);
    Extension E1 = extension_from_cocycle(F2, k2, cx.differential(g));
    Cochain g2{1, zero_vec(Q, cx.coeff_dim(1))};
    g2.coefficients[2] = q(-1);
    Extension E2 = extension_from_cocycle(F2, k2, cx.differential(g2));
    CHECK(are_equivalent(E0, E1));
    CHECK(are_equivalent(E1, E2));
    CHECK(are_equivalent(E0, E2));
  }
  SUBCASE("mismatched ends are rejected") {
    CHECK_THROWS(are_equivalent(heisenberg_of_F1(), direct_sum_ext(F2, k2)));
  }
}
