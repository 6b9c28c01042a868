#include "doctest.h"

#include <random>

#include "hlr/comm_algebra.hpp"
#include "hlr/matrix.hpp"
#include "hlr/scalar.hpp"
#include "hlr/subspace.hpp"
#include "oracle.hpp"

using namespace hlr;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();

Scalar q(std::int64_t n, std::int64_t d = 1) { return Scalar::rational(BigInt(n), BigInt(d)); }

Matrix mat_q(std::vector<std::vector<std::int64_t>> rows) {
  Matrix m(Q, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = q(rows[i][j]);
  return m;
}

// k[t]/(t^2): basis (1, t)
CommAlgebra dual_numbers() {
  CommAlgebra A;
  A.field = Q;
  A.dim = 2;
  A.structure_constants = Tensor3(Q, 2, 2, 2);
  A.structure_constants.at(0, 0, 0) = q(1);
  A.structure_constants.at(0, 1, 1) = q(1);
  A.structure_constants.at(1, 0, 1) = q(1);
  A.unit = {q(1), q(0)};
  return A;
}

}  // namespace

TEST_CASE("bigint and rational arithmetic is exact") {
  BigInt a = BigInt::from_string("123456789012345678901234567890");
  BigInt b = BigInt::from_string("987654321098765432109876543210");
  CHECK((a * b) / b == a);
  CHECK((a * b) % b == BigInt(0));
  CHECK((a + b - b) == a);
  CHECK(BigInt::gcd(BigInt(48), BigInt(180)) == BigInt(12));
  CHECK((-a).to_string() == "-123456789012345678901234567890");

  Scalar x = Scalar::parse(Q, "2/4");
  CHECK(x.to_string() == "1/2");
  CHECK((x * x.inverse()).is_one());
  Scalar big = Scalar::rational(a, b);
  CHECK((big * big.inverse()).is_one());
}

TEST_CASE("prime field satisfies the Fermat identity") {
  for (std::int64_t p : {2, 3, 5, 7, 13}) {
    FieldDescriptor F = FieldDescriptor::prime(p);
    for (std::int64_t r = 0; r < p; ++r) {
      Scalar x = Scalar::from_int(F, r);
      Scalar pow = Scalar::one(F);
      for (std::int64_t i = 0; i < p; ++i) pow = pow * x;
      CHECK(pow == x);
    }
  }
  CHECK_THROWS(FieldDescriptor::prime(6));
}

TEST_CASE("rref canonical examples") {
  Matrix id2 = Matrix::identity(Q, 2);
  CHECK(rref(id2) == id2);

  Matrix m = mat_q({{2, 4}, {1, 2}});
  Matrix expected = mat_q({{1, 2}, {0, 0}});
  CHECK(rref(m) == expected);
}

TEST_CASE("rref is idempotent and canonical on row-space") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m(Q, 4, 6);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 6; ++j) m.at(i, j) = q(static_cast<int>(rng() % 7) - 3);
    Matrix r = rref(m);
    CHECK(rref(r) == r);
    // same row space after random row operations -> identical rref
    Matrix shuffled = m;
    for (std::size_t i = 0; i < 4; ++i) {
      std::size_t other = rng() % 4;
      if (other == i) continue;
      Scalar c = q(1 + static_cast<int>(rng() % 3));
      for (std::size_t j = 0; j < 6; ++j)
        shuffled.at(i, j) = shuffled.at(i, j) + c * shuffled.at(other, j);
    }
    CHECK(rref(shuffled) == r);
  }
}

TEST_CASE("rref rank agrees with the independent elimination oracle over F_5") {
  FieldDescriptor F5 = FieldDescriptor::prime(5);
  std::mt19937 rng(777);
  for (int trial = 0; trial < 25; ++trial) {
    Matrix m(F5, 4, 6);
    std::vector<std::vector<std::int64_t>> raw(4, std::vector<std::int64_t>(6));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        raw[i][j] = rng() % 5;
        m.at(i, j) = Scalar::from_int(F5, raw[i][j]);
      }
    CHECK(rank(m) == oracle::rank_mod_p(raw, 5));
  }
}

TEST_CASE("span canonicalizes") {
  CHECK(Subspace::span(Q, {}, 3).dim() == 0);
  Subspace full = Subspace::span(Q, {{q(1), q(0)}, {q(0), q(1)}}, 2);
  CHECK(full.dim() == 2);
  Subspace line = Subspace::span(Q, {{q(1), q(1), q(0)}, {q(2), q(2), q(0)}}, 3);
  CHECK(line.dim() == 1);
  CHECK(line.basis().row(0) == Vec{q(1), q(1), q(0)});
  // canonical: different spanning sets, equal subspaces
  Subspace line2 = Subspace::span(Q, {{q(3), q(3), q(0)}}, 3);
  CHECK(line == line2);
  CHECK_THROWS(Subspace::span(Q, {{q(1)}}, 3));
}

TEST_CASE("kernel extremes and rank-nullity on random matrices") {
  Matrix zero23(Q, 2, 3);
  CHECK(kernel(zero23).dim() == 3);
  CHECK(kernel(Matrix::identity(Q, 4)).dim() == 0);

  std::mt19937 rng(4242);
  for (int trial = 0; trial < 15; ++trial) {
    Matrix m(Q, 5, 5);
    oracle::Mat raw(5, oracle::Row(5));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        std::int64_t v = static_cast<std::int64_t>(rng() % 5) - 2;
        raw[i][j] = oracle::Frac(v);
        m.at(i, j) = q(v);
      }
    std::size_t rk = oracle::rank(raw);
    CHECK(kernel(m).dim() == 5 - rk);
    CHECK(rank(m) == rk);
    // kernel members really are killed
    Subspace ker = kernel(m);
    for (std::size_t i = 0; i < ker.dim(); ++i)
      CHECK(is_zero_vec(m.apply(ker.basis().row(i))));
  }
}

TEST_CASE("solve: exact residuals and inconsistency detection") {
  Matrix id3 = Matrix::identity(Q, 3);
  Vec b = {q(1), q(-2, 3), q(5)};
  CHECK(*solve(id3, b) == b);

  Matrix zero22(Q, 2, 2);
  CHECK(!solve(zero22, {q(1), q(0)}).has_value());

  FieldDescriptor F7 = FieldDescriptor::prime(7);
  std::mt19937 rng(99);
  for (int trial = 0; trial < 15; ++trial) {
    Matrix m(F7, 4, 5);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) m.at(i, j) = Scalar::from_int(F7, rng() % 7);
    Vec x0(5, Scalar::zero(F7));
    for (auto& c : x0) c = Scalar::from_int(F7, rng() % 7);
    Vec b7 = m.apply(x0);  // consistent by construction
    auto x = solve(m, b7);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b7);
  }
}

TEST_CASE("subspace sum and intersection satisfy the dimension formula") {
  std::mt19937 rng(271828);
  for (int trial = 0; trial < 15; ++trial) {
    auto random_subspace = [&](std::size_t gens) {
      std::vector<Vec> rows;
      for (std::size_t g = 0; g < gens; ++g) {
        Vec v;
        for (int i = 0; i < 5; ++i) v.push_back(q(static_cast<int>(rng() % 5) - 2));
        rows.push_back(v);
      }
      return Subspace::span(Q, rows, 5);
    };
    Subspace U = random_subspace(2 + rng() % 3);
    Subspace V = random_subspace(2 + rng() % 3);
    Subspace S = U + V;
    Subspace I = intersect(U, V);
    CHECK(S.dim() + I.dim() == U.dim() + V.dim());
    CHECK(U.contains_subspace(I));
    CHECK(V.contains_subspace(I));
    CHECK(S.contains_subspace(U));
    CHECK(S.contains_subspace(V));
  }
}

TEST_CASE("quotient presentation invariants") {
  SUBCASE("zero relations: quotient is the ambient space") {
    auto qp = quotient(3, Subspace::zero(Q, 3));
    CHECK(qp.quotient_dim() == 3);
    CHECK(qp.project_matrix() == Matrix::identity(Q, 3));
  }
  SUBCASE("full relations: quotient dim 0") {
    auto qp = quotient(2, Subspace::full(Q, 2));
    CHECK(qp.quotient_dim() == 0);
  }
  SUBCASE("project/lift laws") {
    Subspace rel = Subspace::span(Q, {{q(1), q(2), q(0), q(1)}, {q(0), q(0), q(1), q(3)}}, 4);
    auto qp = quotient(4, rel);
    CHECK(qp.quotient_dim() == 2);
    CHECK(qp.project_matrix() * qp.lift_matrix() == Matrix::identity(Q, 2));
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      Vec v;
      for (int i = 0; i < 4; ++i) v.push_back(q(static_cast<int>(rng() % 9) - 4));
      Vec diff = sub(qp.lift(qp.project(v)), v);
      CHECK(rel.contains(diff));
      CHECK(is_zero_vec(qp.project(v)) == rel.contains(v));
    }
  }
}

TEST_CASE("commutative algebra validation on k[t]/(t^2)") {
  CommAlgebra A = dual_numbers();
  CHECK(check_comm_algebra(A).ok());

  // In k[t]/(t^3), corrupt t*t^2 := 1 (kept symmetric): then
  // (t*t)*t^2 = 0 while t*(t*t^2) = t, an associativity failure.
  CommAlgebra A3;
  A3.field = Q;
  A3.dim = 3;
  A3.structure_constants = Tensor3(Q, 3, 3, 3);
  A3.unit = {q(1), q(0), q(0)};
  for (std::size_t j = 0; j < 3; ++j) {
    A3.structure_constants.at(0, j, j) = q(1);
    if (j) A3.structure_constants.at(j, 0, j) = q(1);
  }
  A3.structure_constants.at(1, 1, 2) = q(1);  // t*t = t^2
  REQUIRE(check_comm_algebra(A3).ok());
  CommAlgebra bad = A3;
  bad.structure_constants.at(1, 2, 0) = q(1);
  bad.structure_constants.at(2, 1, 0) = q(1);
  auto rep = check_comm_algebra(bad);
  CHECK(!rep.ok());
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.condition == "associativity") found = true;
  CHECK(found);

  AlgebraEndo id{Matrix::identity(Q, 2)};
  CHECK(check_algebra_endo(A, id).ok());

  // phi(t) = 1 is not multiplicative: phi(t^2) = 0 != phi(t)^2 = 1
  AlgebraEndo bad_phi{mat_q({{1, 1}, {0, 0}})};
  CHECK(!check_algebra_endo(A, bad_phi).ok());
}

TEST_CASE("phi-derivation spaces of k[t]/(t^2)") {
  CommAlgebra A = dual_numbers();
  AlgebraEndo id{Matrix::identity(Q, 2)};

  // A = k: delta(1) = 0 forces delta = 0
  CommAlgebra k;
  k.field = Q;
  k.dim = 1;
  k.structure_constants = Tensor3(Q, 1, 1, 1);
  k.structure_constants.at(0, 0, 0) = q(1);
  k.unit = {q(1)};
  AlgebraEndo idk{Matrix::identity(Q, 1)};
  CHECK(phi_derivation_space(k, idk).dim() == 0);

  // phi = id: 1-dim, spanned by delta(1)=0, delta(t)=t
  Subspace der_id = phi_derivation_space(A, id);
  CHECK(der_id.dim() == 1);
  Matrix d(Q, 2, 2);
  d.at(1, 1) = q(1);  // delta(t) = t
  CHECK(der_id.contains(flatten(d)));
  CHECK(is_phi_derivation(A, id, d));

  // phi(t) = 0: delta(t) unconstrained -> 2-dim
  AlgebraEndo phi0{mat_q({{1, 0}, {0, 0}})};
  REQUIRE(check_algebra_endo(A, phi0).ok());
  Subspace der_phi0 = phi_derivation_space(A, phi0);
  CHECK(der_phi0.dim() == 2);

  // membership both ways
  for (std::size_t i = 0; i < der_phi0.dim(); ++i) {
    Matrix m = unflatten(Q, der_phi0.basis().row(i), 2, 2);
    CHECK(is_phi_derivation(A, phi0, m));
  }

  // random probes: a matrix passes the predicate iff it lies in the space
  std::mt19937 rng(31415);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix m(Q, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) m.at(i, j) = q(static_cast<int>(rng() % 5) - 2);
    CHECK(is_phi_derivation(A, id, m) == der_id.contains(flatten(m)));
    CHECK(is_phi_derivation(A, phi0, m) == der_phi0.contains(flatten(m)));
  }
}
