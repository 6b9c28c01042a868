#pragma once

// Short exact sequences over (A, phi): validation, centrality predicates,
// section solvers, composition, and equivalence of extensions.

#include <optional>

#include "hlr/linear_system.hpp"
#include "hlr/modules.hpp"

namespace hlr {

struct Extension {
  HomLieRinehart ker, mid, base;
  HLRMorphism i;      // ker -> mid
  HLRMorphism sigma;  // mid -> base
};

namespace detail {

// matrix of "multiplication by basis element e_a" acting on L
inline Matrix a_mult_on_L(const HomLieRinehart& H, std::size_t a) {
  Matrix m(H.field(), H.L_dim, H.L_dim);
  for (std::size_t j = 0; j < H.L_dim; ++j)
    for (std::size_t k = 0; k < H.L_dim; ++k) m.at(k, j) = H.a_action.at(a, j, k);
  return m;
}

// matrix of multiplication by a general algebra element acting on L
inline Matrix a_mult_matrix(const HomLieRinehart& H, const Vec& a) {
  Matrix m(H.field(), H.L_dim, H.L_dim);
  for (std::size_t i = 0; i < H.A.dim; ++i) {
    if (a[i].is_zero()) continue;
    m = m + a[i] * a_mult_on_L(H, i);
  }
  return m;
}

inline bool same_A_phi(const HomLieRinehart& a, const HomLieRinehart& b) {
  return a.A.dim == b.A.dim && a.A.structure_constants == b.A.structure_constants &&
         a.A.unit == b.A.unit && a.phi.matrix == b.phi.matrix;
}

// matrix of u -> [u, w] for fixed w
inline Matrix bracket_right(const HomLieRinehart& H, const Vec& w) {
  Matrix m(H.field(), H.L_dim, H.L_dim);
  for (std::size_t j = 0; j < H.L_dim; ++j) {
    Vec v = H.bracket(H.L_basis(j), w);
    for (std::size_t k = 0; k < H.L_dim; ++k) m.at(k, j) = v[k];
  }
  return m;
}

// matrix of u -> [w, u] for fixed w
inline Matrix bracket_left(const HomLieRinehart& H, const Vec& w) {
  Matrix m(H.field(), H.L_dim, H.L_dim);
  for (std::size_t j = 0; j < H.L_dim; ++j) {
    Vec v = H.bracket(w, H.L_basis(j));
    for (std::size_t k = 0; k < H.L_dim; ++k) m.at(k, j) = v[k];
  }
  return m;
}

inline bool same_structure(const HomLieRinehart& a, const HomLieRinehart& b) {
  return a.A.dim == b.A.dim && a.L_dim == b.L_dim &&
         a.A.structure_constants == b.A.structure_constants && a.A.unit == b.A.unit &&
         a.phi.matrix == b.phi.matrix && a.a_action == b.a_action &&
         a.bracket_constants == b.bracket_constants && a.alpha == b.alpha &&
         a.anchor == b.anchor;
}

}  // namespace detail

inline CheckReport check_extension(const Extension& E) {
  CheckReport rep;
  if (E.i.f.rows() != E.mid.L_dim || E.i.f.cols() != E.ker.L_dim ||
      E.sigma.f.rows() != E.base.L_dim || E.sigma.f.cols() != E.mid.L_dim)
    throw std::invalid_argument("check_extension: shape mismatch");

  rep.merge(check_morphism(E.ker, E.mid, E.i));
  rep.merge(check_morphism(E.mid, E.base, E.sigma));

  if (kernel(E.i.f).dim() != 0) rep.add("i_injective", {});
  if (rank(E.sigma.f) != E.base.L_dim) rep.add("sigma_surjective", {});
  if (!(kernel(E.sigma.f) == image(E.i.f))) rep.add("exactness", {});
  for (std::size_t j = 0; j < E.ker.L_dim; ++j)
    if (!E.ker.anchor[j].is_zero()) rep.add("kernel_anchor_zero", {j});
  return rep;
}

inline bool is_central(const Extension& E) {
  return center(E.mid).contains_subspace(image(E.i.f));
}

inline bool is_alpha_central(const Extension& E) {
  return center(E.mid).contains_subspace(image(E.i.f * E.ker.alpha));
}

// A linear section tau of sigma with sigma tau = id, tau(a.x) = a.tau(x)
// and tau alpha_base = alpha_mid tau; absent iff the system is
// inconsistent.
inline std::optional<Matrix> find_A_split_section(const Extension& E) {
  const FieldDescriptor& F = E.mid.field();
  std::size_t nB = E.base.L_dim, nM = E.mid.L_dim;
  MatrixUnknownSystem sys(F, nM, nB);
  sys.add({{E.sigma.f, Matrix::identity(F, nB)}}, Matrix::identity(F, nB));
  for (std::size_t a = 0; a < E.base.A.dim; ++a) {
    Matrix amB = detail::a_mult_on_L(E.base, a);
    Matrix amM = detail::a_mult_on_L(E.mid, a);
    sys.add({{Matrix::identity(F, nM), amB}, {Scalar::from_int(F, -1) * amM, Matrix::identity(F, nB)}},
            Matrix(F, nM, nB));
  }
  sys.add({{Matrix::identity(F, nM), E.base.alpha},
           {Scalar::from_int(F, -1) * E.mid.alpha, Matrix::identity(F, nB)}},
          Matrix(F, nM, nB));
  return sys.solve_any();
}

struct CentralSplitting {
  HLRMorphism section;
  bool unique = false;
};

// For central E: a section that is a full morphism, if one exists. The
// bracket defect of any A-alpha-section lands in Ker(sigma) and is
// independent of the section (kernel elements kill all brackets), so the
// correction is a linear problem.
inline std::optional<CentralSplitting> find_central_splitting(const Extension& E) {
  if (!is_central(E)) throw std::invalid_argument("find_central_splitting: extension not central");
  const FieldDescriptor& F = E.mid.field();
  auto tau0 = find_A_split_section(E);
  if (!tau0) return std::nullopt;

  std::size_t nB = E.base.L_dim, nK = E.ker.L_dim, nM = E.mid.L_dim;
  MatrixUnknownSystem sys(F, nK, nB);  // unknown mu: base -> ker, lambda = i mu

  // lambda([x,y]) = [tau0 x, tau0 y] - tau0([x,y]) on basis pairs
  for (std::size_t p = 0; p < nB; ++p)
    for (std::size_t q = p + 1; q < nB; ++q) {
      Vec br = E.base.bracket(E.base.L_basis(p), E.base.L_basis(q));
      Matrix brcol(F, nB, 1);
      for (std::size_t k = 0; k < nB; ++k) brcol.at(k, 0) = br[k];
      Vec defect = sub(E.mid.bracket(tau0->apply(E.base.L_basis(p)), tau0->apply(E.base.L_basis(q))),
                       tau0->apply(br));
      Matrix target(F, nM, 1);
      for (std::size_t k = 0; k < nM; ++k) target.at(k, 0) = defect[k];
      sys.add({{E.i.f, brcol}}, target);
    }
  // lambda(a.x) = a.lambda(x)
  for (std::size_t a = 0; a < E.base.A.dim; ++a) {
    Matrix amB = detail::a_mult_on_L(E.base, a);
    Matrix amM = detail::a_mult_on_L(E.mid, a);
    sys.add({{E.i.f, amB}, {Scalar::from_int(F, -1) * amM * E.i.f, Matrix::identity(F, nB)}},
            Matrix(F, nM, nB));
  }
  // lambda alpha_base = alpha_mid lambda
  sys.add({{E.i.f, E.base.alpha},
           {Scalar::from_int(F, -1) * E.mid.alpha * E.i.f, Matrix::identity(F, nB)}},
          Matrix(F, nM, nB));

  auto mu = sys.solve_any();
  if (!mu) return std::nullopt;
  Matrix tau = *tau0 + E.i.f * *mu;
  HLRMorphism section{Matrix::identity(F, E.base.A.dim), tau};
  auto rep = check_morphism(E.base, E.mid, section);
  if (!rep.ok())
    throw std::logic_error("find_central_splitting: solved section fails morphism check: " +
                           rep.violations.front().to_string());
  bool unique = sys.homogeneous_solutions().dim() == 0;
  return CentralSplitting{section, unique};
}

// Composition of two central extensions E2: M -> K -> L and
// E1: N -> L' -> K; the base of E1 must be the middle of E2. When K is
// perfect the composite is asserted alpha-central; otherwise it is merely
// returned.
inline Extension compose_central(const Extension& E2, const Extension& E1) {
  if (!detail::same_structure(E1.base, E2.mid))
    throw std::invalid_argument("compose_central: middle objects do not match");
  if (!is_central(E2) || !is_central(E1))
    throw std::invalid_argument("compose_central: both extensions must be central");
  const FieldDescriptor& F = E1.mid.field();
  Matrix comp = E2.sigma.f * E1.sigma.f;
  Subspace K = kernel(comp);
  HomLieRinehart ker_alg = restrict_to_subspace(E1.mid, K);
  for (std::size_t j = 0; j < ker_alg.L_dim; ++j)
    if (!ker_alg.anchor[j].is_zero())
      throw std::logic_error("compose_central: composite kernel has nonzero anchor");

  Matrix incl(F, E1.mid.L_dim, K.dim());
  for (std::size_t r = 0; r < K.dim(); ++r)
    for (std::size_t c = 0; c < E1.mid.L_dim; ++c) incl.at(c, r) = K.basis().at(r, c);
  Matrix gid = Matrix::identity(F, E1.mid.A.dim);
  Extension out{ker_alg, E1.mid, E2.base, {gid, incl}, {gid, comp}};

  // Alpha-centrality of the composite is guaranteed for a perfect middle;
  // with the hypothesis met it is asserted, otherwise only tested.
  if (is_perfect(E2.mid) && !is_alpha_central(out))
    throw std::logic_error("compose_central: composite of central extensions over a perfect "
                           "middle is not alpha-central");
  return out;
}

// Equivalence of two extensions with the same (abelian) kernel and base:
// an isomorphism of middles commuting with i and sigma. The bracket
// condition is linearized through the section-independence of the defect,
// which needs the kernels to bracket to zero.
inline bool are_equivalent(const Extension& E1, const Extension& E2) {
  if (!detail::same_structure(E1.ker, E2.ker) || !detail::same_structure(E1.base, E2.base))
    throw std::invalid_argument("are_equivalent: mismatched ends");
  for (std::size_t i = 0; i < E1.ker.L_dim; ++i)
    for (std::size_t j = 0; j < E1.ker.L_dim; ++j)
      for (std::size_t k = 0; k < E1.ker.L_dim; ++k)
        if (!E1.ker.bracket_constants.at(i, j, k).is_zero())
          throw std::invalid_argument("are_equivalent: kernel must be abelian");

  const FieldDescriptor& F = E1.mid.field();
  std::size_t n1 = E1.mid.L_dim, n2 = E2.mid.L_dim, nB = E1.base.L_dim, nK = E1.ker.L_dim;

  // stage 1: theta_p with theta i1 = i2, sigma2 theta = sigma1,
  // A-semilinearity, alpha-compatibility
  MatrixUnknownSystem stage1(F, n2, n1);
  stage1.add({{Matrix::identity(F, n2), E1.i.f}}, E2.i.f);
  stage1.add({{E2.sigma.f, Matrix::identity(F, n1)}}, E1.sigma.f);
  for (std::size_t a = 0; a < E1.mid.A.dim; ++a) {
    Matrix am1 = detail::a_mult_on_L(E1.mid, a);
    Matrix am2 = detail::a_mult_on_L(E2.mid, a);
    stage1.add({{Matrix::identity(F, n2), am1}, {Scalar::from_int(F, -1) * am2, Matrix::identity(F, n1)}},
               Matrix(F, n2, n1));
  }
  stage1.add({{Matrix::identity(F, n2), E1.mid.alpha},
              {Scalar::from_int(F, -1) * E2.mid.alpha, Matrix::identity(F, n1)}},
             Matrix(F, n2, n1));
  auto theta_p = stage1.solve_any();
  if (!theta_p) return false;

  // stage 2: correct by delta = i2 nu sigma1 so brackets match; the
  // correction keeps stage-1 conditions, which is re-imposed explicitly.
  MatrixUnknownSystem stage2(F, nK, nB);
  for (std::size_t p = 0; p < n1; ++p)
    for (std::size_t q = p + 1; q < n1; ++q) {
      Vec br1 = E1.mid.bracket(E1.mid.L_basis(p), E1.mid.L_basis(q));
      Vec tp = theta_p->apply(E1.mid.L_basis(p));
      Vec tq = theta_p->apply(E1.mid.L_basis(q));
      Vec target_v = sub(E2.mid.bracket(tp, tq), theta_p->apply(br1));
      Matrix target(F, n2, 1);
      for (std::size_t k = 0; k < n2; ++k) target.at(k, 0) = target_v[k];

      Matrix br1col(F, n1, 1), epcol(F, n1, 1), eqcol(F, n1, 1);
      for (std::size_t k = 0; k < n1; ++k) br1col.at(k, 0) = br1[k];
      epcol.at(p, 0) = Scalar::one(F);
      eqcol.at(q, 0) = Scalar::one(F);

      // delta([p,q]) + [delta p, theta q] + [theta p, delta q] = target
      std::vector<std::pair<Matrix, Matrix>> parts;
      parts.push_back({E2.i.f, E1.sigma.f * br1col});
      parts.push_back({detail::bracket_right(E2.mid, tq) * E2.i.f, E1.sigma.f * epcol});
      parts.push_back({detail::bracket_left(E2.mid, tp) * E2.i.f, E1.sigma.f * eqcol});
      stage2.add(parts, target);
    }
  for (std::size_t a = 0; a < E1.mid.A.dim; ++a) {
    Matrix am1 = detail::a_mult_on_L(E1.mid, a);
    Matrix am2 = detail::a_mult_on_L(E2.mid, a);
    stage2.add({{E2.i.f, E1.sigma.f * am1},
                {Scalar::from_int(F, -1) * am2 * E2.i.f, E1.sigma.f}},
               Matrix(F, n2, n1));
  }
  stage2.add({{E2.i.f, E1.sigma.f * E1.mid.alpha},
              {Scalar::from_int(F, -1) * E2.mid.alpha * E2.i.f, E1.sigma.f}},
             Matrix(F, n2, n1));

  auto nu = stage2.solve_any();
  if (!nu) return false;
  Matrix theta = *theta_p + E2.i.f * *nu * E1.sigma.f;
  HLRMorphism iso{Matrix::identity(F, E1.mid.A.dim), theta};
  auto rep = check_morphism(E1.mid, E2.mid, iso);
  if (!rep.ok())
    throw std::logic_error("are_equivalent: solved map fails morphism check: " +
                           rep.violations.front().to_string());
  if (!inverse(theta)) throw std::logic_error("are_equivalent: solved equivalence not invertible");
  return true;
}

// The direct-sum extension of H by a left module (M, beta) with a given
// cocycle is built in cohomology.hpp; here is the plain split direct sum
// used as a baseline in tests.
inline Extension identity_extension(const HomLieRinehart& H) {
  const FieldDescriptor& F = H.field();
  HomLieRinehart zero;
  zero.A = H.A;
  zero.phi = H.phi;
  zero.L_dim = 0;
  zero.a_action = Tensor3(F, H.A.dim, 0, 0);
  zero.bracket_constants = Tensor3(F, 0, 0, 0);
  zero.alpha = Matrix(F, 0, 0);
  Matrix gid = Matrix::identity(F, H.A.dim);
  return {zero, H, H, {gid, Matrix(F, H.L_dim, 0)}, {gid, Matrix::identity(F, H.L_dim)}};
}

}  // namespace hlr
