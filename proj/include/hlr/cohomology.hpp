#pragma once

// The cochain complex C^n(L; M) of a hom-Lie-Rinehart algebra with
// coefficients in a left module, its differential, low-degree cohomology,
// and the dictionary between 2-cocycles and A-split abelian extensions.

#include <map>

#include "hlr/extensions.hpp"

namespace hlr {

inline std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t n_indices,
                                                               std::size_t length) {
  std::vector<std::vector<std::size_t>> out;
  if (length > n_indices) return out;
  std::vector<std::size_t> cur(length);
  for (std::size_t i = 0; i < length; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    // next combination
    std::size_t i = length;
    while (i > 0 && cur[i - 1] == n_indices - length + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < length; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Alternating n-cochains with values in M, stored on strictly increasing
// basis tuples; the alternating extension is by permutation sign.
struct Cochain {
  std::size_t degree = 0;
  Vec coefficients;  // (#tuples) x M_dim, blocked per tuple
};

class CochainComplex {
public:
  CochainComplex(const HomLieRinehart& H, const LeftModule& M) : H_(&H), M_(&M) {}

  const HomLieRinehart& algebra() const { return *H_; }
  const LeftModule& module() const { return *M_; }

  std::size_t coeff_dim(std::size_t n) const { return tuples(n).size() * M_->M_dim; }

  const std::vector<std::vector<std::size_t>>& tuples(std::size_t n) const {
    auto it = tuple_cache_.find(n);
    if (it == tuple_cache_.end())
      it = tuple_cache_.emplace(n, increasing_tuples(H_->L_dim, n)).first;
    return it->second;
  }

  // value on a basis index tuple, with the alternating sign; zero block on
  // repeated indices
  Vec value(const Cochain& f, std::vector<std::size_t> idx) const {
    const FieldDescriptor& F = H_->field();
    int sign = 1;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
        if (idx[j] > idx[j + 1]) {
          std::swap(idx[j], idx[j + 1]);
          sign = -sign;
        }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      if (idx[i] == idx[i + 1]) return zero_vec(F, M_->M_dim);
    const auto& tt = tuples(f.degree);
    std::size_t pos = 0;
    while (pos < tt.size() && tt[pos] != idx) ++pos;
    if (pos == tt.size()) throw std::logic_error("cochain value: tuple not found");
    Vec out(f.coefficients.begin() + pos * M_->M_dim,
            f.coefficients.begin() + (pos + 1) * M_->M_dim);
    if (sign < 0)
      for (auto& x : out) x = -x;
    return out;
  }

  // multilinear evaluation on arbitrary argument vectors
  Vec eval(const Cochain& f, const std::vector<Vec>& args) const {
    const FieldDescriptor& F = H_->field();
    Vec out = zero_vec(F, M_->M_dim);
    std::vector<std::size_t> idx(args.size());
    eval_rec(f, args, 0, Scalar::one(F), idx, out);
    return out;
  }

  // C^n as a canonical subspace of the coefficient space, cut out by the
  // two membership conditions.
  Subspace space(std::size_t n) const {
    const FieldDescriptor& F = H_->field();
    std::size_t dim = coeff_dim(n);
    std::vector<Vec> rows;
    Matrix phi_pow = power(H_->phi.matrix, n >= 1 ? n - 1 : 0);
    auto probe = [&](auto&& condition) {
      // expand a linear condition into matrix rows by probing coefficient
      // space unit vectors
      std::vector<Vec> results;
      for (std::size_t c = 0; c < dim; ++c) {
        Cochain unit{n, unit_vec(F, dim, c)};
        results.push_back(condition(unit));
      }
      std::size_t out_dim = results.empty() ? 0 : results[0].size();
      for (std::size_t r = 0; r < out_dim; ++r) {
        Vec row = zero_vec(F, dim);
        for (std::size_t c = 0; c < dim; ++c) row[c] = results[c][r];
        rows.push_back(row);
      }
    };

    // (1) f(alpha x_1, ..., alpha x_n) = beta(f(x_1, ..., x_n))
    for (const auto& T : tuples(n)) {
      probe([&](const Cochain& f) {
        std::vector<Vec> args;
        for (std::size_t t : T) args.push_back(H_->alpha_apply(H_->L_basis(t)));
        return sub(eval(f, args), M_->beta.apply(value(f, T)));
      });
    }
    // (2) f(a.x_c, x_{s_1}, ..., x_{s_{n-1}}) = phi^{n-1}(a) f(x_c, x_s...)
    if (n >= 1) {
      for (const auto& S : tuples(n - 1))
        for (std::size_t c = 0; c < H_->L_dim; ++c)
          for (std::size_t a = 0; a < H_->A.dim; ++a) {
            probe([&](const Cochain& f) {
              std::vector<Vec> args;
              args.push_back(H_->a_mul(H_->A.basis(a), H_->L_basis(c)));
              for (std::size_t t : S) args.push_back(H_->L_basis(t));
              Vec lhs = eval(f, args);
              std::vector<std::size_t> plain;
              plain.push_back(c);
              for (std::size_t t : S) plain.push_back(t);
              Vec rhs = M_->a_mul(H_->A, phi_pow.apply(H_->A.basis(a)), value(f, plain));
              return sub(lhs, rhs);
            });
          }
    }
    if (rows.empty()) return Subspace::full(F, dim);
    return kernel(Matrix::from_rows(F, rows, dim));
  }

  // delta f of a degree-n cochain; the argument must lie in C^n
  Cochain differential(const Cochain& f) const {
    if (!space(f.degree).contains(f.coefficients))
      throw std::invalid_argument("differential: cochain fails the membership conditions");
    return differential_raw(f);
  }

  // the same formula on an arbitrary coefficient vector; used to assemble
  // the matrix of delta on the full coefficient space
  Cochain differential_raw(const Cochain& f) const {
    const FieldDescriptor& F = H_->field();
    std::size_t n = f.degree;
    Matrix alpha_pow = power(H_->alpha, n >= 1 ? n - 1 : 0);
    const auto& target_tuples = tuples(n + 1);
    Cochain out{n + 1, zero_vec(F, coeff_dim(n + 1))};
    for (std::size_t tpos = 0; tpos < target_tuples.size(); ++tpos) {
      const auto& T = target_tuples[tpos];
      Vec acc = zero_vec(F, M_->M_dim);
      // action terms
      for (std::size_t i = 0; i < T.size(); ++i) {
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < T.size(); ++j)
          if (j != i) rest.push_back(T[j]);
        Vec fv = value(f, rest);
        Vec term = M_->theta_of(F, alpha_pow.apply(H_->L_basis(T[i]))).apply(fv);
        if (i % 2 == 1)
          acc = sub(acc, term);  // (-1)^{i+1} with 1-based i
        else
          acc = add(acc, term);
      }
      // bracket contraction terms, (-1)^{i+j} with 1-based positions
      for (std::size_t i = 0; i < T.size(); ++i)
        for (std::size_t j = i + 1; j < T.size(); ++j) {
          std::vector<Vec> args;
          args.push_back(H_->bracket(H_->L_basis(T[i]), H_->L_basis(T[j])));
          for (std::size_t k = 0; k < T.size(); ++k)
            if (k != i && k != j) args.push_back(H_->alpha_apply(H_->L_basis(T[k])));
          Vec term = eval(f, args);
          if ((i + j) % 2 == 0)
            acc = add(acc, term);  // sign (-1)^{(i+1)+(j+1)} = (-1)^{i+j}
          else
            acc = sub(acc, term);
        }
      for (std::size_t m = 0; m < M_->M_dim; ++m)
        out.coefficients[tpos * M_->M_dim + m] = acc[m];
    }
    return out;
  }

  // matrix of the differential on the full coefficient space
  Matrix differential_matrix(std::size_t n) const {
    const FieldDescriptor& F = H_->field();
    std::size_t dn = coeff_dim(n), dn1 = coeff_dim(n + 1);
    Matrix D(F, dn1, dn);
    for (std::size_t c = 0; c < dn; ++c) {
      Cochain unit{n, unit_vec(F, dn, c)};
      Cochain img = differential_raw(unit);
      for (std::size_t r = 0; r < dn1; ++r) D.at(r, c) = img.coefficients[r];
    }
    return D;
  }

private:
  const HomLieRinehart* H_;
  const LeftModule* M_;
  mutable std::map<std::size_t, std::vector<std::vector<std::size_t>>> tuple_cache_;

  static Matrix power(const Matrix& m, std::size_t k) {
    Matrix r = Matrix::identity(m.field(), m.rows());
    for (std::size_t i = 0; i < k; ++i) r = r * m;
    return r;
  }

  void eval_rec(const Cochain& f, const std::vector<Vec>& args, std::size_t slot, Scalar coeff,
                std::vector<std::size_t>& idx, Vec& out) const {
    if (slot == args.size()) {
      Vec v = value(f, idx);
      for (std::size_t m = 0; m < out.size(); ++m) out[m] = out[m] + coeff * v[m];
      return;
    }
    for (std::size_t j = 0; j < H_->L_dim; ++j) {
      if (args[slot][j].is_zero()) continue;
      idx[slot] = j;
      eval_rec(f, args, slot + 1, coeff * args[slot][j], idx, out);
    }
  }
};

struct CohomologyResult {
  std::size_t dim = 0;
  Subspace cocycles;        // Z^n inside the coefficient space
  Subspace coboundaries;    // B^n
  std::vector<Vec> representatives;
};

// H^n = ker(delta|C^n) / im(delta|C^{n-1}); the complex starts at n = 1,
// so H^1 = ker(delta^1).
inline CohomologyResult cohomology(const HomLieRinehart& H, const LeftModule& M, std::size_t n) {
  if (n < 1) throw std::invalid_argument("cohomology: degree must be >= 1");
  CochainComplex cx(H, M);
  const FieldDescriptor& F = H.field();

  Subspace Cn = cx.space(n);
  Matrix Dn = cx.differential_matrix(n);
  Subspace Z = intersect(Cn, kernel(Dn));

  Subspace B = Subspace::zero(F, cx.coeff_dim(n));
  if (n >= 2) {
    Subspace Cn1 = cx.space(n - 1);
    std::vector<Vec> images;
    Matrix Dn1 = cx.differential_matrix(n - 1);
    for (std::size_t r = 0; r < Cn1.dim(); ++r) images.push_back(Dn1.apply(Cn1.basis().row(r)));
    B = Subspace::span(F, images, cx.coeff_dim(n));
  }
  if (!Z.contains_subspace(B))
    throw std::logic_error("cohomology: coboundaries escape the cocycle space");

  CohomologyResult out;
  out.cocycles = Z;
  out.coboundaries = B;
  Subspace grow = B;
  for (std::size_t r = 0; r < Z.dim(); ++r) {
    Vec cand = Z.basis().row(r);
    if (!grow.contains(cand)) {
      out.representatives.push_back(cand);
      std::vector<Vec> ext;
      for (std::size_t i = 0; i < grow.dim(); ++i) ext.push_back(grow.basis().row(i));
      ext.push_back(cand);
      grow = Subspace::span(F, ext, Z.ambient_dim());
    }
  }
  out.dim = Z.dim() - B.dim();
  if (out.dim != out.representatives.size())
    throw std::logic_error("cohomology: representative count mismatch");
  return out;
}

// The twisted semidirect bracket on L + M from a 2-cocycle. The built
// structure is validated against the axioms rather than trusted.
inline Extension extension_from_cocycle(const HomLieRinehart& H, const LeftModule& M,
                                        const Cochain& f) {
  if (f.degree != 2) throw std::invalid_argument("extension_from_cocycle: degree must be 2");
  const FieldDescriptor& F = H.field();
  CochainComplex cx(H, M);
  if (!cx.space(2).contains(f.coefficients))
    throw std::invalid_argument("extension_from_cocycle: not a 2-cochain (membership fails)");
  if (!is_zero_vec(cx.differential(f).coefficients))
    throw std::invalid_argument("extension_from_cocycle: not a cocycle");

  std::size_t nL = H.L_dim, nM = M.M_dim, n = nL + nM, nA = H.A.dim;
  HomLieRinehart K;
  K.A = H.A;
  K.phi = H.phi;
  K.L_dim = n;
  K.a_action = Tensor3(F, nA, n, n);
  for (std::size_t a = 0; a < nA; ++a) {
    for (std::size_t j = 0; j < nL; ++j)
      for (std::size_t k = 0; k < nL; ++k) K.a_action.at(a, j, k) = H.a_action.at(a, j, k);
    for (std::size_t j = 0; j < nM; ++j)
      for (std::size_t k = 0; k < nM; ++k)
        K.a_action.at(a, nL + j, nL + k) = M.a_action.at(a, j, k);
  }
  K.bracket_constants = Tensor3(F, n, n, n);
  for (std::size_t p = 0; p < nL; ++p)
    for (std::size_t q = 0; q < nL; ++q) {
      Vec br = H.bracket(H.L_basis(p), H.L_basis(q));
      for (std::size_t k = 0; k < nL; ++k) K.bracket_constants.at(p, q, k) = br[k];
      Vec fv = cx.value(f, {p, q});
      for (std::size_t k = 0; k < nM; ++k) K.bracket_constants.at(p, q, nL + k) = fv[k];
    }
  for (std::size_t p = 0; p < nL; ++p)
    for (std::size_t q = 0; q < nM; ++q) {
      // [x + 0, 0 + n] = {x, n};  [0 + m, y + 0] = -{y, m}
      for (std::size_t k = 0; k < nM; ++k) {
        K.bracket_constants.at(p, nL + q, nL + k) = M.theta.at(p, q, k);
        K.bracket_constants.at(nL + q, p, nL + k) = -M.theta.at(p, q, k);
      }
    }
  K.alpha = Matrix(F, n, n);
  for (std::size_t i = 0; i < nL; ++i)
    for (std::size_t j = 0; j < nL; ++j) K.alpha.at(i, j) = H.alpha.at(i, j);
  for (std::size_t i = 0; i < nM; ++i)
    for (std::size_t j = 0; j < nM; ++j) K.alpha.at(nL + i, nL + j) = M.beta.at(i, j);
  K.anchor.assign(n, Matrix(F, nA, nA));
  for (std::size_t j = 0; j < nL; ++j) K.anchor[j] = H.anchor[j];

  auto axioms = check_axioms(K);
  if (!axioms.ok())
    throw std::invalid_argument("extension_from_cocycle: built algebra fails validation: " +
                                axioms.violations.front().to_string());

  HomLieRinehart kerM = module_as_hlr(H, M);
  Matrix gi = Matrix::identity(F, nA);
  Matrix inc(F, n, nM);
  for (std::size_t j = 0; j < nM; ++j) inc.at(nL + j, j) = Scalar::one(F);
  Matrix proj(F, nL, n);
  for (std::size_t j = 0; j < nL; ++j) proj.at(j, j) = Scalar::one(F);
  Extension E{kerM, K, H, {gi, inc}, {gi, proj}};
  auto rep = check_extension(E);
  if (!rep.ok())
    throw std::logic_error("extension_from_cocycle: extension fails validation: " +
                           rep.violations.front().to_string());
  return E;
}

struct RecoveredCocycle {
  LeftModule module;
  Cochain cocycle;
};

// Inverse dictionary: from an extension with an A-split section tau,
// recover the module action and the bracket-defect 2-cocycle.
inline RecoveredCocycle cocycle_from_extension(const Extension& E, const Matrix& tau) {
  const FieldDescriptor& F = E.mid.field();
  std::size_t nL = E.base.L_dim, nM = E.ker.L_dim;
  if (!(E.sigma.f * tau == Matrix::identity(F, nL)))
    throw std::invalid_argument("cocycle_from_extension: tau is not a section");

  auto i_preimage = [&](const Vec& v) {
    auto x = solve(E.i.f, v);
    if (!x)
      throw std::invalid_argument("cocycle_from_extension: defect escapes the kernel image");
    return *x;
  };

  LeftModule M;
  M.M_dim = nM;
  M.a_action = E.ker.a_action;
  M.beta = E.ker.alpha;
  M.theta = Tensor3(F, nL, nM, nM);
  for (std::size_t j = 0; j < nL; ++j)
    for (std::size_t m = 0; m < nM; ++m) {
      Vec act = i_preimage(E.mid.bracket(tau.apply(E.base.L_basis(j)),
                                         E.i.f.apply(E.ker.L_basis(m))));
      for (std::size_t k = 0; k < nM; ++k) M.theta.at(j, m, k) = act[k];
    }
  auto mod_rep = check_left_module(E.base, M);
  if (!mod_rep.ok())
    throw std::invalid_argument("cocycle_from_extension: recovered action is not a module: " +
                                mod_rep.violations.front().to_string());

  CochainComplex cx(E.base, M);
  const auto& pairs = cx.tuples(2);
  Cochain f{2, zero_vec(F, cx.coeff_dim(2))};
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    Vec x = E.base.L_basis(pairs[t][0]), y = E.base.L_basis(pairs[t][1]);
    Vec defect = sub(E.mid.bracket(tau.apply(x), tau.apply(y)),
                     tau.apply(E.base.bracket(x, y)));
    Vec m = i_preimage(defect);
    for (std::size_t k = 0; k < nM; ++k) f.coefficients[t * nM + k] = m[k];
  }
  if (!cx.space(2).contains(f.coefficients))
    throw std::logic_error("cocycle_from_extension: recovered cochain fails membership");
  if (!is_zero_vec(cx.differential(f).coefficients))
    throw std::logic_error("cocycle_from_extension: recovered cochain is not a cocycle");
  return {M, f};
}

}  // namespace hlr
