#pragma once

// Command dispatch: every subcommand maps one-to-one onto a library
// operation and serializes its result as a deterministic report.
//
// Exit codes: 0 ok, 1 violations found, 2 precondition refused,
// 3 parse/shape error.

#include <fstream>

#include "hlr/cohomology.hpp"
#include "hlr/fixtures.hpp"
#include "hlr/io.hpp"
#include "hlr/lifting.hpp"
#include "hlr/tensor.hpp"

namespace hlr::cli {

struct RunResult {
  int exit_code = 0;
  std::string report;
};

using Options = std::map<std::string, std::string>;

namespace detail {

struct Refused : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string opt_or(const Options& opts, const std::string& key, const std::string& dflt) {
  auto it = opts.find(key);
  return it == opts.end() ? dflt : it->second;
}

inline const HomLieRinehart& pick_hlr(const io::InputDocument& doc, const Options& opts,
                                      std::string& name_out) {
  std::string name = opt_or(opts, "name", "");
  if (name.empty()) {
    if (doc.hlr_order.empty()) throw io::ParseError(1, "document contains no hlr block");
    name = doc.hlr_order.front();
  }
  name_out = name;
  return doc.hlr(name);
}

inline const io::ExtensionBlock& pick_extension(const io::InputDocument& doc, const Options& opts,
                                                std::string& name_out,
                                                const std::string& key = "name") {
  std::string name = opt_or(opts, key, "");
  if (name.empty()) {
    if (doc.extension_order.empty())
      throw io::ParseError(1, "document contains no extension block");
    name = doc.extension_order.front();
  }
  auto it = doc.extensions.find(name);
  if (it == doc.extensions.end())
    throw io::ParseError(1, "unresolved extension reference '" + name + "'");
  name_out = name;
  return it->second;
}

inline Extension assemble_extension(const io::InputDocument& doc, const io::ExtensionBlock& blk) {
  const HomLieRinehart& K = doc.hlr(blk.ker);
  const HomLieRinehart& M = doc.hlr(blk.mid);
  const HomLieRinehart& B = doc.hlr(blk.base);
  Matrix gid = Matrix::identity(K.field(), K.A.dim);
  return Extension{K, M, B, {gid, blk.i}, {gid, blk.sigma}};
}

inline void require_valid(const HomLieRinehart& H, std::ostringstream& os) {
  auto rep = check_axioms(H);
  if (!rep.ok()) {
    os << "status: violations\n";
    for (const auto& v : rep.violations) os << "violation: " << v.to_string() << '\n';
    throw int(1);
  }
}

inline void require_valid_extension(const Extension& E, std::ostringstream& os) {
  require_valid(E.ker, os);
  require_valid(E.mid, os);
  require_valid(E.base, os);
  auto rep = check_extension(E);
  if (!rep.ok()) {
    os << "status: violations\n";
    for (const auto& v : rep.violations) os << "violation: " << v.to_string() << '\n';
    throw int(1);
  }
}

inline LeftModule pick_left_module(const io::InputDocument& doc, const Options& opts,
                                   const HomLieRinehart& H, const std::string& hlr_name) {
  std::string name = opt_or(opts, "module", "");
  if (name.empty() && !doc.module_order.empty()) name = doc.module_order.front();
  if (!name.empty()) {
    auto it = doc.modules.find(name);
    if (it == doc.modules.end())
      throw io::ParseError(1, "unresolved module reference '" + name + "'");
    if (!it->second.left) throw Refused("module '" + name + "' is a right module");
    if (it->second.hlr_name != hlr_name)
      throw Refused("module '" + name + "' is over '" + it->second.hlr_name + "', not '" +
                    hlr_name + "'");
    return it->second.left_module;
  }
  if (H.A.dim != 1)
    throw Refused("no module block given and dim A > 1: the trivial module needs a character");
  return trivial_module(H);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// individual commands; each appends payload lines and returns the exit code

inline int cmd_check(const io::InputDocument& doc, const Options& opts, std::ostringstream& os) {
  std::string name;
  const HomLieRinehart& H = detail::pick_hlr(doc, opts, name);
  os << "target: " << name << '\n';
  os << "dim_A: " << H.A.dim << '\n';
  os << "dim_L: " << H.L_dim << '\n';
  auto rep = check_axioms(H);
  if (rep.ok()) {
    os << "status: ok\n";
    return 0;
  }
  os << "status: violations\n";
  for (const auto& v : rep.violations) os << "violation: " << v.to_string() << '\n';
  return 1;
}

inline int cmd_center(const io::InputDocument& doc, const Options& opts, std::ostringstream& os) {
  std::string name;
  const HomLieRinehart& H = detail::pick_hlr(doc, opts, name);
  os << "target: " << name << '\n';
  detail::require_valid(H, os);
  Subspace Z = center(H);
  os << "status: ok\n";
  io::emit_subspace(os, "center", Z);
  return 0;
}

inline int cmd_perfect(const io::InputDocument& doc, const Options& opts, std::ostringstream& os) {
  std::string name;
  const HomLieRinehart& H = detail::pick_hlr(doc, opts, name);
  os << "target: " << name << '\n';
  detail::require_valid(H, os);
  Subspace D = derived_submodule(H);
  Subspace AD = alpha_derived_submodule(H);
  os << "status: ok\n";
  os << "derived_dim: " << D.dim() << '\n';
  os << "alpha_derived_dim: " << AD.dim() << '\n';
  os << "perfect: " << (D.dim() == H.L_dim ? "true" : "false") << '\n';
  os << "alpha_perfect: " << (AD.dim() == H.L_dim ? "true" : "false") << '\n';
  return 0;
}

inline int cmd_uce(const io::InputDocument& doc, const Options& opts, std::ostringstream& os) {
  std::string name;
  const HomLieRinehart& H = detail::pick_hlr(doc, opts, name);
  os << "target: " << name << '\n';
  detail::require_valid(H, os);
  UceAlgebra U = build_uce(H);
  os << "status: ok\n";
  os << "ambient_dim: " << U.presentation.ambient_dim() << '\n';
  os << "relation_rank: " << U.presentation.relations().dim() << '\n';
  io::emit_matrix(os, "relation_basis", U.presentation.relations().basis());
  os << "quotient_dim: " << U.presentation.quotient_dim() << '\n';
  io::emit_tensor(os, "bracket", U.algebra.bracket_constants);
  io::emit_matrix(os, "alpha", U.algebra.alpha);
  io::emit_matrix(os, "u", U.u.f);
  os << "kernel_dim: " << kernel_of_u(U).dim() << '\n';
  return 0;
}

inline int cmd_h2(const io::InputDocument& doc, const Options& opts, std::ostringstream& os) {
  std::string name;
  const HomLieRinehart& H = detail::pick_hlr(doc, opts, name);
  os << "target: " << name << '\n';
  detail::require_valid(H, os);
  std::string n_opt = detail::opt_or(opts, "n", "2");
  std::int64_t n_raw = 0;
  try {
    std::size_t used = 0;
    n_raw = std::stoll(n_opt, &used);
    if (used != n_opt.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw detail::Refused("bad degree '" + n_opt + "'");
  }
  if (n_raw < 1 || static_cast<std::size_t>(n_raw) > H.L_dim)
    throw detail::Refused("degree out of range: n must be in [1, dim L]");
  std::size_t n = static_cast<std::size_t>(n_raw);
  LeftModule M = detail::pick_left_module(doc, opts, H, name);
  auto mod_rep = check_left_module(H, M);
  if (!mod_rep.ok()) {
    os << "status: violations\n";
    for (const auto& v : mod_rep.violations) os << "violation: " << v.to_string() << '\n';
    return 1;
  }
  CohomologyResult R = cohomology(H, M, n);
  os << "status: ok\n";
  os << "n: " << n << '\n';
  os << "cocycle_dim: " << R.cocycles.dim() << '\n';
  os << "coboundary_dim: " << R.coboundaries.dim() << '\n';
  os << "dim: " << R.dim << '\n';
  for (std::size_t i = 0; i < R.representatives.size(); ++i) {
    os << "representative " << i << ": ";
    io::emit_vec(os, R.representatives[i]);
    os << '\n';
  }
  return 0;
}

inline int cmd_ext_check(const io::InputDocument& doc, const Options& opts,
                         std::ostringstream& os) {
  std::string name;
  const io::ExtensionBlock& blk = detail::pick_extension(doc, opts, name);
  os << "target: " << name << '\n';
  Extension E = detail::assemble_extension(doc, blk);
  auto rep = check_extension(E);
  if (rep.ok()) {
    os << "status: ok\n";
    os << "ker_dim: " << E.ker.L_dim << '\n';
    os << "mid_dim: " << E.mid.L_dim << '\n';
    os << "base_dim: " << E.base.L_dim << '\n';
    return 0;
  }
  os << "status: violations\n";
  for (const auto& v : rep.violations) os << "violation: " << v.to_string() << '\n';
  return 1;
}

inline int cmd_ext_central(const io::InputDocument& doc, const Options& opts,
                           std::ostringstream& os) {
  std::string name;
  const io::ExtensionBlock& blk = detail::pick_extension(doc, opts, name);
  os << "target: " << name << '\n';
  Extension E = detail::assemble_extension(doc, blk);
  detail::require_valid_extension(E, os);
  os << "status: ok\n";
  os << "central: " << (is_central(E) ? "true" : "false") << '\n';
  os << "alpha_central: " << (is_alpha_central(E) ? "true" : "false") << '\n';
  return 0;
}

inline int cmd_split(const io::InputDocument& doc, const Options& opts, std::ostringstream& os) {
  std::string name;
  const io::ExtensionBlock& blk = detail::pick_extension(doc, opts, name);
  os << "target: " << name << '\n';
  Extension E = detail::assemble_extension(doc, blk);
  detail::require_valid_extension(E, os);
  os << "status: ok\n";
  auto tau = find_A_split_section(E);
  if (tau) {
    os << "a_split: found\n";
    io::emit_matrix(os, "tau", *tau);
  } else {
    os << "a_split: absent\n";
  }
  if (is_central(E)) {
    auto s = find_central_splitting(E);
    if (s) {
      os << "morphism_split: found\n";
      os << "unique: " << (s->unique ? "true" : "false") << '\n';
      io::emit_matrix(os, "section", s->section.f);
    } else {
      os << "morphism_split: absent\n";
    }
  } else {
    os << "morphism_split: not_central\n";
  }
  return 0;
}

inline int cmd_compose(const io::InputDocument& doc, const Options& opts, std::ostringstream& os) {
  std::string outer_name = detail::opt_or(opts, "e2", "");
  std::string inner_name = detail::opt_or(opts, "e1", "");
  if (outer_name.empty() || inner_name.empty()) {
    if (doc.extension_order.size() < 2)
      throw io::ParseError(1, "compose needs two extension blocks");
    if (outer_name.empty()) outer_name = doc.extension_order[0];
    if (inner_name.empty()) inner_name = doc.extension_order[1];
  }
  Options o2{{"name", outer_name}}, o1{{"name", inner_name}};
  std::string n2, n1;
  Extension E2 = detail::assemble_extension(doc, detail::pick_extension(doc, o2, n2));
  Extension E1 = detail::assemble_extension(doc, detail::pick_extension(doc, o1, n1));
  os << "target: " << n2 << " after " << n1 << '\n';
  detail::require_valid_extension(E2, os);
  detail::require_valid_extension(E1, os);
  if (!is_central(E2) || !is_central(E1))
    throw detail::Refused("compose: both extensions must be central");
  Extension C = compose_central(E2, E1);
  os << "status: ok\n";
  os << "kernel_dim: " << C.ker.L_dim << '\n';
  os << "perfect_middle: " << (is_perfect(E2.mid) ? "true" : "false") << '\n';
  os << "central: " << (is_central(C) ? "true" : "false") << '\n';
  os << "alpha_central: " << (is_alpha_central(C) ? "true" : "false") << '\n';
  return 0;
}

inline int cmd_tensor(const io::InputDocument& doc, const Options& opts, std::ostringstream& os) {
  CompatiblePair P{{}, {}, {}, {}};
  std::string self = detail::opt_or(opts, "self", "");
  if (!self.empty()) {
    const HomLieRinehart& H = doc.hlr(self);
    os << "target: " << self << " * " << self << '\n';
    detail::require_valid(H, os);
    P = self_action(H);
  } else {
    std::string lm_name = detail::opt_or(opts, "lm", "");
    std::string ml_name = detail::opt_or(opts, "ml", "");
    if (lm_name.empty() || ml_name.empty()) {
      if (doc.action_order.size() < 2)
        throw io::ParseError(1, "tensor needs two action blocks or self=<hlr>");
      if (lm_name.empty()) lm_name = doc.action_order[0];
      if (ml_name.empty()) ml_name = doc.action_order[1];
    }
    auto lm_it = doc.actions.find(lm_name);
    auto ml_it = doc.actions.find(ml_name);
    if (lm_it == doc.actions.end() || ml_it == doc.actions.end())
      throw io::ParseError(1, "unresolved action reference");
    const io::ActionBlock& lm = lm_it->second;
    const io::ActionBlock& ml = ml_it->second;
    if (lm.acting != ml.on || lm.on != ml.acting)
      throw detail::Refused("tensor: action blocks are not mutual");
    const HomLieRinehart& L = doc.hlr(lm.acting);
    const HomLieRinehart& M = doc.hlr(lm.on);
    os << "target: " << lm.acting << " * " << lm.on << '\n';
    detail::require_valid(L, os);
    detail::require_valid(M, os);
    P = CompatiblePair{L, M, {lm.theta}, {ml.theta}};
  }
  auto compat = check_compatible(P);
  if (!compat.ok()) {
    os << "status: violations\n";
    for (const auto& v : compat.violations) os << "violation: " << v.to_string() << '\n';
    return 1;
  }
  TensorAlgebra T = build_tensor(P);
  TensorProjections pr = projections(T);
  os << "status: ok\n";
  os << "ambient_dim: " << T.presentation.ambient_dim() << '\n';
  os << "relation_rank: " << T.presentation.relations().dim() << '\n';
  os << "quotient_dim: " << T.presentation.quotient_dim() << '\n';
  io::emit_tensor(os, "bracket", T.algebra.bracket_constants);
  io::emit_matrix(os, "alpha", T.algebra.alpha);
  io::emit_matrix(os, "pi1", pr.pi1.f);
  io::emit_matrix(os, "pi2", pr.pi2.f);
  return 0;
}

inline int cmd_lift_aut(const io::InputDocument& doc, const Options& opts,
                        std::ostringstream& os) {
  std::string ext_name;
  const io::ExtensionBlock& blk = detail::pick_extension(doc, opts, ext_name, "extension");
  Extension E = detail::assemble_extension(doc, blk);
  std::string m_name = detail::opt_or(opts, "morphism", "");
  if (m_name.empty()) {
    if (doc.morphism_order.empty()) throw io::ParseError(1, "lift-aut needs a morphism block");
    m_name = doc.morphism_order.front();
  }
  auto mit = doc.morphisms.find(m_name);
  if (mit == doc.morphisms.end())
    throw io::ParseError(1, "unresolved morphism reference '" + m_name + "'");
  if (mit->second.src != blk.base || mit->second.dst != blk.base)
    throw detail::Refused("lift-aut: morphism must be an endomorphism of the base");
  os << "target: " << ext_name << " lift " << m_name << '\n';
  detail::require_valid_extension(E, os);
  AutomorphismLift lift = lift_automorphism(E, mit->second.m);
  if (lift.lifted) {
    os << "status: ok\n";
    io::emit_matrix(os, "lifted", *lift.lifted);
    return 0;
  }
  os << "status: refused\n";
  os << "reason: P-stability fails: uce(h)(P) != P\n";
  io::emit_subspace(os, "P", lift.P);
  return 2;
}

inline int cmd_lift_der(const io::InputDocument& doc, const Options& opts,
                        std::ostringstream& os) {
  std::string ext_name;
  const io::ExtensionBlock& blk = detail::pick_extension(doc, opts, ext_name, "extension");
  Extension E = detail::assemble_extension(doc, blk);
  std::string d_name = detail::opt_or(opts, "derivation", "");
  if (d_name.empty()) {
    if (doc.derivation_order.empty()) throw io::ParseError(1, "lift-der needs a derivation block");
    d_name = doc.derivation_order.front();
  }
  auto dit = doc.derivations.find(d_name);
  if (dit == doc.derivations.end())
    throw io::ParseError(1, "unresolved derivation reference '" + d_name + "'");
  if (dit->second.hlr_name != blk.base)
    throw detail::Refused("lift-der: derivation must live on the base");
  os << "target: " << ext_name << " lift " << d_name << '\n';
  detail::require_valid_extension(E, os);
  DerivationLift lift = lift_alpha_derivation(E, dit->second.d);
  if (lift.lifted) {
    os << "status: ok\n";
    io::emit_matrix(os, "lifted_d", lift.lifted->D);
    io::emit_matrix(os, "lifted_sigma", lift.lifted->sigma_D);
    return 0;
  }
  os << "status: refused\n";
  os << "reason: P-stability fails: uce(D)(P) is not inside P\n";
  io::emit_subspace(os, "P", lift.P);
  return 2;
}

inline int cmd_compare_uce_tensor(const io::InputDocument& doc, const Options& opts,
                                  std::ostringstream& os) {
  std::string name;
  const HomLieRinehart& H = detail::pick_hlr(doc, opts, name);
  os << "target: " << name << '\n';
  detail::require_valid(H, os);
  if (!is_perfect(H)) throw detail::Refused("compare-uce-tensor: the algebra is not perfect");
  UceAlgebra U = build_uce(H);
  TensorAlgebra T = build_tensor(self_action(H));
  UceTensorComparison cmp = compare_uce_tensor(U, T);
  os << "status: ok\n";
  os << "uce_dim: " << U.presentation.quotient_dim() << '\n';
  os << "tensor_dim: " << T.presentation.quotient_dim() << '\n';
  io::emit_matrix(os, "iso", cmp.phi.f);
  io::emit_matrix(os, "u", U.u.f);
  os << "u_equals_pi_iso: true\n";
  return 0;
}

// ---------------------------------------------------------------------------
// the shipped fixture corpus

namespace corpus {

inline std::string simple_document(const std::string& name, const HomLieRinehart& H,
                                   const std::string& alg_name = "A",
                                   const std::string& endo_name = "phi") {
  std::ostringstream os;
  io::emit_field(os, H.field());
  io::emit_algebra_block(os, alg_name, H.A);
  io::emit_endo_block(os, endo_name, alg_name, H.phi);
  io::emit_hlr_block(os, name, alg_name, endo_name, H);
  return os.str();
}

inline std::string heisenberg_document() {
  HomLieRinehart F1 = fixtures::F1();
  LeftModule k1 = trivial_module(F1);
  auto h2 = cohomology(F1, k1, 2);
  Extension E = extension_from_cocycle(F1, k1, Cochain{2, h2.representatives[0]});
  std::ostringstream os;
  io::emit_field(os, F1.field());
  io::emit_algebra_block(os, "A", F1.A);
  io::emit_endo_block(os, "phi", "A", F1.phi);
  io::emit_hlr_block(os, "F1", "A", "phi", E.base);
  io::emit_hlr_block(os, "heis", "A", "phi", E.mid);
  io::emit_hlr_block(os, "kerM", "A", "phi", E.ker);
  io::emit_extension_block(os, "heis_ext", "kerM", "heis", "F1", E.i.f, E.sigma.f);
  return os.str();
}

inline std::string compose_document() {
  HomLieRinehart F2 = fixtures::F2();
  LeftModule k2 = trivial_module(F2);
  CochainComplex cx(F2, k2);
  Extension inner = extension_from_cocycle(F2, k2, Cochain{2, zero_vec(F2.field(), cx.coeff_dim(2))});
  Extension outer = identity_extension(F2);
  std::ostringstream os;
  io::emit_field(os, F2.field());
  io::emit_algebra_block(os, "A", F2.A);
  io::emit_endo_block(os, "phi", "A", F2.phi);
  io::emit_hlr_block(os, "F2", "A", "phi", F2);
  io::emit_hlr_block(os, "zero", "A", "phi", outer.ker);
  io::emit_hlr_block(os, "sum", "A", "phi", inner.mid);
  io::emit_hlr_block(os, "kerM", "A", "phi", inner.ker);
  io::emit_extension_block(os, "outer", "zero", "F2", "F2", outer.i.f, outer.sigma.f);
  io::emit_extension_block(os, "inner", "kerM", "sum", "F2", inner.i.f, inner.sigma.f);
  return os.str();
}

inline std::string doubled_document() {
  Extension E = fixtures::doubled_extension();
  std::ostringstream os;
  io::emit_field(os, E.base.field());
  io::emit_algebra_block(os, "A", E.base.A);
  io::emit_endo_block(os, "phi", "A", E.base.phi);
  io::emit_hlr_block(os, "L10", "A", "phi", E.base);
  io::emit_hlr_block(os, "K11", "A", "phi", E.mid);
  io::emit_hlr_block(os, "kerZ", "A", "phi", E.ker);
  io::emit_extension_block(os, "doubled", "kerZ", "K11", "L10", E.i.f, E.sigma.f);
  Matrix gid = Matrix::identity(E.base.field(), 1);
  io::emit_morphism_block(os, "swap", "L10", "L10", {gid, fixtures::doubled_swap()});
  io::emit_morphism_block(os, "grading", "L10", "L10", {gid, fixtures::doubled_grading()});
  AlphaDerivation ad_h = inner_derivation(E.base, E.base.L_basis(2));
  io::emit_derivation_block(os, "ad_h", "L10", ad_h);
  return os.str();
}

inline std::string actions_document() {
  HomLieRinehart F2 = fixtures::F2();
  std::ostringstream os;
  io::emit_field(os, F2.field());
  io::emit_algebra_block(os, "A", F2.A);
  io::emit_endo_block(os, "phi", "A", F2.phi);
  io::emit_hlr_block(os, "F2", "A", "phi", F2);
  io::emit_action_block(os, "adj_lm", "F2", "F2", F2.bracket_constants);
  io::emit_action_block(os, "adj_ml", "F2", "F2", F2.bracket_constants);
  return os.str();
}

inline std::string f4lr_document() {
  HomLieRinehart F4LR = fixtures::F4_lie_rinehart();
  std::ostringstream os;
  io::emit_field(os, F4LR.field());
  io::emit_algebra_block(os, "A", F4LR.A);
  io::emit_endo_block(os, "phi", "A", F4LR.phi);
  io::emit_hlr_block(os, "F4LR", "A", "phi", F4LR);
  LeftModule triv = trivial_module(F4LR, {fixtures::q(1), fixtures::q(0)});
  io::emit_module_block(os, "triv", "F4LR", triv);
  LeftModule canon = canonical_left_module(F4LR);
  io::emit_module_block(os, "canon", "F4LR", canon);
  return os.str();
}

// name -> file contents for the whole shipped corpus
inline std::vector<std::pair<std::string, std::string>> all() {
  return {
      {"F1.hlr", simple_document("F1", fixtures::F1())},
      {"F2.hlr", simple_document("F2", fixtures::F2())},
      {"F3.hlr", simple_document("F3", fixtures::F3())},
      {"F4.hlr", simple_document("F4", fixtures::F4())},
      {"F4LR.hlr", f4lr_document()},
      {"heisenberg.hlr", heisenberg_document()},
      {"compose.hlr", compose_document()},
      {"doubled.hlr", doubled_document()},
      {"actions.hlr", actions_document()},
  };
}

}  // namespace corpus

inline int cmd_fixtures(const std::string& dir, std::ostringstream& os) {
  for (const auto& [name, text] : corpus::all()) {
    std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw detail::Refused("cannot write " + path);
    out << text;
    os << "wrote: " << name << '\n';
  }
  os << "status: ok\n";
  return 0;
}

// ---------------------------------------------------------------------------

inline RunResult run(const std::string& command, const std::string& document_text,
                     const Options& opts) {
  std::ostringstream os;
  os << "command: " << command << '\n';
  int code = 0;
  try {
    io::InputDocument doc = io::parse_document(document_text);
    if (command == "check") code = cmd_check(doc, opts, os);
    else if (command == "center") code = cmd_center(doc, opts, os);
    else if (command == "perfect") code = cmd_perfect(doc, opts, os);
    else if (command == "uce") code = cmd_uce(doc, opts, os);
    else if (command == "h2") code = cmd_h2(doc, opts, os);
    else if (command == "ext-check") code = cmd_ext_check(doc, opts, os);
    else if (command == "ext-central") code = cmd_ext_central(doc, opts, os);
    else if (command == "split") code = cmd_split(doc, opts, os);
    else if (command == "compose") code = cmd_compose(doc, opts, os);
    else if (command == "tensor") code = cmd_tensor(doc, opts, os);
    else if (command == "lift-aut") code = cmd_lift_aut(doc, opts, os);
    else if (command == "lift-der") code = cmd_lift_der(doc, opts, os);
    else if (command == "compare-uce-tensor") code = cmd_compare_uce_tensor(doc, opts, os);
    else {
      os << "status: refused\nreason: unknown command\n";
      code = 2;
    }
  } catch (int thrown_code) {
    code = thrown_code;  // violations already written
  } catch (const io::ParseError& e) {
    os << "status: error\nreason: " << e.what() << '\n';
    code = 3;
  } catch (const detail::Refused& e) {
    os << "status: refused\nreason: " << e.what() << '\n';
    code = 2;
  } catch (const std::invalid_argument& e) {
    os << "status: refused\nreason: " << e.what() << '\n';
    code = 2;
  } catch (const std::logic_error& e) {
    os << "status: refused\nreason: internal verification failure: " << e.what() << '\n';
    code = 2;
  }
  return {code, os.str()};
}

}  // namespace hlr::cli
