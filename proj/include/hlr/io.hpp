#pragma once

// The line-oriented input format and the deterministic report emitter.
//
// A document is a sequence of named blocks over one field declaration;
// every tensor carries an explicit shape header and is validated against
// the declared dimensions before any computation runs.

#include <map>
#include <sstream>
#include <string>

#include "hlr/lifting.hpp"
#include "hlr/modules.hpp"
#include "hlr/tensor.hpp"

namespace hlr::io {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

struct Token {
  std::string text;
  std::size_t line;
};

inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::string cur;
  bool comment = false;
  auto flush = [&]() {
    if (!cur.empty()) {
      out.push_back({cur, line});
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
      comment = false;
      ++line;
    } else if (comment) {
      continue;
    } else if (c == '#') {
      flush();
      comment = true;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

struct ModuleBlock {
  std::string hlr_name;
  bool left = true;
  LeftModule left_module;    // populated when left
  RightModule right_module;  // populated when right
};

struct MorphismBlock {
  std::string src, dst;
  HLRMorphism m;
};

struct ExtensionBlock {
  std::string ker, mid, base;
  Matrix i, sigma;
};

struct ActionBlock {
  std::string acting, on;
  Tensor3 theta;
};

struct DerivationBlock {
  std::string hlr_name;
  AlphaDerivation d;
};

struct InputDocument {
  FieldDescriptor field;
  std::map<std::string, CommAlgebra> algebras;
  std::map<std::string, AlgebraEndo> endos;
  std::map<std::string, std::string> endo_algebra;  // endo name -> algebra name
  std::map<std::string, HomLieRinehart> hlrs;
  std::map<std::string, ModuleBlock> modules;
  std::map<std::string, MorphismBlock> morphisms;
  std::map<std::string, ExtensionBlock> extensions;
  std::map<std::string, ActionBlock> actions;
  std::map<std::string, DerivationBlock> derivations;
  std::vector<std::string> hlr_order, module_order, morphism_order, extension_order,
      action_order, derivation_order;

  const HomLieRinehart& hlr(const std::string& name, std::size_t line = 0) const {
    auto it = hlrs.find(name);
    if (it == hlrs.end()) throw ParseError(line, "unresolved hlr reference '" + name + "'");
    return it->second;
  }
};

class Parser {
public:
  explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

  InputDocument parse() {
    InputDocument doc;
    bool field_seen = false;
    while (!done()) {
      Token head = next();
      if (head.text == "field") {
        Token kind = next();
        if (kind.text == "rational") {
          doc.field = FieldDescriptor::rationals();
        } else if (kind.text == "prime") {
          std::int64_t p = integer(next());
          try {
            doc.field = FieldDescriptor::prime(p);
          } catch (const std::exception& e) {
            throw ParseError(kind.line, e.what());
          }
        } else {
          throw ParseError(kind.line, "expected 'rational' or 'prime'");
        }
        field_seen = true;
      } else if (head.text == "algebra") {
        require_field(field_seen, head);
        parse_algebra(doc);
      } else if (head.text == "endo") {
        require_field(field_seen, head);
        parse_endo(doc);
      } else if (head.text == "hlr") {
        require_field(field_seen, head);
        parse_hlr(doc);
      } else if (head.text == "module") {
        require_field(field_seen, head);
        parse_module(doc);
      } else if (head.text == "morphism") {
        require_field(field_seen, head);
        parse_morphism(doc);
      } else if (head.text == "extension") {
        require_field(field_seen, head);
        parse_extension(doc);
      } else if (head.text == "action") {
        require_field(field_seen, head);
        parse_action(doc);
      } else if (head.text == "derivation") {
        require_field(field_seen, head);
        parse_derivation(doc);
      } else {
        throw ParseError(head.line, "unknown block '" + head.text + "'");
      }
    }
    if (!field_seen) throw ParseError(1, "missing field declaration");
    return doc;
  }

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;

  bool done() const { return pos_ >= tokens_.size(); }
  Token next() {
    if (done()) throw ParseError(tokens_.empty() ? 1 : tokens_.back().line, "unexpected end of input");
    return tokens_[pos_++];
  }
  Token peek() {
    if (done()) throw ParseError(tokens_.empty() ? 1 : tokens_.back().line, "unexpected end of input");
    return tokens_[pos_];
  }
  void expect(const std::string& word) {
    Token t = next();
    if (t.text != word) throw ParseError(t.line, "expected '" + word + "', got '" + t.text + "'");
  }
  static void require_field(bool seen, const Token& t) {
    if (!seen) throw ParseError(t.line, "field declaration must come first");
  }

  std::int64_t integer(const Token& t) {
    try {
      std::size_t used = 0;
      std::int64_t v = std::stoll(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ParseError(t.line, "expected an integer, got '" + t.text + "'");
    }
  }

  std::size_t dimension(const Token& t) {
    std::int64_t v = integer(t);
    if (v < 0) throw ParseError(t.line, "dimension must be nonnegative");
    return static_cast<std::size_t>(v);
  }

  Scalar scalar(const FieldDescriptor& f) {
    Token t = next();
    try {
      return Scalar::parse(f, t.text);
    } catch (const std::exception& e) {
      throw ParseError(t.line, "bad scalar '" + t.text + "': " + e.what());
    }
  }

  Vec vector(const FieldDescriptor& f, std::size_t n) {
    Vec v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(scalar(f));
    return v;
  }

  // shape-headed matrix: "<keyword> r c" then r*c scalars
  Matrix matrix(const FieldDescriptor& f, std::size_t rows, std::size_t cols,
                const std::string& block) {
    Token rt = peek();
    std::size_t r = dimension(next()), c = dimension(next());
    if (r != rows || c != cols)
      throw ParseError(rt.line, block + ": declared shape " + std::to_string(r) + "x" +
                                    std::to_string(c) + ", expected " + std::to_string(rows) +
                                    "x" + std::to_string(cols));
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = scalar(f);
    return m;
  }

  Tensor3 tensor(const FieldDescriptor& f, std::size_t d0, std::size_t d1, std::size_t d2,
                 const std::string& block) {
    Token rt = peek();
    std::size_t a = dimension(next()), b = dimension(next()), c = dimension(next());
    if (a != d0 || b != d1 || c != d2)
      throw ParseError(rt.line, block + ": declared shape " + std::to_string(a) + "x" +
                                    std::to_string(b) + "x" + std::to_string(c) + ", expected " +
                                    std::to_string(d0) + "x" + std::to_string(d1) + "x" +
                                    std::to_string(d2));
    Tensor3 t(f, d0, d1, d2);
    for (std::size_t i = 0; i < d0; ++i)
      for (std::size_t j = 0; j < d1; ++j)
        for (std::size_t k = 0; k < d2; ++k) t.at(i, j, k) = scalar(f);
    return t;
  }

  std::string block_name(const char* kind, std::size_t line,
                         const std::map<std::string, int>& seen) {
    (void)kind;
    (void)line;
    (void)seen;
    return next().text;
  }

  void parse_algebra(InputDocument& doc) {
    Token name = next();
    if (doc.algebras.count(name.text)) throw ParseError(name.line, "duplicate algebra name");
    CommAlgebra A;
    A.field = doc.field;
    expect("dim");
    A.dim = dimension(next());
    expect("unit");
    A.unit = vector(doc.field, A.dim);
    expect("table");
    A.structure_constants = tensor(doc.field, A.dim, A.dim, A.dim, "algebra " + name.text);
    expect("end");
    doc.algebras.emplace(name.text, std::move(A));
  }

  const CommAlgebra& resolve_algebra(InputDocument& doc, const Token& t) {
    auto it = doc.algebras.find(t.text);
    if (it == doc.algebras.end())
      throw ParseError(t.line, "unresolved algebra reference '" + t.text + "'");
    return it->second;
  }

  void parse_endo(InputDocument& doc) {
    Token name = next();
    if (doc.endos.count(name.text)) throw ParseError(name.line, "duplicate endo name");
    expect("algebra");
    Token alg = next();
    const CommAlgebra& A = resolve_algebra(doc, alg);
    expect("matrix");
    AlgebraEndo e{matrix(doc.field, A.dim, A.dim, "endo " + name.text)};
    expect("end");
    doc.endos.emplace(name.text, std::move(e));
    doc.endo_algebra.emplace(name.text, alg.text);
  }

  void parse_hlr(InputDocument& doc) {
    Token name = next();
    if (doc.hlrs.count(name.text)) throw ParseError(name.line, "duplicate hlr name");
    HomLieRinehart H;
    expect("algebra");
    H.A = resolve_algebra(doc, next());
    expect("endo");
    Token en = next();
    auto eit = doc.endos.find(en.text);
    if (eit == doc.endos.end())
      throw ParseError(en.line, "unresolved endo reference '" + en.text + "'");
    H.phi = eit->second;
    if (H.phi.matrix.rows() != H.A.dim)
      throw ParseError(en.line, "endo '" + en.text + "' does not match the algebra dimension");
    expect("dim");
    H.L_dim = dimension(next());
    expect("action");
    H.a_action = tensor(doc.field, H.A.dim, H.L_dim, H.L_dim, "hlr " + name.text + " action");
    expect("bracket");
    H.bracket_constants =
        tensor(doc.field, H.L_dim, H.L_dim, H.L_dim, "hlr " + name.text + " bracket");
    expect("alpha");
    H.alpha = matrix(doc.field, H.L_dim, H.L_dim, "hlr " + name.text + " alpha");
    expect("anchor");
    for (std::size_t j = 0; j < H.L_dim; ++j)
      H.anchor.push_back(matrix(doc.field, H.A.dim, H.A.dim, "hlr " + name.text + " anchor"));
    expect("end");
    doc.hlrs.emplace(name.text, std::move(H));
    doc.hlr_order.push_back(name.text);
  }

  void parse_module(InputDocument& doc) {
    Token name = next();
    if (doc.modules.count(name.text)) throw ParseError(name.line, "duplicate module name");
    ModuleBlock blk;
    expect("hlr");
    Token h = next();
    const HomLieRinehart& H = doc.hlr(h.text, h.line);
    blk.hlr_name = h.text;
    expect("side");
    Token side = next();
    if (side.text != "left" && side.text != "right")
      throw ParseError(side.line, "side must be left or right");
    blk.left = side.text == "left";
    expect("dim");
    std::size_t m = dimension(next());
    expect("action");
    Tensor3 a_action = tensor(doc.field, H.A.dim, m, m, "module " + name.text + " action");
    expect("theta");
    Tensor3 theta = blk.left
                        ? tensor(doc.field, H.L_dim, m, m, "module " + name.text + " theta")
                        : tensor(doc.field, m, H.L_dim, m, "module " + name.text + " theta");
    expect("beta");
    Matrix beta = matrix(doc.field, m, m, "module " + name.text + " beta");
    expect("end");
    if (blk.left)
      blk.left_module = LeftModule{m, a_action, theta, beta};
    else
      blk.right_module = RightModule{m, a_action, theta, beta};
    doc.modules.emplace(name.text, std::move(blk));
    doc.module_order.push_back(name.text);
  }

  void parse_morphism(InputDocument& doc) {
    Token name = next();
    if (doc.morphisms.count(name.text)) throw ParseError(name.line, "duplicate morphism name");
    MorphismBlock blk;
    expect("src");
    Token s = next();
    const HomLieRinehart& S = doc.hlr(s.text, s.line);
    blk.src = s.text;
    expect("dst");
    Token d = next();
    const HomLieRinehart& D = doc.hlr(d.text, d.line);
    blk.dst = d.text;
    expect("g");
    blk.m.g = matrix(doc.field, D.A.dim, S.A.dim, "morphism " + name.text + " g");
    expect("f");
    blk.m.f = matrix(doc.field, D.L_dim, S.L_dim, "morphism " + name.text + " f");
    expect("end");
    doc.morphisms.emplace(name.text, std::move(blk));
    doc.morphism_order.push_back(name.text);
  }

  void parse_extension(InputDocument& doc) {
    Token name = next();
    if (doc.extensions.count(name.text)) throw ParseError(name.line, "duplicate extension name");
    ExtensionBlock blk;
    expect("ker");
    Token k = next();
    const HomLieRinehart& K = doc.hlr(k.text, k.line);
    blk.ker = k.text;
    expect("mid");
    Token m = next();
    const HomLieRinehart& M = doc.hlr(m.text, m.line);
    blk.mid = m.text;
    expect("base");
    Token b = next();
    const HomLieRinehart& B = doc.hlr(b.text, b.line);
    blk.base = b.text;
    expect("i");
    blk.i = matrix(doc.field, M.L_dim, K.L_dim, "extension " + name.text + " i");
    expect("sigma");
    blk.sigma = matrix(doc.field, B.L_dim, M.L_dim, "extension " + name.text + " sigma");
    expect("end");
    doc.extensions.emplace(name.text, std::move(blk));
    doc.extension_order.push_back(name.text);
  }

  void parse_action(InputDocument& doc) {
    Token name = next();
    if (doc.actions.count(name.text)) throw ParseError(name.line, "duplicate action name");
    ActionBlock blk;
    expect("acting");
    Token a = next();
    const HomLieRinehart& L = doc.hlr(a.text, a.line);
    blk.acting = a.text;
    expect("on");
    Token o = next();
    const HomLieRinehart& M = doc.hlr(o.text, o.line);
    blk.on = o.text;
    expect("theta");
    blk.theta = tensor(doc.field, L.L_dim, M.L_dim, M.L_dim, "action " + name.text);
    expect("end");
    doc.actions.emplace(name.text, std::move(blk));
    doc.action_order.push_back(name.text);
  }

  void parse_derivation(InputDocument& doc) {
    Token name = next();
    if (doc.derivations.count(name.text)) throw ParseError(name.line, "duplicate derivation name");
    DerivationBlock blk;
    expect("hlr");
    Token h = next();
    const HomLieRinehart& H = doc.hlr(h.text, h.line);
    blk.hlr_name = h.text;
    expect("d");
    blk.d.D = matrix(doc.field, H.L_dim, H.L_dim, "derivation " + name.text + " d");
    expect("sigma");
    blk.d.sigma_D = matrix(doc.field, H.A.dim, H.A.dim, "derivation " + name.text + " sigma");
    expect("end");
    doc.derivations.emplace(name.text, std::move(blk));
    doc.derivation_order.push_back(name.text);
  }
};

inline InputDocument parse_document(const std::string& text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// deterministic emitters

inline void emit_vec(std::ostringstream& os, const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i].to_string();
  }
}

inline void emit_matrix(std::ostringstream& os, const std::string& label, const Matrix& m) {
  os << label << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m.at(i, j).to_string();
    }
    os << '\n';
  }
}

inline void emit_tensor(std::ostringstream& os, const std::string& label, const Tensor3& t) {
  os << label << ' ' << t.dim0() << ' ' << t.dim1() << ' ' << t.dim2() << '\n';
  for (std::size_t i = 0; i < t.dim0(); ++i) {
    os << "  ";
    for (std::size_t j = 0; j < t.dim1(); ++j) {
      if (j) os << "  ";
      for (std::size_t k = 0; k < t.dim2(); ++k) {
        if (k) os << ' ';
        os << t.at(i, j, k).to_string();
      }
    }
    os << '\n';
  }
}

inline void emit_subspace(std::ostringstream& os, const std::string& label, const Subspace& s) {
  os << label << "_dim: " << s.dim() << '\n';
  emit_matrix(os, label + "_basis", s.basis());
}

// field + algebra + endo + hlr blocks in the document format
inline void emit_field(std::ostringstream& os, const FieldDescriptor& f) {
  if (f.kind == FieldKind::rationals)
    os << "field rational\n";
  else
    os << "field prime " << f.characteristic << "\n";
}

inline void emit_algebra_block(std::ostringstream& os, const std::string& name,
                               const CommAlgebra& A) {
  os << "algebra " << name << "\n";
  os << "  dim " << A.dim << "\n";
  os << "  unit ";
  emit_vec(os, A.unit);
  os << "\n  table " << A.dim << ' ' << A.dim << ' ' << A.dim << "\n";
  for (std::size_t i = 0; i < A.dim; ++i) {
    os << "   ";
    for (std::size_t j = 0; j < A.dim; ++j) {
      os << ' ';
      for (std::size_t k = 0; k < A.dim; ++k) {
        if (k) os << ' ';
        os << A.structure_constants.at(i, j, k).to_string();
      }
    }
    os << "\n";
  }
  os << "end\n";
}

inline void emit_block_matrix(std::ostringstream& os, const std::string& key, const Matrix& m,
                              const std::string& indent = "  ") {
  os << indent << key << ' ' << m.rows() << ' ' << m.cols() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << indent << " ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      os << ' ' << m.at(i, j).to_string();
    }
    os << "\n";
  }
}

inline void emit_endo_block(std::ostringstream& os, const std::string& name,
                            const std::string& algebra, const AlgebraEndo& e) {
  os << "endo " << name << "\n  algebra " << algebra << "\n";
  emit_block_matrix(os, "matrix", e.matrix);
  os << "end\n";
}

inline void emit_block_tensor(std::ostringstream& os, const std::string& key, const Tensor3& t) {
  os << "  " << key << ' ' << t.dim0() << ' ' << t.dim1() << ' ' << t.dim2() << "\n";
  for (std::size_t i = 0; i < t.dim0(); ++i) {
    os << "   ";
    for (std::size_t j = 0; j < t.dim1(); ++j) {
      os << ' ';
      for (std::size_t k = 0; k < t.dim2(); ++k) {
        if (k) os << ' ';
        os << t.at(i, j, k).to_string();
      }
    }
    os << "\n";
  }
}

inline void emit_hlr_block(std::ostringstream& os, const std::string& name,
                           const std::string& algebra, const std::string& endo,
                           const HomLieRinehart& H) {
  os << "hlr " << name << "\n  algebra " << algebra << "\n  endo " << endo << "\n  dim "
     << H.L_dim << "\n";
  emit_block_tensor(os, "action", H.a_action);
  emit_block_tensor(os, "bracket", H.bracket_constants);
  emit_block_matrix(os, "alpha", H.alpha);
  os << "  anchor\n";
  for (const auto& m : H.anchor) emit_block_matrix(os, "", m, "  ");
  os << "end\n";
}

inline void emit_module_block(std::ostringstream& os, const std::string& name,
                              const std::string& hlr, const LeftModule& M) {
  os << "module " << name << "\n  hlr " << hlr << "\n  side left\n  dim " << M.M_dim << "\n";
  emit_block_tensor(os, "action", M.a_action);
  emit_block_tensor(os, "theta", M.theta);
  emit_block_matrix(os, "beta", M.beta);
  os << "end\n";
}

inline void emit_morphism_block(std::ostringstream& os, const std::string& name,
                                const std::string& src, const std::string& dst,
                                const HLRMorphism& m) {
  os << "morphism " << name << "\n  src " << src << "\n  dst " << dst << "\n";
  emit_block_matrix(os, "g", m.g);
  emit_block_matrix(os, "f", m.f);
  os << "end\n";
}

inline void emit_extension_block(std::ostringstream& os, const std::string& name,
                                 const std::string& ker, const std::string& mid,
                                 const std::string& base, const Matrix& i, const Matrix& sigma) {
  os << "extension " << name << "\n  ker " << ker << "\n  mid " << mid << "\n  base " << base
     << "\n";
  emit_block_matrix(os, "i", i);
  emit_block_matrix(os, "sigma", sigma);
  os << "end\n";
}

inline void emit_action_block(std::ostringstream& os, const std::string& name,
                              const std::string& acting, const std::string& on,
                              const Tensor3& theta) {
  os << "action " << name << "\n  acting " << acting << "\n  on " << on << "\n";
  emit_block_tensor(os, "theta", theta);
  os << "end\n";
}

inline void emit_derivation_block(std::ostringstream& os, const std::string& name,
                                  const std::string& hlr, const AlphaDerivation& d) {
  os << "derivation " << name << "\n  hlr " << hlr << "\n";
  emit_block_matrix(os, "d", d.D);
  emit_block_matrix(os, "sigma", d.sigma_D);
  os << "end\n";
}

}  // namespace hlr::io
