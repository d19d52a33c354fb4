// io.hpp
//
// Line-oriented input files shared by all commands. '#' starts a comment,
// blank lines are ignored, rationals are written p/q. A line of the form
// "head tokens : polynomial" carries a polynomial literal after the colon.
// Indices in files are 1-based.

#pragma once

#include "chainext/brst.hpp"
#include "chainext/bv.hpp"
#include "chainext/complexes.hpp"
#include "chainext/lie.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainext::io {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& source, std::size_t line, const std::string& msg)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct Line {
  std::size_t number = 0;
  std::vector<std::string> words;  // before ':'
  std::optional<std::string> tail; // after ':'
};

/// Splits text into non-empty logical lines.
inline std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    Line l;
    l.number = n;
    std::string head = raw;
    if (auto c = raw.find(':'); c != std::string::npos) {
      head = raw.substr(0, c);
      l.tail = raw.substr(c + 1);
    }
    std::istringstream ws(head);
    for (std::string w; ws >> w;) l.words.push_back(w);
    if (!l.words.empty() || (l.tail && l.tail->find_first_not_of(" \t\r") != std::string::npos)) out.push_back(l);
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

namespace detail {

class Reader {
public:
  Reader(std::string source, const Line& l) : source_(std::move(source)), l_(l) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(source_, l_.number, msg); }

  void arity(std::size_t n) const {
    if (l_.words.size() != n)
      fail("'" + l_.words[0] + "' expects " + std::to_string(n - 1) + " argument(s), got " +
           std::to_string(l_.words.size() - 1));
  }
  void min_arity(std::size_t n) const {
    if (l_.words.size() < n) fail("'" + l_.words[0] + "' expects at least " + std::to_string(n - 1) + " argument(s)");
  }
  [[nodiscard]] const std::string& word(std::size_t i) const { return l_.words.at(i); }

  [[nodiscard]] std::size_t count(std::size_t i, std::size_t lo = 0) const {
    const std::string& w = word(i);
    if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos) fail("expected a count, got '" + w + "'");
    std::size_t v = 0;
    try {
      v = std::stoul(w);
    } catch (const std::exception&) {
      fail("count out of range: '" + w + "'");
    }
    if (v < lo) fail("expected a value >= " + std::to_string(lo) + ", got " + w);
    return v;
  }
  /// 1-based index in [1, n], returned 0-based.
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t n) const {
    const std::size_t v = count(i, 1);
    if (v > n) fail("index " + word(i) + " out of range 1.." + std::to_string(n));
    return v - 1;
  }
  [[nodiscard]] Rat rational(std::size_t i) const {
    try {
      return Rat::parse(word(i));
    } catch (const std::exception&) {
      fail("bad rational '" + word(i) + "'");
    }
  }
  [[nodiscard]] const std::string& tail() const {
    if (!l_.tail) fail("'" + l_.words[0] + "' needs ': <polynomial>'");
    return *l_.tail;
  }
  [[nodiscard]] superalg::SuperPoly poly(const superalg::GenSetPtr& g) const {
    try {
      return superalg::parse_poly(g, tail());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  void no_tail() const {
    if (l_.tail) fail("unexpected ':' after '" + l_.words[0] + "'");
  }

private:
  std::string source_;
  const Line& l_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Lie algebras
//
//   name so3
//   dim 3
//   names X Y Z               optional
//   bracket 1 2 3 1           [e1, e2] gets 1 * e3
//   alpha1 1 2 3 1            alpha1(e1, e2) gets 1 * e3, optional

struct LieFile {
  std::string name;
  lie::LieAlgebra algebra;
  std::optional<lie::Cochain> alpha1;
};

inline LieFile parse_lie(const std::string& text, const std::string& source = "<lie>") {
  LieFile out;
  bool have_dim = false;
  for (const auto& l : tokenize(text)) {
    detail::Reader r(source, l);
    if (l.words.empty()) r.fail("missing keyword");
    const std::string& k = l.words[0];
    r.no_tail();
    if (k == "name") {
      r.arity(2);
      out.name = r.word(1);
    } else if (k == "dim") {
      r.arity(2);
      if (have_dim) r.fail("duplicate 'dim'");
      out.algebra = lie::LieAlgebra(r.count(1, 1));
      have_dim = true;
    } else if (!have_dim) {
      r.fail("'dim' must come before '" + k + "'");
    } else if (k == "names") {
      r.arity(out.algebra.dim + 1);
      for (std::size_t i = 0; i < out.algebra.dim; ++i) out.algebra.names[i] = r.word(i + 1);
    } else if (k == "bracket" || k == "alpha1") {
      r.arity(5);
      const std::size_t n = out.algebra.dim;
      const std::size_t i = r.index(1, n), j = r.index(2, n), c = r.index(3, n);
      if (i == j) r.fail("repeated index in '" + k + "'");
      lie::Cochain& target = k == "bracket" ? out.algebra.bracket
                                            : (out.alpha1 ? *out.alpha1 : out.alpha1.emplace(n, 2));
      target.add_entry({i, j}, c, r.rational(4));
    } else {
      r.fail("unknown keyword '" + k + "'");
    }
  }
  if (!have_dim) throw ParseError(source, 0, "missing 'dim'");
  return out;
}

/// A file holding only alpha1 lines (and optionally dim, checked against n).
inline lie::Cochain parse_cochain(const std::string& text, std::size_t n, const std::string& source = "<alpha1>") {
  lie::Cochain out(n, 2);
  for (const auto& l : tokenize(text)) {
    detail::Reader r(source, l);
    r.no_tail();
    const std::string& k = l.words.at(0);
    if (k == "dim") {
      r.arity(2);
      if (r.count(1) != n) r.fail("dimension " + r.word(1) + " does not match the algebra (" + std::to_string(n) + ")");
    } else if (k == "alpha1") {
      r.arity(5);
      const std::size_t i = r.index(1, n), j = r.index(2, n), c = r.index(3, n);
      if (i == j) r.fail("repeated index in 'alpha1'");
      out.add_entry({i, j}, c, r.rational(4));
    } else if (k != "name") {
      r.fail("unknown keyword '" + k + "' (expected alpha1)");
    }
  }
  return out;
}

inline std::string write_lie(const LieFile& f) {
  std::ostringstream o;
  if (!f.name.empty()) o << "name " << f.name << "\n";
  o << "dim " << f.algebra.dim << "\nnames";
  for (const auto& n : f.algebra.names) o << " " << n;
  o << "\n";
  auto dump = [&](const char* key, const lie::Cochain& c) {
    for (std::size_t t = 0; t < c.tuples().size(); ++t)
      for (std::size_t k = 0; k < c.dim(); ++k)
        if (!c.stored(t)[k].is_zero())
          o << key << " " << c.tuples()[t][0] + 1 << " " << c.tuples()[t][1] + 1 << " " << k + 1 << " "
            << c.stored(t)[k].str() << "\n";
  };
  dump("bracket", f.algebra.bracket);
  if (f.alpha1) dump("alpha1", *f.alpha1);
  return o.str();
}

// ---------------------------------------------------------------------------
// Resolutions with homotopy data
//
//   name split_exact
//   degrees 2 1              dims of X_0, X_1, ...
//   f 1                      dim F
//   matrix l1 1 1 2          name, source degree, rows, cols; then the rows
//   1 0
//   matrix s 0 1 2           s from X_0 to X_1
//   matrix eta 0 1 2         F <- X_0
//   matrix lambda 0 2 1      X_0 <- F
//   matrix l2 0 2 2          l2 on X_0
//   matrix dF 0 1 1          optional D_F
//
// Blocks that are not listed are zero.

struct ComplexFile {
  std::string name;
  complexes::HomotopyData h;
  RatMatrix l2_0;
  std::optional<RatMatrix> d_f;
};

inline ComplexFile parse_complex(const std::string& text, const std::string& source = "<complex>") {
  const auto lines = tokenize(text);
  ComplexFile out;
  std::optional<std::vector<std::size_t>> dims;
  std::optional<std::size_t> f;
  struct Pending {
    std::string name;
    int degree;
    RatMatrix m;
    std::size_t line;
  };
  std::vector<Pending> mats;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    detail::Reader r(source, lines[li]);
    r.no_tail();
    const std::string& k = lines[li].words.at(0);
    if (k == "name") {
      r.arity(2);
      out.name = r.word(1);
    } else if (k == "degrees") {
      r.min_arity(2);
      dims.emplace();
      for (std::size_t i = 1; i < lines[li].words.size(); ++i) dims->push_back(r.count(i));
    } else if (k == "f") {
      r.arity(2);
      f = r.count(1);
    } else if (k == "matrix") {
      r.arity(5);
      Pending p{r.word(1), static_cast<int>(r.count(2)), RatMatrix(r.count(3), r.count(4)), lines[li].number};
      for (std::size_t row = 0; row < p.m.rows(); ++row) {
        if (++li >= lines.size()) throw ParseError(source, lines.back().number, "matrix " + p.name + " is missing rows");
        detail::Reader rr(source, lines[li]);
        rr.no_tail();
        rr.arity(p.m.cols());
        for (std::size_t c = 0; c < p.m.cols(); ++c) p.m(row, c) = rr.rational(c);
      }
      mats.push_back(std::move(p));
    } else {
      r.fail("unknown keyword '" + k + "'");
    }
  }
  if (!dims) throw ParseError(source, 0, "missing 'degrees'");
  if (!f) throw ParseError(source, 0, "missing 'f'");
  const complexes::GradedSpace sp{*dims};
  out.h = complexes::HomotopyData{sp, complexes::GradedMap(sp, -1), *f, RatMatrix(*f, sp.dim(0)),
                                  RatMatrix(sp.dim(0), *f), complexes::GradedMap(sp, 1)};
  out.l2_0 = RatMatrix(sp.dim(0), sp.dim(0));
  for (auto& p : mats) {
    auto place = [&](RatMatrix& target, const std::string& what) {
      if (target.rows() != p.m.rows() || target.cols() != p.m.cols())
        throw ParseError(source, p.line, what + " must be " + target.shape() + ", got " + p.m.shape());
      target = p.m;
    };
    auto need_deg0 = [&] {
      if (p.degree != 0) throw ParseError(source, p.line, p.name + " lives in degree 0");
    };
    if (p.degree > sp.top()) throw ParseError(source, p.line, "degree " + std::to_string(p.degree) + " exceeds top degree");
    if (p.name == "l1") {
      if (p.degree == 0) throw ParseError(source, p.line, "l1 starts in degree 1");
      place(out.h.l1.at(p.degree), "l1 block " + std::to_string(p.degree));
    } else if (p.name == "s") {
      place(out.h.s.at(p.degree), "s block " + std::to_string(p.degree));
    } else if (p.name == "eta") {
      need_deg0();
      place(out.h.eta, "eta");
    } else if (p.name == "lambda") {
      need_deg0();
      place(out.h.lambda, "lambda");
    } else if (p.name == "l2") {
      need_deg0();
      place(out.l2_0, "l2");
    } else if (p.name == "dF") {
      need_deg0();
      out.d_f = RatMatrix(*f, *f);
      place(*out.d_f, "dF");
    } else {
      throw ParseError(source, p.line, "unknown matrix '" + p.name + "'");
    }
  }
  return out;
}

inline std::string write_matrix(const std::string& name, int degree, const RatMatrix& m) {
  std::ostringstream o;
  o << "matrix " << name << " " << degree << " " << m.rows() << " " << m.cols() << "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) o << (c ? " " : "") << m(r, c).str();
    o << "\n";
  }
  return o.str();
}

inline std::string write_complex(const ComplexFile& f) {
  std::ostringstream o;
  if (!f.name.empty()) o << "name " << f.name << "\n";
  o << "degrees";
  for (auto d : f.h.space.dims) o << " " << d;
  o << "\nf " << f.h.f_dim << "\n";
  for (int p = 1; p <= f.h.space.top(); ++p) o << write_matrix("l1", p, f.h.l1.at(p));
  for (int p = 0; p <= f.h.space.top(); ++p) o << write_matrix("s", p, f.h.s.at(p));
  o << write_matrix("eta", 0, f.h.eta) << write_matrix("lambda", 0, f.h.lambda) << write_matrix("l2", 0, f.l2_0);
  if (f.d_f) o << write_matrix("dF", 0, *f.d_f);
  return o.str();
}

// ---------------------------------------------------------------------------
// Constraint systems
//
//   coords x y               even phase-space coordinates (may be empty)
//   constraints 2            G1..Gn, with P1..Pn and eta1..etan created alongside
//   poisson x G2 : x         [x, G2] = x
//   structure 1 2 1 : x      C^1_{12} = x
//   cap 4                    optional

struct BrstFile {
  std::string name;
  brst::ConstraintSystem system;
  std::optional<unsigned> cap;
};

inline BrstFile parse_brst(const std::string& text, const std::string& source = "<brst>") {
  BrstFile out;
  std::vector<std::string> coords;
  std::optional<std::size_t> n;
  bool built = false;
  auto build = [&](const detail::Reader& r) {
    if (built) return;
    if (!n) r.fail("'constraints' must come before brackets and structure functions");
    out.system = brst::ConstraintSystem::make(coords, *n);
    built = true;
  };
  for (const auto& l : tokenize(text)) {
    detail::Reader r(source, l);
    if (l.words.empty()) r.fail("missing keyword");
    const std::string& k = l.words[0];
    if (k == "name") {
      r.no_tail();
      r.arity(2);
      out.name = r.word(1);
    } else if (k == "coords") {
      r.no_tail();
      if (built || n) r.fail("'coords' must come first");
      coords.assign(l.words.begin() + 1, l.words.end());
    } else if (k == "constraints") {
      r.no_tail();
      r.arity(2);
      if (n) r.fail("duplicate 'constraints'");
      n = r.count(1, 1);
    } else if (k == "cap") {
      r.no_tail();
      r.arity(2);
      out.cap = static_cast<unsigned>(r.count(1, 1));
    } else if (k == "poisson") {
      r.arity(3);
      build(r);
      const auto u = out.system.gens->find(r.word(1)), v = out.system.gens->find(r.word(2));
      if (!u || !v) r.fail("unknown generator in 'poisson'");
      try {
        out.system.table.set(*u, *v, r.poly(out.system.gens));
      } catch (const std::invalid_argument& e) {
        r.fail(e.what());
      }
    } else if (k == "structure") {
      r.arity(4);
      build(r);
      const std::size_t m = out.system.n();
      const std::size_t a = r.index(1, m), b = r.index(2, m), c = r.index(3, m);
      try {
        out.system.set_structure(a, b, c, r.poly(out.system.gens));
      } catch (const std::invalid_argument& e) {
        r.fail(e.what());
      }
    } else {
      r.fail("unknown keyword '" + k + "'");
    }
  }
  if (!n) throw ParseError(source, 0, "missing 'constraints'");
  if (!built) out.system = brst::ConstraintSystem::make(coords, *n);
  return out;
}

// ---------------------------------------------------------------------------
// Field/antifield models
//
//   pair phi phistar even 0  field, antifield, parity of the field, ghost number
//   S 0 : phistar*C
//   S 1 auto                 first s0-cocycle independent of S0
//   cap 4                    optional
//   trunc 4                  optional

struct BvFile {
  std::string name;
  bv::DeformationProblem problem;
  std::optional<unsigned> cap;
  std::optional<std::size_t> trunc;
  std::vector<std::size_t> auto_orders;  // orders filled by cocycle search
};

inline BvFile parse_bv(const std::string& text, std::optional<unsigned> cap_override = std::nullopt,
                       const std::string& source = "<bv>") {
  const auto lines = tokenize(text);
  BvFile out;
  std::vector<bv::PairDecl> decls;
  // First pass: declarations and settings; S lines need the generator set.
  for (const auto& l : lines) {
    detail::Reader r(source, l);
    if (l.words.empty()) r.fail("missing keyword");
    const std::string& k = l.words[0];
    if (k == "pair") {
      r.no_tail();
      r.arity(5);
      if (r.word(3) != "even" && r.word(3) != "odd") r.fail("parity must be 'even' or 'odd'");
      int gh = 0;
      try {
        std::size_t used = 0;
        gh = std::stoi(r.word(4), &used);
        if (used != r.word(4).size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        r.fail("bad ghost number '" + r.word(4) + "'");
      }
      decls.push_back({r.word(1), r.word(2), r.word(3) == "odd", gh});
    } else if (k == "cap") {
      r.no_tail();
      r.arity(2);
      out.cap = static_cast<unsigned>(r.count(1, 1));
    } else if (k == "trunc") {
      r.no_tail();
      r.arity(2);
      out.trunc = r.count(1, 1);
    } else if (k == "name") {
      r.no_tail();
      r.arity(2);
      out.name = r.word(1);
    } else if (k != "S") {
      r.fail("unknown keyword '" + k + "'");
    }
  }
  if (decls.empty()) throw ParseError(source, 0, "no 'pair' declarations");
  try {
    out.problem.model = bv::BVModel::make(decls, cap_override.value_or(out.cap.value_or(6)));
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, e.what());
  }
  const auto& m = out.problem.model;
  std::vector<std::optional<superalg::SuperPoly>> s;
  std::vector<std::size_t> where;
  for (const auto& l : lines) {
    if (l.words[0] != "S") continue;
    detail::Reader r(source, l);
    const std::size_t i = r.count(1);
    if (s.size() <= i) {
      s.resize(i + 1);
      where.resize(i + 1);
    }
    if (s[i]) r.fail("duplicate S " + std::to_string(i));
    where[i] = l.number;
    if (l.words.size() == 3 && l.words[2] == "auto") {
      r.no_tail();
      if (i != 1) r.fail("'auto' is only supported for S 1");
      s[i] = m.zero();  // placeholder
      out.auto_orders.push_back(i);
    } else {
      r.arity(2);
      s[i] = r.poly(m.gens);
    }
  }
  if (s.empty() || !s[0]) throw ParseError(source, 0, "missing 'S 0'");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!s[i]) throw ParseError(source, 0, "missing 'S " + std::to_string(i) + "'");
  for (std::size_t i = 0; i < s.size(); ++i) out.problem.S.push_back(*s[i]);
  for (auto i : out.auto_orders) {
    auto c = bv::find_cocycle(m, out.problem.S[0]);
    if (!c) throw ParseError(source, where[i], "no s0-cocycle independent of S0 up to degree " + std::to_string(m.cap));
    out.problem.S[i] = *c;
  }
  return out;
}

}  // namespace chainext::io
