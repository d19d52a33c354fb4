// bv.hpp
//
// Consistent deformations in a finite field/antifield model. S_D = sum S_i t^i
// (i = 0..n) satisfies the master equation mod t^{n+1}. On
//   X0 = R[[t]],  X1 = R[1][[t]] t^{n+1}
// the maps
//   l1(a* t^k) = a t^k
//   l2(a)      = sum_i (S_i, a) t^i           (D = (S_D, .))
//   l2(a*)     = -sum_i (S_i, a)* t^i
//   l3(a)      = -1/2 sum_{n+1 <= i+j <= 2n} ((S_i, S_j), a)* t^{i+j}
// give S = l1 + l2 + l3 with S^2 = 0. R is truncated to monomials of degree
// <= cap and t-series to powers <= trunc; since every S_i has degree >= 2 the
// bracket never lowers degree, so both truncations are quotients.

#pragma once

#include "chainext/complexes.hpp"
#include "chainext/exactla.hpp"
#include "chainext/report.hpp"
#include "chainext/superalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainext::bv {

using superalg::GenSetPtr;
using superalg::Monomial;
using superalg::SuperPoly;

struct PairDecl {
  std::string field;
  std::string antifield;
  bool odd = false;  // parity of the field
  int ghost = 0;     // ghost number of the field
};

struct BVModel {
  GenSetPtr gens;
  std::vector<superalg::FieldPair> pairs;
  unsigned cap = 4;

  /// Fields in declaration order, then their antifields (opposite parity, gh = -gh - 1).
  static BVModel make(const std::vector<PairDecl>& decls, unsigned cap) {
    using superalg::GenSpec;
    using superalg::Kind;
    std::vector<GenSpec> specs;
    for (const auto& d : decls) specs.push_back({d.field, d.odd, d.ghost, 0, Kind::Field});
    for (const auto& d : decls) specs.push_back({d.antifield, !d.odd, -d.ghost - 1, 0, Kind::Antifield});
    BVModel m;
    m.gens = std::make_shared<const superalg::GenSet>(specs);
    for (std::size_t i = 0; i < decls.size(); ++i) m.pairs.push_back({i, decls.size() + i});
    m.cap = cap;
    return m;
  }

  [[nodiscard]] SuperPoly bracket(const SuperPoly& f, const SuperPoly& g) const {
    return superalg::antibracket(f, g, pairs);
  }
  [[nodiscard]] SuperPoly zero() const { return SuperPoly(gens); }
  [[nodiscard]] std::vector<Monomial> basis() const { return superalg::monomials_up_to(*gens, cap); }
};

class BVError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline void require_action_like(const SuperPoly& s, const std::string& what) {
  if (s.is_zero()) return;
  if (s.parity() != std::optional<bool>(false)) throw BVError(what + " must be even");
  if (s.ghost() != std::optional<int>(0)) throw BVError(what + " must have ghost number 0");
}

inline bool master_check(const BVModel& m, const SuperPoly& s0) {
  require_action_like(s0, "S0");
  return m.bracket(s0, s0).is_zero();
}

inline SuperPoly s0_differential(const BVModel& m, const SuperPoly& s0, const SuperPoly& a) { return m.bracket(s0, a); }

struct DeformationProblem {
  BVModel model;
  std::vector<SuperPoly> S;  // S_0..S_n

  [[nodiscard]] std::size_t order() const { return S.size() - 1; }

  /// sum_{i+j=m, 0<=i,j<=n} (S_i, S_j)
  [[nodiscard]] SuperPoly master_coefficient(std::size_t m) const {
    SuperPoly out = model.zero();
    for (std::size_t i = 0; i <= m && i <= order(); ++i)
      if (m - i <= order()) out += model.bracket(S[i], S[m - i]);
    return out;
  }
};

/// Checks parity, ghost number, minimal degree and the order-n master equation.
inline Report validate_problem(const DeformationProblem& p) {
  Report rep;
  if (p.S.empty()) throw BVError("deformation problem needs S0");
  for (std::size_t i = 0; i < p.S.size(); ++i) {
    const std::string name = "S" + std::to_string(i);
    require_action_like(p.S[i], name);
    const auto d = p.S[i].min_degree();
    if (d && *d < 2) throw BVError(name + " has a term of degree " + std::to_string(*d) + " (need >= 2)");
  }
  for (std::size_t m = 0; m <= p.order(); ++m) {
    const SuperPoly v = p.master_coefficient(m);
    rep.add("master equation at t^" + std::to_string(m), v.is_zero(), v.is_zero() ? "" : v.str());
  }
  return rep;
}

/// R_m = sum_{i+j=m, i,j>=1} (S_i, S_j)
inline SuperPoly obstruction_R(const DeformationProblem& p, std::size_t m) {
  SuperPoly out = p.model.zero();
  for (std::size_t i = 1; i < m; ++i)
    if (i <= p.order() && m - i <= p.order()) out += p.model.bracket(p.S[i], p.S[m - i]);
  return out;
}

/// First s0-cocycle among even ghost-0 polynomials of degree 2..cap that is independent of S0.
inline std::optional<SuperPoly> find_cocycle(const BVModel& m, const SuperPoly& s0) {
  std::vector<Monomial> cand = superalg::monomials_up_to(*m.gens, m.cap, [&](const Monomial& mono) {
    const SuperPoly p = SuperPoly::monomial(m.gens, mono);
    return superalg::mono_degree(mono) >= 2 && !p.mono_odd(mono) && p.mono_ghost(mono) == 0;
  });
  if (cand.empty()) return std::nullopt;
  std::map<Monomial, std::size_t, superalg::MonoLess> row;
  std::vector<SuperPoly> images;
  for (const auto& c : cand) {
    images.push_back(s0_differential(m, s0, SuperPoly::monomial(m.gens, c)));
    for (const auto& [mono, v] : images.back().terms()) row.emplace(mono, 0);
  }
  std::size_t r = 0;
  for (auto& [mono, idx] : row) idx = r++;
  RatMatrix mat(row.size(), cand.size());
  for (std::size_t c = 0; c < cand.size(); ++c)
    for (const auto& [mono, v] : images[c].terms()) mat(row.at(mono), c) = v;

  std::map<Monomial, std::size_t, superalg::MonoLess> col;
  for (std::size_t i = 0; i < cand.size(); ++i) col[cand[i]] = i;
  Vec s0v(cand.size());
  for (const auto& [mono, v] : s0.terms()) {
    auto it = col.find(mono);
    if (it == col.end()) throw BVError("S0 has a term outside the cocycle search space");
    s0v[it->second] = v;
  }
  const std::size_t base = chainext::is_zero(s0v) ? 0 : 1;
  for (const auto& k : kernel_basis(mat)) {
    std::vector<Vec> span{k};
    if (base) span.push_back(s0v);
    if (rank(RatMatrix::from_columns(span, cand.size())) == span.size()) {
      SuperPoly out = m.zero();
      for (std::size_t i = 0; i < cand.size(); ++i)
        if (!k[i].is_zero()) out.add_term(cand[i], k[i]);
      return out;
    }
  }
  return std::nullopt;
}

/// A truncated t-series with polynomial coefficients.
using Series = std::vector<SuperPoly>;

/// An element of X0 (+) X1; the X1 part lists the unstarred partners a of a* t^k.
struct Elem {
  Series x0;
  Series x1;

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : x0)
      if (!c.is_zero()) return false;
    for (const auto& c : x1)
      if (!c.is_zero()) return false;
    return true;
  }
  friend bool operator==(const Elem& a, const Elem& b) { return a.x0 == b.x0 && a.x1 == b.x1; }
};

class EscapingMonomial : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DeformationMaps {
public:
  DeformationMaps(DeformationProblem p, std::size_t trunc) : p_(std::move(p)), trunc_(trunc) {
    const Report v = validate_problem(p_);
    if (const Check* bad = v.first_failure()) throw BVError("invalid deformation problem: " + bad->name + " = " + bad->detail);
    const std::size_t n = p_.order();
    if (trunc_ < 2 * n) throw BVError("truncation " + std::to_string(trunc) + " cuts the t^" + std::to_string(2 * n) + " terms of l3");
    if (trunc_ < n + 1) throw BVError("truncation leaves X1 empty");
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) q_[{i, j}] = p_.model.bracket(p_.S[i], p_.S[j]);
  }

  [[nodiscard]] const DeformationProblem& problem() const { return p_; }
  [[nodiscard]] std::size_t trunc() const { return trunc_; }
  [[nodiscard]] std::size_t n() const { return p_.order(); }
  [[nodiscard]] std::size_t x1_start() const { return n() + 1; }
  [[nodiscard]] const BVModel& model() const { return p_.model; }

  [[nodiscard]] Elem zero() const {
    return {Series(trunc_ + 1, model().zero()), Series(trunc_ + 1, model().zero())};
  }
  [[nodiscard]] Elem unit(bool starred, const Monomial& m, std::size_t k) const {
    Elem e = zero();
    (starred ? e.x1 : e.x0).at(k) = SuperPoly::monomial(model().gens, m);
    return e;
  }

  /// (f, a) truncated to the degree cap, refusing degree-lowering terms.
  [[nodiscard]] SuperPoly bracket_capped(const SuperPoly& f, const SuperPoly& a) const {
    const SuperPoly v = model().bracket(f, a);
    if (!v.is_zero() && !a.is_zero()) {
      const unsigned lo = *a.min_degree();
      if (*v.min_degree() < lo)
        throw EscapingMonomial("bracket with " + f.str() + " lowers the degree of " + a.str());
    }
    return v.truncate(model().cap);
  }

  /// D applied to a series: sum_i (S_i, c_k) t^{i+k}.
  [[nodiscard]] Series apply_d(const Series& x) const {
    Series out(trunc_ + 1, model().zero());
    for (std::size_t k = 0; k <= trunc_; ++k) {
      if (x[k].is_zero()) continue;
      for (std::size_t i = 0; i <= n() && i + k <= trunc_; ++i) out[i + k] += bracket_capped(p_.S[i], x[k]);
    }
    return out;
  }

  [[nodiscard]] Elem l1(const Elem& e) const {
    Elem out = zero();
    for (std::size_t k = x1_start(); k <= trunc_; ++k) out.x0[k] = e.x1[k];
    return out;
  }
  [[nodiscard]] Elem l2(const Elem& e) const {
    Elem out = zero();
    out.x0 = apply_d(e.x0);
    const Series d1 = apply_d(e.x1);
    for (std::size_t k = 0; k <= trunc_; ++k) out.x1[k] = -d1[k];
    return out;
  }
  [[nodiscard]] Elem l3(const Elem& e) const {
    Elem out = zero();
    const std::size_t nn = n();
    for (std::size_t k = 0; k <= trunc_; ++k) {
      if (e.x0[k].is_zero()) continue;
      for (std::size_t i = 0; i <= nn; ++i)
        for (std::size_t j = 0; j <= nn; ++j) {
          const std::size_t pw = i + j + k;
          if (i + j < nn + 1 || pw > trunc_) continue;
          out.x1[pw] -= Rat(1, 2) * bracket_capped(q_.at({i, j}), e.x0[k]);
        }
    }
    return out;
  }
  [[nodiscard]] Elem total(const Elem& e) const {
    Elem a = l1(e), b = l2(e), c = l3(e);
    for (std::size_t k = 0; k <= trunc_; ++k) {
      a.x0[k] += b.x0[k] + c.x0[k];
      a.x1[k] += b.x1[k] + c.x1[k];
    }
    return a;
  }

  /// h(y) = -(y restricted to t >= n+1)*, h = 0 on X1.
  [[nodiscard]] Elem h(const Elem& e) const {
    Elem out = zero();
    for (std::size_t k = x1_start(); k <= trunc_; ++k) out.x1[k] = -e.x0[k];
    return out;
  }

private:
  DeformationProblem p_;
  std::size_t trunc_;
  std::map<std::pair<std::size_t, std::size_t>, SuperPoly> q_;
};

inline DeformationMaps deformation_maps(const DeformationProblem& p, std::size_t trunc) { return DeformationMaps(p, trunc); }

inline std::string elem_str(const DeformationMaps& t, const Elem& e) {
  std::string out;
  for (int starred = 0; starred <= 1; ++starred)
    for (std::size_t k = 0; k <= t.trunc(); ++k) {
      const SuperPoly& c = starred ? e.x1[k] : e.x0[k];
      if (c.is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")" + (starred ? "*" : "") + " t^" + std::to_string(k);
    }
  return out.empty() ? "0" : out;
}

inline Report verify_deformation_maps(const DeformationMaps& t) {
  Report rep;
  const BVModel& m = t.model();
  const auto basis = m.basis();
  const std::size_t n = t.n();
  std::string w_s0, w_s1, w_rec, w_gh, w_ideal, w_sq;
  std::size_t checked = 0;

  // R_{n+1} as the t^{n+1} coefficient of l3.
  const SuperPoly r = obstruction_R(t.problem(), n + 1);
  std::string w_r;

  // S_D truncated as a series, for the displayed identity (S_D,(S_D,x)) = 1/2 ((S_D,S_D),x).
  Series sd(t.trunc() + 1, m.zero());
  for (std::size_t i = 0; i <= n && i <= t.trunc(); ++i) sd[i] = t.problem().S[i];
  Series sdsd(t.trunc() + 1, m.zero());
  for (std::size_t i = 0; i <= t.trunc(); ++i)
    for (std::size_t j = 0; i + j <= t.trunc(); ++j)
      if (!sd[i].is_zero() && !sd[j].is_zero()) sdsd[i + j] += m.bracket(sd[i], sd[j]);

  for (const auto& mono : basis) {
    const SuperPoly a = SuperPoly::monomial(m.gens, mono);
    for (std::size_t k = 0; k <= t.trunc(); ++k) {
      const Elem x = t.unit(false, mono, k);
      ++checked;
      if (w_s0.empty() && !t.total(t.total(x)).is_zero()) w_s0 = a.str() + " t^" + std::to_string(k);
      // l3 against the recursion h D D.
      const Elem dd = t.l2(t.l2(x));
      if (w_rec.empty() && !(t.l3(x) == t.h(dd))) w_rec = a.str() + " t^" + std::to_string(k);
      // D^2 lands in t^{n+1} X0.
      for (std::size_t q = 0; q < t.x1_start() && w_ideal.empty(); ++q)
        if (!dd.x0[q].is_zero()) w_ideal = "D^2(" + a.str() + " t^" + std::to_string(k) + ")";
      if (k >= t.x1_start()) {
        const Elem y = t.unit(true, mono, k);
        ++checked;
        if (w_s1.empty() && !t.total(t.total(y)).is_zero()) w_s1 = a.str() + "* t^" + std::to_string(k);
      }
    }
    // ghost number +1 for each bracket with S_i
    for (std::size_t i = 0; i <= n && w_gh.empty(); ++i) {
      const SuperPoly v = m.bracket(t.problem().S[i], a);
      const auto g = v.ghost();
      if (!v.is_zero() && (!g || *g != *a.ghost() + 1)) w_gh = "(S" + std::to_string(i) + ", " + a.str() + ")";
    }
    if (w_r.empty() && n + 1 <= t.trunc()) {
      const Elem l3a = t.l3(t.unit(false, mono, 0));
      const SuperPoly want = (-Rat(1, 2) * m.bracket(r, a)).truncate(m.cap);
      if (!(l3a.x1[n + 1] == want)) w_r = a.str();
    }
    if (w_sq.empty()) {
      Series once(t.trunc() + 1, m.zero()), twice(t.trunc() + 1, m.zero()), rhs(t.trunc() + 1, m.zero());
      for (std::size_t i = 0; i <= t.trunc(); ++i)
        if (!sd[i].is_zero()) once[i] = m.bracket(sd[i], a);
      for (std::size_t i = 0; i <= t.trunc(); ++i)
        for (std::size_t j = 0; i + j <= t.trunc(); ++j)
          if (!sd[i].is_zero() && !once[j].is_zero()) twice[i + j] += m.bracket(sd[i], once[j]);
      for (std::size_t i = 0; i <= t.trunc(); ++i)
        if (!sdsd[i].is_zero()) rhs[i] = Rat(1, 2) * m.bracket(sdsd[i], a);
      if (!(twice == rhs)) w_sq = a.str();
    }
  }
  rep.add("S^2 = 0 on a t^k", w_s0.empty(), w_s0.empty() ? std::to_string(checked) + " elements" : w_s0);
  rep.add("S^2 = 0 on a* t^k", w_s1.empty(), w_s1);
  rep.add("l3 = h D D", w_rec.empty(), w_rec);
  rep.add("D^2(X0) in t^{n+1} X0", w_ideal.empty(), w_ideal);
  rep.add("l3 t^{n+1} coefficient = -1/2 (R_{n+1}, .)*", w_r.empty(), w_r.empty() ? "R = " + r.str() : w_r);
  rep.add("gh (S_i, a) = gh a + 1", w_gh.empty(), w_gh);
  rep.add("(S_D,(S_D,x)) = 1/2 ((S_D,S_D),x)", w_sq.empty(), w_sq);
  if (r.is_zero()) {
    bool none = true;
    for (const auto& mono : basis) none = none && t.l3(t.unit(false, mono, 0)).x1[n + 1].is_zero();
    rep.add("R_{n+1} = 0: l3 has no t^{n+1} term", none);
  } else {
    bool some = false;
    for (const auto& mono : basis) some = some || !t.l3(t.unit(false, mono, 0)).x1[n + 1].is_zero();
    rep.add("R_{n+1} != 0: l3 is nonzero", some);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Export to the generic engine: X0 basis (monomial, k) for k <= trunc, X1
// basis (monomial*, k) for k >= n+1, s = h, F = X0 / t^{n+1} X0.

struct BvExport {
  complexes::HomotopyData h;
  RatMatrix l2_0;
  RatMatrix d_f;
  std::vector<Monomial> basis;
  std::size_t trunc = 0, start = 0;

  [[nodiscard]] std::size_t x0(std::size_t mi, std::size_t k) const { return k * basis.size() + mi; }
  [[nodiscard]] std::size_t x1(std::size_t mi, std::size_t k) const { return (k - start) * basis.size() + mi; }
};

inline BvExport export_to_complexes(const DeformationMaps& t) {
  BvExport ex;
  ex.basis = t.model().basis();
  ex.trunc = t.trunc();
  ex.start = t.x1_start();
  const std::size_t nb = ex.basis.size();
  const std::size_t n0 = nb * (t.trunc() + 1), n1 = nb * (t.trunc() + 1 - ex.start);
  std::map<Monomial, std::size_t, superalg::MonoLess> idx;
  for (std::size_t i = 0; i < nb; ++i) idx[ex.basis[i]] = i;

  complexes::GradedSpace sp{{n0, n1}};
  complexes::GradedMap l1(sp, -1), sm(sp, 1);
  RatMatrix d(n0, n0);
  for (std::size_t mi = 0; mi < nb; ++mi)
    for (std::size_t k = 0; k <= t.trunc(); ++k) {
      if (k >= ex.start) {
        l1.at(1)(ex.x0(mi, k), ex.x1(mi, k)) = Rat(1);
        sm.at(0)(ex.x1(mi, k), ex.x0(mi, k)) = Rat(-1);
      }
      const Elem img = t.l2(t.unit(false, ex.basis[mi], k));
      for (std::size_t q = 0; q <= t.trunc(); ++q)
        for (const auto& [mono, v] : img.x0[q].terms()) d(ex.x0(idx.at(mono), q), ex.x0(mi, k)) = v;
    }
  const std::size_t f = nb * ex.start;
  RatMatrix eta(f, n0), lambda(n0, f);
  for (std::size_t i = 0; i < f; ++i) {
    eta(i, i) = Rat(1);
    lambda(i, i) = Rat(1);
  }
  ex.h = complexes::HomotopyData{sp, l1, f, eta, lambda, sm};
  ex.l2_0 = d;
  ex.d_f = eta * d * lambda;
  return ex;
}

inline Report cross_check_engine(const DeformationMaps& t) {
  Report rep;
  const BvExport ex = export_to_complexes(t);
  rep.merge(complexes::verify_homotopy(ex.h), "export: ");
  rep.merge(complexes::check_l2_conditions(ex.h, ex.l2_0, ex.d_f), "export: ");
  if (!rep.ok()) return rep;
  const complexes::ChainExtension ce = complexes::chain_extend(ex.h, ex.l2_0);
  const Report nil = complexes::verify_nilpotent(ce);
  rep.add("engine: all relations hold", nil.ok(), nil.ok() ? "" : nil.first_failure()->name);
  std::map<Monomial, std::size_t, superalg::MonoLess> idx;
  for (std::size_t i = 0; i < ex.basis.size(); ++i) idx[ex.basis[i]] = i;
  std::string w2, w3;
  for (std::size_t mi = 0; mi < ex.basis.size(); ++mi)
    for (std::size_t k = 0; k <= t.trunc(); ++k) {
      const Elem l3 = t.l3(t.unit(false, ex.basis[mi], k));
      RatMatrix col(ce.l3.at(0).rows(), 1);
      for (std::size_t q = ex.start; q <= t.trunc(); ++q)
        for (const auto& [mono, v] : l3.x1[q].terms()) col(ex.x1(idx.at(mono), q), 0) = v;
      for (std::size_t r = 0; r < col.rows() && w3.empty(); ++r)
        if (col(r, 0) != ce.l3.at(0)(r, ex.x0(mi, k))) w3 = ex.basis.empty() ? "" : SuperPoly::monomial(t.model().gens, ex.basis[mi]).str();
      if (k < ex.start) continue;
      const Elem l2 = t.l2(t.unit(true, ex.basis[mi], k));
      RatMatrix col2(ce.l2.at(1).rows(), 1);
      for (std::size_t q = ex.start; q <= t.trunc(); ++q)
        for (const auto& [mono, v] : l2.x1[q].terms()) col2(ex.x1(idx.at(mono), q), 0) = v;
      for (std::size_t r = 0; r < col2.rows() && w2.empty(); ++r)
        if (col2(r, 0) != ce.l2.at(1)(r, ex.x1(mi, k))) w2 = SuperPoly::monomial(t.model().gens, ex.basis[mi]).str() + "*";
    }
  rep.add("engine l2 on X1 = closed form", w2.empty(), w2);
  rep.add("engine l3 on X0 = closed form", w3.empty(), w3);
  const std::size_t lhs = complexes::total_homology_dims(ce);
  const std::size_t rhs = complexes::homology_dim(ex.d_f);
  rep.add("H(X,l) = H(F,D_F)", lhs == rhs, std::to_string(lhs) + " vs " + std::to_string(rhs));
  return rep;
}

}  // namespace chainext::bv
