// brst.hpp
//
// Hamiltonian BRST in a polynomial chart. Coordinates x_i and constraints G_a
// are independent even generators with a declared Poisson table; ghosts eta^a
// and antighosts P_a are odd. Normal order is x, G, P, eta. The resolution
// degree of a monomial is its number of P factors.
//
//   delta P_a = -G_a                          (Koszul-Tate, odd right derivation)
//   d x = [x, G_a] eta^a,  d G_c = [G_c, G_a] eta^a,
//   d eta^a = 1/2 C^a_{cb} eta^b eta^c,  d P_a = 0
//   sigma F = -sum_a dR F/dG_a . P_a,  delta sigma + sigma delta = Nbar
//   s = sigma psi, psi = -1/k on monomials with k factors of P or G.
//
// With these signs l1 s + s l1 = lambda eta - 1 in every degree, which is the
// convention of the generic engine, so s is exported unchanged.

#pragma once

#include "chainext/complexes.hpp"
#include "chainext/report.hpp"
#include "chainext/superalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainext::brst {

using superalg::GenSetPtr;
using superalg::Monomial;
using superalg::SuperPoly;

struct ConstraintSystem {
  GenSetPtr gens;
  std::vector<std::size_t> x, G, P, eta;
  superalg::PoissonTable table{nullptr};
  // C[c][a][b] = C^c_{ab}
  std::vector<std::vector<std::vector<SuperPoly>>> C;

  [[nodiscard]] std::size_t n() const { return G.size(); }
  [[nodiscard]] SuperPoly gen(std::size_t i) const { return SuperPoly::generator(gens, i); }
  [[nodiscard]] SuperPoly zero() const { return SuperPoly(gens); }

  /// Builds the generator set x..., G1..Gn, P1..Pn, eta1..etan.
  static ConstraintSystem make(const std::vector<std::string>& coords, std::size_t n) {
    using superalg::GenSpec;
    using superalg::Kind;
    std::vector<GenSpec> specs;
    for (const auto& c : coords) specs.push_back({c, false, 0, 0, Kind::Coordinate});
    for (std::size_t a = 1; a <= n; ++a) specs.push_back({"G" + std::to_string(a), false, 0, 0, Kind::Constraint});
    for (std::size_t a = 1; a <= n; ++a) specs.push_back({"P" + std::to_string(a), true, -1, 1, Kind::Antighost});
    for (std::size_t a = 1; a <= n; ++a) specs.push_back({"eta" + std::to_string(a), true, 1, 0, Kind::Ghost});
    ConstraintSystem s;
    s.gens = std::make_shared<const superalg::GenSet>(specs);
    const std::size_t m = coords.size();
    for (std::size_t i = 0; i < m; ++i) s.x.push_back(i);
    for (std::size_t a = 0; a < n; ++a) {
      s.G.push_back(m + a);
      s.P.push_back(m + n + a);
      s.eta.push_back(m + 2 * n + a);
    }
    s.table = superalg::PoissonTable(s.gens);
    s.C.assign(n, std::vector<std::vector<SuperPoly>>(n, std::vector<SuperPoly>(n, SuperPoly(s.gens))));
    return s;
  }

  /// Sets C^c_{ab} (and C^c_{ba} = -C^c_{ab}); indices 0-based.
  void set_structure(std::size_t a, std::size_t b, std::size_t c, const SuperPoly& v) {
    if (a == b && !v.is_zero()) throw std::invalid_argument("structure function C^c_{aa} must vanish");
    C.at(c).at(a).at(b) = v;
    C.at(c).at(b).at(a) = -v;
  }

  [[nodiscard]] bool is_constraint(std::size_t i) const {
    return gens && (*gens)[i].kind == superalg::Kind::Constraint;
  }
  [[nodiscard]] unsigned antighost(const Monomial& m) const {
    unsigned k = 0;
    for (auto p : P) k += m[p];
    return k;
  }
  [[nodiscard]] unsigned g_degree(const Monomial& m) const {
    unsigned k = 0;
    for (auto g : G) k += m[g];
    return k;
  }
  [[nodiscard]] bool contains_g(const Monomial& m) const { return g_degree(m) > 0; }
};

/// Closure [G_a,G_b] = C^c_{ab} G_c, antisymmetry of C and Jacobi of the table.
inline Report validate_system(const ConstraintSystem& s) {
  Report rep;
  if (auto bad = superalg::poisson_jacobi_violation(s.table)) {
    rep.add("Poisson table satisfies Jacobi", false, *bad);
  } else {
    rep.add("Poisson table satisfies Jacobi", true);
  }
  std::string witness;
  for (std::size_t a = 0; a < s.n() && witness.empty(); ++a)
    for (std::size_t b = 0; b < s.n() && witness.empty(); ++b) {
      SuperPoly rhs = s.zero();
      for (std::size_t c = 0; c < s.n(); ++c) rhs += s.C[c][a][b] * s.gen(s.G[c]);
      const SuperPoly lhs = s.table.get(s.G[a], s.G[b]);
      if (!(lhs == rhs))
        witness = "[G" + std::to_string(a + 1) + ",G" + std::to_string(b + 1) + "] = " + lhs.str() + " but C gives " +
                  rhs.str();
    }
  rep.add("closure [G_a,G_b] = C^c_ab G_c", witness.empty(), witness);
  witness.clear();
  for (std::size_t c = 0; c < s.n() && witness.empty(); ++c)
    for (std::size_t a = 0; a < s.n() && witness.empty(); ++a)
      for (std::size_t b = 0; b < s.n() && witness.empty(); ++b) {
        if (!(s.C[c][a][b] == -s.C[c][b][a])) witness = "C^" + std::to_string(c + 1) + " not antisymmetric";
        for (const auto& [m, v] : s.C[c][a][b].terms())
          for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] && (*s.gens)[i].odd) witness = "structure function contains a ghost or antighost";
      }
  rep.add("structure functions antisymmetric and even", witness.empty(), witness);
  return rep;
}

inline SuperPoly koszul_tate(const ConstraintSystem& s, const SuperPoly& f) {
  return superalg::right_derivation(f, true, [&](std::size_t i) {
    for (std::size_t a = 0; a < s.n(); ++a)
      if (s.P[a] == i) return -s.gen(s.G[a]);
    return s.zero();
  });
}

inline SuperPoly longitudinal_d(const ConstraintSystem& s, const SuperPoly& f) {
  return superalg::right_derivation(f, true, [&](std::size_t i) {
    SuperPoly out = s.zero();
    for (std::size_t a = 0; a < s.n(); ++a) {
      if (s.P[a] == i) return out;
      if (s.eta[a] == i) {
        for (std::size_t b = 0; b < s.n(); ++b)
          for (std::size_t c = 0; c < s.n(); ++c)
            if (!s.C[a][c][b].is_zero())
              out += Rat(1, 2) * (s.C[a][c][b] * s.gen(s.eta[b]) * s.gen(s.eta[c]));
        return out;
      }
    }
    for (std::size_t a = 0; a < s.n(); ++a) {
      const SuperPoly br = s.table.get(i, s.G[a]);
      if (!br.is_zero()) out += br * s.gen(s.eta[a]);
    }
    return out;
  });
}

/// sigma F = -sum_a dR F/dG_a . P_a
inline SuperPoly sigma(const ConstraintSystem& s, const SuperPoly& f) {
  SuperPoly out = s.zero();
  for (std::size_t a = 0; a < s.n(); ++a) {
    const SuperPoly d = superalg::right_deriv(f, s.G[a]);
    if (!d.is_zero()) out -= d * s.gen(s.P[a]);
  }
  return out;
}

/// Multiplies each monomial by its combined number of P and G factors.
inline SuperPoly nbar(const ConstraintSystem& s, const SuperPoly& f) {
  SuperPoly out = s.zero();
  for (const auto& [m, c] : f.terms())
    out.add_term(m, c * Rat(static_cast<long>(s.antighost(m) + s.g_degree(m))));
  return out;
}

/// psi F = -F/k monomial-wise (the exact value of the scaling integral); 0 where k = 0.
inline SuperPoly psi(const ConstraintSystem& s, const SuperPoly& f) {
  SuperPoly out = s.zero();
  for (const auto& [m, c] : f.terms()) {
    const unsigned k = s.antighost(m) + s.g_degree(m);
    if (k) out.add_term(m, -c / Rat(static_cast<long>(k)));
  }
  return out;
}

/// s = sigma psi: (1/k) sum_a dR m/dG_a . P_a on each monomial.
inline SuperPoly homotopy_s(const ConstraintSystem& s, const SuperPoly& f) {
  SuperPoly out = s.zero();
  for (const auto& [m, c] : f.terms()) {
    const unsigned k = s.antighost(m) + s.g_degree(m);
    if (k == 0 || s.g_degree(m) == 0) continue;
    const SuperPoly mono = SuperPoly::monomial(s.gens, m, c / Rat(static_cast<long>(k)));
    for (std::size_t a = 0; a < s.n(); ++a) {
      const SuperPoly d = superalg::right_deriv(mono, s.G[a]);
      if (!d.is_zero()) out += d * s.gen(s.P[a]);
    }
  }
  return out;
}

/// lambda-tilde f = f + delta s f; on degree zero this is f with every G set to 0.
inline SuperPoly lambda_tilde(const ConstraintSystem& s, const SuperPoly& f) {
  return f + koszul_tate(s, homotopy_s(s, f));
}

/// True when no term of f carries a constraint factor.
inline bool is_g_free(const ConstraintSystem& s, const SuperPoly& f) {
  for (const auto& [m, c] : f.terms())
    if (s.contains_g(m)) return false;
  return true;
}

inline SuperPoly g_free_part(const ConstraintSystem& s, const SuperPoly& f) {
  return f.filter([&](const Monomial& m) { return !s.contains_g(m); });
}

/// Membership in B = N (x) C(eta): every term carries a constraint factor.
inline bool in_ideal(const ConstraintSystem& s, const SuperPoly& f) { return g_free_part(s, f).is_zero(); }

inline std::vector<Monomial> basis(const ConstraintSystem& s, unsigned cap) {
  return superalg::monomials_up_to(*s.gens, cap);
}
inline std::vector<Monomial> basis_in_degree(const ConstraintSystem& s, unsigned cap, unsigned p) {
  return superalg::monomials_up_to(*s.gens, cap, [&](const Monomial& m) { return s.antighost(m) == p; });
}

inline Report verify_brst_resolution(const ConstraintSystem& s, unsigned cap) {
  Report rep;
  std::string w_sq, w_n, w_lt, w_h, w_lam;
  for (const auto& m : basis(s, cap)) {
    const SuperPoly f = SuperPoly::monomial(s.gens, m);
    const std::string name = f.str();
    const SuperPoly df = koszul_tate(s, f);
    if (w_sq.empty() && !koszul_tate(s, df).is_zero()) w_sq = name;
    if (w_n.empty() && !(koszul_tate(s, sigma(s, f)) + sigma(s, df) == nbar(s, f))) w_n = name;
    const unsigned p = s.antighost(m);
    const SuperPoly homot = koszul_tate(s, homotopy_s(s, f)) + homotopy_s(s, df);
    const SuperPoly lhs = (p == 0 ? g_free_part(s, f) : s.zero()) - f;
    if (w_h.empty() && !(lhs == homot)) w_h = name + " in degree " + std::to_string(p);
    if (p == 0) {
      if (w_lam.empty() && !(lambda_tilde(s, f) == g_free_part(s, f))) w_lam = name;
      if (w_lt.empty() && s.contains_g(m) && !lambda_tilde(s, f).is_zero()) w_lt = name;
    }
  }
  rep.add("delta^2 = 0", w_sq.empty(), w_sq);
  rep.add("delta sigma + sigma delta = Nbar", w_n.empty(), w_n);
  rep.add("lambda-tilde vanishes on B", w_lt.empty(), w_lt);
  rep.add("lambda-tilde f = f|_{G=0}", w_lam.empty(), w_lam);
  rep.add("lambda eta - 1 = l1 s + s l1", w_h.empty(), w_h);
  return rep;
}

/// d(B) in B and d^2(X0) in B on the degree-zero basis up to the cap.
inline Report check_ideal_conditions(const ConstraintSystem& s, unsigned cap) {
  Report rep;
  std::string w_ii, w_iii;
  for (const auto& m : basis_in_degree(s, cap, 0)) {
    const SuperPoly f = SuperPoly::monomial(s.gens, m);
    const SuperPoly df = longitudinal_d(s, f);
    if (w_ii.empty() && s.contains_g(m) && !in_ideal(s, df)) w_ii = "d(" + f.str() + ") = " + df.str();
    const SuperPoly ddf = longitudinal_d(s, df);
    if (w_iii.empty() && !in_ideal(s, ddf)) w_iii = "d^2(" + f.str() + ") = " + ddf.str();
  }
  rep.add("d(B) in B", w_ii.empty(), w_ii);
  rep.add("d^2(X0) in B", w_iii.empty(), w_iii);
  return rep;
}

class BrstError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// l1 = delta, l2 = d on degree 0 and s l2 l1 above, l3 = s l2 l2 on degree 0 and
/// s (l2 l2 + l3 l1) above. Values are cached per monomial.
class BRSTExtension {
public:
  explicit BRSTExtension(const ConstraintSystem& s) : s_(s) {}

  [[nodiscard]] const ConstraintSystem& system() const { return s_; }

  SuperPoly l1(const SuperPoly& f) const { return koszul_tate(s_, f); }
  SuperPoly l2(const SuperPoly& f) const { return linear(f, l2_cache_, [&](const Monomial& m) { return l2_mono(m); }); }
  SuperPoly l3(const SuperPoly& f) const { return linear(f, l3_cache_, [&](const Monomial& m) { return l3_mono(m); }); }
  SuperPoly total(const SuperPoly& f) const { return l1(f) + l2(f) + l3(f); }

private:
  template <class Fn>
  SuperPoly linear(const SuperPoly& f, std::map<Monomial, SuperPoly>& cache, Fn fn) const {
    SuperPoly out = s_.zero();
    for (const auto& [m, c] : f.terms()) {
      auto it = cache.find(m);
      if (it == cache.end()) it = cache.emplace(m, fn(m)).first;
      out += c * it->second;
    }
    return out;
  }
  SuperPoly l2_mono(const Monomial& m) const {
    const SuperPoly f = SuperPoly::monomial(s_.gens, m);
    if (s_.antighost(m) == 0) return longitudinal_d(s_, f);
    return homotopy_s(s_, l2(l1(f)));
  }
  SuperPoly l3_mono(const Monomial& m) const {
    const SuperPoly f = SuperPoly::monomial(s_.gens, m);
    if (s_.antighost(m) == 0) return homotopy_s(s_, l2(l2(f)));
    return homotopy_s(s_, l2(l2(f)) + l3(l1(f)));
  }

  ConstraintSystem s_;
  mutable std::map<Monomial, SuperPoly> l2_cache_, l3_cache_;
};

inline BRSTExtension build_brst(const ConstraintSystem& s, unsigned cap) {
  Report pre = validate_system(s);
  pre.merge(verify_brst_resolution(s, cap));
  pre.merge(check_ideal_conditions(s, cap));
  if (const Check* bad = pre.first_failure())
    throw BrstError("build_brst: " + bad->name + " fails" + (bad->detail.empty() ? "" : ": " + bad->detail));
  return BRSTExtension(s);
}

/// -s(C^c_{ab}) G_c eta^b - C^d_{ab} eta^b P_d
inline SuperPoly l2_pa_closed_form(const ConstraintSystem& s, std::size_t a) {
  SuperPoly out = s.zero();
  for (std::size_t b = 0; b < s.n(); ++b)
    for (std::size_t c = 0; c < s.n(); ++c) {
      const SuperPoly& cab = s.C[c][a][b];
      if (cab.is_zero()) continue;
      out -= homotopy_s(s, cab) * s.gen(s.G[c]) * s.gen(s.eta[b]);
      out -= cab * s.gen(s.eta[b]) * s.gen(s.P[c]);
    }
  return out;
}

/// 1/2 [C^c_{ab}, f] P_c eta^b eta^a
inline SuperPoly l3_closed_form(const ConstraintSystem& s, const SuperPoly& f) {
  SuperPoly out = s.zero();
  for (std::size_t a = 0; a < s.n(); ++a)
    for (std::size_t b = 0; b < s.n(); ++b)
      for (std::size_t c = 0; c < s.n(); ++c) {
        const SuperPoly& cab = s.C[c][a][b];
        if (cab.is_zero()) continue;
        out += Rat(1, 2) * (superalg::poisson(cab, f, s.table) * s.gen(s.P[c]) * s.gen(s.eta[b]) * s.gen(s.eta[a]));
      }
  return out;
}

/// -1/2 [f, C^c_{ab}] G_c eta^b eta^a, the value of d^2 f for f in the (x, G) algebra.
inline SuperPoly d_squared_closed_form(const ConstraintSystem& s, const SuperPoly& f) {
  SuperPoly out = s.zero();
  for (std::size_t a = 0; a < s.n(); ++a)
    for (std::size_t b = 0; b < s.n(); ++b)
      for (std::size_t c = 0; c < s.n(); ++c) {
        const SuperPoly& cab = s.C[c][a][b];
        if (cab.is_zero()) continue;
        out -= Rat(1, 2) * (superalg::poisson(f, cab, s.table) * s.gen(s.G[c]) * s.gen(s.eta[b]) * s.gen(s.eta[a]));
      }
  return out;
}

inline bool constant_structure(const ConstraintSystem& s) {
  for (const auto& ca : s.C)
    for (const auto& cab : ca)
      for (const auto& v : cab)
        if (v.max_degree() > 0) return false;
  return true;
}

inline Report verify_brst(const BRSTExtension& e, unsigned cap) {
  const ConstraintSystem& s = e.system();
  Report rep;
  std::string w_sq, w_p, w_eta, w_28, w_l3c, w_der;
  std::size_t l3_nonzero = 0;
  const bool constant = constant_structure(s);
  for (const auto& m : basis(s, cap)) {
    const SuperPoly f = SuperPoly::monomial(s.gens, m);
    const SuperPoly l = e.total(f).truncate(cap);
    if (w_sq.empty() && !e.total(l).truncate(cap).is_zero()) w_sq = f.str();
    const SuperPoly l3f = e.l3(f);
    if (!l3f.is_zero()) ++l3_nonzero;
    if (constant) {
      if (w_l3c.empty() && !l3f.is_zero()) w_l3c = "l3(" + f.str() + ") = " + l3f.str();
      if (w_der.empty() && s.antighost(m) == 0 && !(e.l2(f) == longitudinal_d(s, f))) w_der = f.str();
    }
  }
  for (std::size_t a = 0; a < s.n(); ++a) {
    const SuperPoly pa = s.gen(s.P[a]), ea = s.gen(s.eta[a]);
    if (w_p.empty() && !e.l3(pa).is_zero()) w_p = "l3(P" + std::to_string(a + 1) + ") = " + e.l3(pa).str();
    if (w_eta.empty() && !e.l3(ea).is_zero()) w_eta = "l3(eta" + std::to_string(a + 1) + ") = " + e.l3(ea).str();
    const SuperPoly want = l2_pa_closed_form(s, a);
    const SuperPoly got = e.l2(pa);
    if (w_28.empty() && !(got == want)) w_28 = "l2(P" + std::to_string(a + 1) + ") = " + got.str() + ", closed form " + want.str();
  }
  // Closed forms for functions of (x, G) alone.
  std::string w_29, w_dd;
  std::size_t closed_form_cases = 0;
  const auto xg = superalg::monomials_up_to(*s.gens, cap, [&](const Monomial& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] && (*s.gens)[i].odd) return false;
    return true;
  });
  for (const auto& m : xg) {
    const SuperPoly f = SuperPoly::monomial(s.gens, m);
    bool g_free_brackets = true;
    for (const auto& ca : s.C)
      for (const auto& cab : ca)
        for (const auto& v : cab)
          if (!v.is_zero() && !is_g_free(s, superalg::poisson(v, f, s.table))) g_free_brackets = false;
    if (g_free_brackets) ++closed_form_cases;
    if (g_free_brackets && w_29.empty() && !(e.l3(f) == l3_closed_form(s, f))) w_29 = f.str();
    if (w_dd.empty() && !(longitudinal_d(s, longitudinal_d(s, f)) == d_squared_closed_form(s, f))) w_dd = f.str();
  }
  rep.add("(l1+l2+l3)^2 = 0 on the basis up to the cap", w_sq.empty(), w_sq);
  rep.add("l3(f) = 1/2 [C^c_ab, f] P_c eta^b eta^a where [C, f] is G-free", w_29.empty(),
          w_29.empty() ? std::to_string(closed_form_cases) + " polynomials" : w_29);
  rep.add("d^2 f = -1/2 [f, C^c_ab] G_c eta^b eta^a on (x,G) polynomials", w_dd.empty(), w_dd);
  rep.add("l3(P_a) = 0", w_p.empty(), w_p);
  rep.add("l3(eta^a) = 0", w_eta.empty(), w_eta);
  rep.add("l2(P_a) = -s(C) G eta - C eta P", w_28.empty(), w_28);
  if (constant) {
    rep.add("constant C: l3 = 0", w_l3c.empty(), w_l3c);
    rep.add("constant C: l2 = d on degree 0", w_der.empty(), w_der);
  }
  // C commutes with every even generator exactly when d^2 = 0, and then l3 vanishes.
  bool central = true;
  for (const auto& ca : s.C)
    for (const auto& cab : ca)
      for (const auto& v : cab)
        for (std::size_t i = 0; i < s.gens->size() && central; ++i)
          if (!(*s.gens)[i].odd && !superalg::poisson(v, s.gen(i), s.table).is_zero()) central = false;
  rep.add(central ? "C Poisson-central: l3 = 0" : "C not Poisson-central: l3 != 0", central == (l3_nonzero == 0),
          std::to_string(l3_nonzero) + " basis monomials with l3 != 0");
  return rep;
}

// ---------------------------------------------------------------------------
// Export to the generic engine. The truncation keeps monomials of total degree
// <= cap; every operator here is filtration non-decreasing, so this is a
// quotient complex. A term that would lower the degree is reported instead.

struct BrstExport {
  complexes::HomotopyData h;
  RatMatrix l2_0;
  RatMatrix d_f;
  std::vector<std::vector<Monomial>> basis;  // per resolution degree
  std::vector<Monomial> f_basis;             // G-free degree-zero monomials
};

class EscapingMonomial : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline RatMatrix op_matrix(const ConstraintSystem& s, const std::vector<Monomial>& src,
                           const std::vector<Monomial>& dst, unsigned cap, const std::string& name,
                           const std::function<SuperPoly(const SuperPoly&)>& op) {
  std::map<Monomial, std::size_t, superalg::MonoLess> row;
  for (std::size_t i = 0; i < dst.size(); ++i) row[dst[i]] = i;
  RatMatrix m(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    const SuperPoly f = SuperPoly::monomial(s.gens, src[c]);
    const unsigned deg = superalg::mono_degree(src[c]);
    const SuperPoly image = op(f);
    for (const auto& [mono, v] : image.terms()) {
      const unsigned d = superalg::mono_degree(mono);
      if (d < deg)
        throw EscapingMonomial(name + " maps " + f.str() + " to lower-degree term " +
                               SuperPoly::monomial(s.gens, mono).str());
      if (d > cap) continue;
      auto it = row.find(mono);
      if (it == row.end())
        throw EscapingMonomial(name + " maps " + f.str() + " outside the truncated basis: " +
                               SuperPoly::monomial(s.gens, mono).str());
      m(it->second, c) = v;
    }
  }
  return m;
}

}  // namespace detail

inline BrstExport export_to_complexes(const ConstraintSystem& s, unsigned cap) {
  BrstExport ex;
  const unsigned top = std::min<unsigned>(static_cast<unsigned>(s.n()), cap);
  complexes::GradedSpace sp;
  for (unsigned p = 0; p <= top; ++p) {
    ex.basis.push_back(basis_in_degree(s, cap, p));
    sp.dims.push_back(ex.basis.back().size());
  }
  for (const auto& m : ex.basis[0])
    if (!s.contains_g(m)) ex.f_basis.push_back(m);

  complexes::GradedMap l1(sp, -1), sm(sp, 1);
  for (int p = 0; p <= sp.top(); ++p) {
    const auto& src = ex.basis[static_cast<std::size_t>(p)];
    if (p > 0)
      l1.at(p) = detail::op_matrix(s, src, ex.basis[static_cast<std::size_t>(p - 1)], cap, "delta",
                                   [&](const SuperPoly& f) { return koszul_tate(s, f); });
    if (p < sp.top())
      sm.at(p) = detail::op_matrix(s, src, ex.basis[static_cast<std::size_t>(p + 1)], cap, "s",
                                   [&](const SuperPoly& f) { return homotopy_s(s, f); });
    else
      sm.at(p) = detail::op_matrix(s, src, {}, cap, "s", [&](const SuperPoly& f) {
        const SuperPoly v = homotopy_s(s, f);
        return v.truncate(cap);
      });
  }
  const std::size_t fd = ex.f_basis.size();
  RatMatrix eta(fd, sp.dim(0)), lambda(sp.dim(0), fd);
  for (std::size_t j = 0; j < fd; ++j) {
    for (std::size_t i = 0; i < ex.basis[0].size(); ++i)
      if (ex.basis[0][i] == ex.f_basis[j]) {
        eta(j, i) = Rat(1);
        lambda(i, j) = Rat(1);
      }
  }
  ex.h = complexes::HomotopyData{sp, l1, fd, eta, lambda, sm};
  ex.l2_0 = detail::op_matrix(s, ex.basis[0], ex.basis[0], cap, "d",
                              [&](const SuperPoly& f) { return longitudinal_d(s, f); });
  ex.d_f = eta * ex.l2_0 * lambda;
  return ex;
}

/// chain_extend on the export against the symbolic operators, entrywise.
inline Report cross_check_engine(const ConstraintSystem& s, const BRSTExtension& e, unsigned cap) {
  Report rep;
  const BrstExport ex = export_to_complexes(s, cap);
  rep.merge(complexes::verify_homotopy(ex.h), "export: ");
  rep.merge(complexes::check_l2_conditions(ex.h, ex.l2_0, ex.d_f), "export: ");
  if (!rep.ok()) return rep;
  const complexes::ChainExtension ce = complexes::chain_extend(ex.h, ex.l2_0);
  const Report nil = complexes::verify_nilpotent(ce);
  rep.add("engine: all relations hold", nil.ok(), nil.ok() ? "" : nil.first_failure()->name);
  const Report van = complexes::verify_vanishing(ce);
  rep.add("engine: vanishing in high degree", van.ok(), van.ok() ? "" : van.first_failure()->name);
  const auto& sp = ex.h.space;
  for (int which = 2; which <= 3; ++which) {
    std::string witness;
    for (int p = 0; p <= sp.top() && witness.empty(); ++p) {
      const int q = p + (which == 2 ? 0 : 1);
      const std::vector<Monomial> empty;
      const auto& dst = q <= sp.top() ? ex.basis[static_cast<std::size_t>(q)] : empty;
      const RatMatrix sym = detail::op_matrix(s, ex.basis[static_cast<std::size_t>(p)], dst, cap,
                                              "l" + std::to_string(which), [&](const SuperPoly& f) {
                                                return which == 2 ? e.l2(f) : e.l3(f);
                                              });
      const RatMatrix& eng = which == 2 ? ce.l2.at(p) : ce.l3.at(p);
      if (auto diff = sym.first_difference(eng))
        witness = "degree " + std::to_string(p) + " at " +
                  SuperPoly::monomial(s.gens, ex.basis[static_cast<std::size_t>(p)][diff->second]).str();
    }
    rep.add("engine l" + std::to_string(which) + " = symbolic l" + std::to_string(which), witness.empty(), witness);
  }
  const std::size_t lhs = complexes::total_homology_dims(ce);
  const std::size_t rhs = complexes::homology_dim(ex.d_f);
  rep.add("H(X,l) = H(F,D_F)", lhs == rhs, std::to_string(lhs) + " vs " + std::to_string(rhs));
  return rep;
}

}  // namespace chainext::brst
