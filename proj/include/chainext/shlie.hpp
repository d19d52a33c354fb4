// shlie.hpp
//
// The sh-Lie structure induced by a first-order deformation alpha0 + t alpha1
// of a Lie algebra, on X1 (+) X0 with X0 = A[[t]] and X1 a starred copy of A
// starting at t^2 (or at t^0 for the extended variant). Everything is
// truncated mod t^{N+1}; the maps are t-linear so the truncation is a quotient
// structure and every relation must hold exactly on it.
//
// Relation convention: for each n,
//   sum_{i+j=n+1} sum_{(i,n-i)-unshuffles} w_ij chi(sigma) (-1)^{i(j-1)}
//       l_j(l_i(x_s1..x_si), x_s(i+1)..x_sn) = 0
// with chi the signed Koszul sign and X0 in degree 0, X1 in degree 1. The
// weight w_22 = 2 (all others 1) is the bracket normalization under which
// l3 = -t^2 [alpha1, alpha1]*. With w_22 = 1 the same relations hold for
// (l1, l2, l3 / 2).

#pragma once

#include "chainext/complexes.hpp"
#include "chainext/lie.hpp"
#include "chainext/report.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainext::shlie {

using SVec = std::map<std::size_t, Rat>;

inline void sadd(SVec& y, const Rat& a, const SVec& x) {
  if (a.is_zero()) return;
  for (const auto& [k, v] : x) {
    Rat& slot = y[k];
    slot += a * v;
    if (slot.is_zero()) y.erase(k);
  }
}

/// A finite graded space with multilinear maps l1, l2, l3 given on basis tuples.
struct LInfty {
  std::vector<int> degree;  // 0 or 1 per basis element
  std::vector<std::string> names;
  std::function<SVec(const std::vector<std::size_t>&)> l[4];

  [[nodiscard]] std::size_t dim() const { return degree.size(); }

  /// l_k with the first argument a general vector and the rest basis elements.
  [[nodiscard]] SVec apply_first(int k, const SVec& first, const std::vector<std::size_t>& rest) const {
    SVec out;
    std::vector<std::size_t> args(1 + rest.size());
    std::copy(rest.begin(), rest.end(), args.begin() + 1);
    for (const auto& [b, c] : first) {
      args[0] = b;
      sadd(out, c, l[k](args));
    }
    return out;
  }
};

struct RelationOptions {
  Rat weight22{2};
  int max_n = 5;
};

namespace detail {

/// chi(sigma) for moving the elements at `chosen` (increasing) to the front.
inline int unshuffle_sign(const std::vector<std::size_t>& tuple, const std::vector<bool>& chosen,
                          const std::vector<int>& degree) {
  int sign = 1;
  for (std::size_t q = 0; q < tuple.size(); ++q) {
    if (!chosen[q]) continue;
    for (std::size_t p = 0; p < q; ++p)
      if (!chosen[p]) {
        const int kos = (degree[tuple[p]] * degree[tuple[q]]) % 2;
        if (kos == 0) sign = -sign;
      }
  }
  return sign;
}

inline std::string tuple_name(const LInfty& s, const std::vector<std::size_t>& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + s.names[t[i]];
  return out + ")";
}

}  // namespace detail

/// Left-hand side of the order-n relation on a basis tuple.
inline SVec relation_value(const LInfty& s, const std::vector<std::size_t>& tuple, const RelationOptions& opt) {
  const std::size_t n = tuple.size();
  SVec total;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t j = n + 1 - i;
    if (i > 3 || j > 3) continue;
    const int outer_sign = ((i * (j - 1)) % 2 == 0) ? 1 : -1;
    const Rat weight = (i == 2 && j == 2) ? opt.weight22 : Rat(1);
    std::vector<bool> chosen(n, false);
    std::fill(chosen.begin(), chosen.begin() + static_cast<long>(i), true);
    std::sort(chosen.begin(), chosen.end());
    do {
      std::vector<std::size_t> inner, rest;
      for (std::size_t q = 0; q < n; ++q) (chosen[q] ? inner : rest).push_back(tuple[q]);
      const SVec li = s.l[i](inner);
      if (li.empty()) continue;
      const int chi = detail::unshuffle_sign(tuple, chosen, s.degree);
      sadd(total, weight * Rat(chi * outer_sign), s.apply_first(static_cast<int>(j), li, rest));
    } while (std::next_permutation(chosen.begin(), chosen.end()));
  }
  return total;
}

/// Checks the relations for n = 1..max_n on every nondecreasing basis tuple.
inline Report verify_relations(const LInfty& s, const RelationOptions& opt = {}) {
  Report rep;
  const std::size_t d = s.dim();
  for (int n = 1; n <= opt.max_n; ++n) {
    std::vector<std::size_t> t(static_cast<std::size_t>(n), 0);
    std::string witness;
    std::size_t count = 0;
    for (;;) {
      ++count;
      if (!relation_value(s, t, opt).empty()) {
        witness = "fails on " + detail::tuple_name(s, t);
        break;
      }
      int pos = n - 1;
      while (pos >= 0 && t[static_cast<std::size_t>(pos)] + 1 == d) --pos;
      if (pos < 0 || d == 0) break;
      const std::size_t v = ++t[static_cast<std::size_t>(pos)];
      for (std::size_t q = static_cast<std::size_t>(pos) + 1; q < t.size(); ++q) t[q] = v;
    }
    rep.add("sh-Lie relation n=" + std::to_string(n), witness.empty(),
            witness.empty() ? std::to_string(count) + " tuples" : witness);
  }
  return rep;
}

/// Graded antisymmetry of l2 and l3 under adjacent transpositions.
inline Report verify_symmetry(const LInfty& s) {
  Report rep;
  const std::size_t d = s.dim();
  std::string witness;
  for (std::size_t a = 0; a < d && witness.empty(); ++a)
    for (std::size_t b = 0; b < d && witness.empty(); ++b) {
      const int kos = (s.degree[a] * s.degree[b]) % 2 ? 1 : -1;  // chi of the swap
      SVec lhs = s.l[2]({b, a});
      sadd(lhs, Rat(-kos), s.l[2]({a, b}));
      if (!lhs.empty()) witness = "l2 on " + detail::tuple_name(s, {a, b});
    }
  rep.add("l2 graded antisymmetric", witness.empty(), witness);
  witness.clear();
  for (std::size_t a = 0; a < d && witness.empty(); ++a)
    for (std::size_t b = 0; b < d && witness.empty(); ++b)
      for (std::size_t c = 0; c < d && witness.empty(); ++c) {
        const int k1 = (s.degree[a] * s.degree[b]) % 2 ? 1 : -1;
        SVec lhs = s.l[3]({b, a, c});
        sadd(lhs, Rat(-k1), s.l[3]({a, b, c}));
        const int k2 = (s.degree[b] * s.degree[c]) % 2 ? 1 : -1;
        SVec lhs2 = s.l[3]({a, c, b});
        sadd(lhs2, Rat(-k2), s.l[3]({a, b, c}));
        if (!lhs.empty() || !lhs2.empty()) witness = "l3 on " + detail::tuple_name(s, {a, b, c});
      }
  rep.add("l3 graded antisymmetric", witness.empty(), witness);
  return rep;
}

enum class Variant { FromT2, Full };

inline const char* variant_name(Variant v) { return v == Variant::FromT2 ? "X1 from t^2" : "X1 from t^0"; }

struct ShLieStructure {
  lie::LieAlgebra algebra;
  lie::Cochain alpha0, alpha1;
  std::size_t trunc = 4;
  Variant variant = Variant::FromT2;
  lie::Cochain l3_coeff;  // l3(a,b,c) = (l3_coeff(a,b,c))* t^2

  [[nodiscard]] std::size_t n() const { return algebra.dim; }
  [[nodiscard]] std::size_t x1_start() const { return variant == Variant::FromT2 ? 2 : 0; }
  [[nodiscard]] std::size_t x0_size() const { return n() * (trunc + 1); }
  [[nodiscard]] std::size_t x1_size() const { return n() * (trunc + 1 - x1_start()); }
  [[nodiscard]] std::size_t dim() const { return x0_size() + x1_size(); }

  [[nodiscard]] std::size_t x0(std::size_t a, std::size_t k) const { return k * n() + a; }
  [[nodiscard]] std::size_t x1(std::size_t a, std::size_t k) const { return x0_size() + (k - x1_start()) * n() + a; }

  struct Decoded {
    bool starred;
    std::size_t a;
    std::size_t k;
  };
  [[nodiscard]] Decoded decode(std::size_t idx) const {
    if (idx < x0_size()) return {false, idx % n(), idx / n()};
    const std::size_t r = idx - x0_size();
    return {true, r % n(), r / n() + x1_start()};
  }

  /// Adds c * v t^k (starred or not), dropping powers above the truncation.
  void emit(SVec& out, bool starred, const Vec& v, std::size_t k, const Rat& c) const {
    if (k > trunc) return;
    for (std::size_t b = 0; b < n(); ++b) {
      if (v[b].is_zero()) continue;
      const std::size_t idx = starred ? x1(b, k) : x0(b, k);
      Rat& slot = out[idx];
      slot += c * v[b];
      if (slot.is_zero()) out.erase(idx);
    }
  }

  [[nodiscard]] SVec l1(std::size_t x) const {
    const auto d = decode(x);
    SVec out;
    if (d.starred) out[x0(d.a, d.k)] = Rat(1);
    return out;
  }

  [[nodiscard]] SVec l2(std::size_t x, std::size_t y) const {
    auto dx = decode(x), dy = decode(y);
    SVec out;
    if (dx.starred && dy.starred) return out;
    Rat sign(1);
    if (dy.starred) {
      std::swap(dx, dy);
      sign = Rat(-1);
    }
    const std::size_t k = dx.k + dy.k;
    emit(out, dx.starred, alpha0.eval({dx.a, dy.a}), k, sign);
    emit(out, dx.starred, alpha1.eval({dx.a, dy.a}), k + 1, sign);
    return out;
  }

  [[nodiscard]] SVec l3(std::size_t x, std::size_t y, std::size_t z) const {
    const auto dx = decode(x), dy = decode(y), dz = decode(z);
    SVec out;
    if (dx.starred || dy.starred || dz.starred) return out;
    emit(out, true, l3_coeff.eval({dx.a, dy.a, dz.a}), dx.k + dy.k + dz.k + 2, Rat(1));
    return out;
  }

  [[nodiscard]] std::string name(std::size_t idx) const {
    const auto d = decode(idx);
    return algebra.names[d.a] + (d.starred ? "*" : "") + "t^" + std::to_string(d.k);
  }

  [[nodiscard]] LInfty as_linfty() const {
    LInfty s;
    for (std::size_t i = 0; i < dim(); ++i) {
      s.degree.push_back(i < x0_size() ? 0 : 1);
      s.names.push_back(name(i));
    }
    s.l[1] = [this](const std::vector<std::size_t>& t) { return l1(t[0]); };
    s.l[2] = [this](const std::vector<std::size_t>& t) { return l2(t[0], t[1]); };
    s.l[3] = [this](const std::vector<std::size_t>& t) { return l3(t[0], t[1], t[2]); };
    return s;
  }
};

class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline ShLieStructure build_shlie(const lie::LieAlgebra& a, const lie::Cochain& alpha1, std::size_t trunc,
                                  Variant variant = Variant::FromT2) {
  if (trunc < 3) throw InvalidInput("build_shlie: truncation order must be at least 3");
  if (alpha1.arity() != 2 || alpha1.dim() != a.dim) throw InvalidInput("build_shlie: alpha1 has the wrong shape");
  if (!lie::jacobi_check(a)) throw InvalidInput("build_shlie: base bracket fails Jacobi");
  if (!lie::ce_differential(a, alpha1).is_zero()) throw InvalidInput("build_shlie: alpha1 is not a cocycle");
  ShLieStructure s{a, a.bracket, alpha1, trunc, variant, Rat(-1) * lie::bracket2(alpha1, alpha1)};
  return s;
}

/// l3(e_a, e_b, e_c) = -t^2 [alpha1, alpha1](e_a, e_b, e_c)* on every basis triple.
inline bool l3_is_obstruction(const ShLieStructure& s) {
  const lie::Cochain ob = lie::bracket2(s.alpha1, s.alpha1);
  for (const auto& t : ob.tuples()) {
    SVec expect;
    s.emit(expect, true, ob.eval(t), 2, Rat(-1));
    if (s.l3(s.x0(t[0], 0), s.x0(t[1], 0), s.x0(t[2], 0)) != expect) return false;
  }
  return true;
}

/// l_i(t^k x, ...) = t^k l_i(x, ...) for basis tuples and k + 2 <= N.
inline Report verify_t_linearity(const ShLieStructure& s) {
  Report rep;
  auto shift = [&](std::size_t idx, std::size_t k) -> std::optional<std::size_t> {
    auto d = s.decode(idx);
    if (d.k + k > s.trunc) return std::nullopt;
    return d.starred ? s.x1(d.a, d.k + k) : s.x0(d.a, d.k + k);
  };
  auto shift_vec = [&](const SVec& v, std::size_t k) {
    SVec out;
    for (const auto& [i, c] : v)
      if (auto j = shift(i, k)) out[*j] = c;
    return out;
  };
  std::string witness;
  const std::size_t d = s.dim();
  for (std::size_t k = 1; k + 2 <= s.trunc && witness.empty(); ++k)
    for (std::size_t x = 0; x < d && witness.empty(); ++x) {
      auto xs = shift(x, k);
      if (!xs) continue;
      if (s.l1(*xs) != shift_vec(s.l1(x), k)) witness = "l1 at " + s.name(x);
      for (std::size_t y = 0; y < d && witness.empty(); ++y) {
        if (s.l2(*xs, y) != shift_vec(s.l2(x, y), k)) witness = "l2 at " + s.name(x) + ", " + s.name(y);
        for (std::size_t z = 0; z < s.x0_size() && witness.empty() && y < s.x0_size(); ++z)
          if (s.l3(*xs, y, z) != shift_vec(s.l3(x, y, z), k))
            witness = "l3 at " + s.name(x) + ", " + s.name(y) + ", " + s.name(z);
      }
    }
  rep.add("t-linearity", witness.empty(), witness);
  return rep;
}

/// Grading of each map: l1 lowers X-degree, l2 preserves it, l3 raises it.
inline Report verify_grading(const ShLieStructure& s) {
  Report rep;
  auto deg = [&](std::size_t i) { return i < s.x0_size() ? 0 : 1; };
  auto all_deg = [&](const SVec& v, int want) {
    for (const auto& [i, c] : v)
      if (deg(i) != want) return false;
    return true;
  };
  bool ok = true;
  const std::size_t d = s.dim();
  for (std::size_t x = 0; x < d; ++x) {
    ok = ok && all_deg(s.l1(x), deg(x) - 1);
    for (std::size_t y = 0; y < d; ++y) {
      ok = ok && all_deg(s.l2(x, y), deg(x) + deg(y));
      for (std::size_t z = 0; z < d && deg(x) + deg(y) == 0; ++z) ok = ok && all_deg(s.l3(x, y, z), deg(z) + 1);
    }
  }
  rep.add("maps have degrees -1, 0, +1", ok);
  if (s.variant == Variant::FromT2) {
    bool low = true;
    for (std::size_t i = s.x0_size(); i < d; ++i) low = low && s.decode(i).k >= 2;
    rep.add("X1 has no terms below t^2", low);
  }
  return rep;
}

inline Report verify_shlie(const ShLieStructure& s) {
  Report rep;
  const LInfty li = s.as_linfty();
  rep.merge(verify_relations(li));
  rep.merge(verify_symmetry(li));
  rep.merge(verify_t_linearity(s));
  rep.merge(verify_grading(s));
  rep.add("l3 = -t^2 [alpha1,alpha1]*", l3_is_obstruction(s));
  rep.add("l3 = 0 iff [alpha1,alpha1] = 0",
          s.l3_coeff.is_zero() == lie::bracket2(s.alpha1, s.alpha1).is_zero());
  return rep;
}

/// The t^0 variant restricted to X1 from t^2 reproduces the t^2 variant.
inline Report verify_variant_restriction(const ShLieStructure& full, const ShLieStructure& t2) {
  Report rep;
  auto to_full = [&](std::size_t idx) {
    auto d = t2.decode(idx);
    return d.starred ? full.x1(d.a, d.k) : full.x0(d.a, d.k);
  };
  auto map_vec = [&](const SVec& v) {
    SVec out;
    for (const auto& [i, c] : v) out[to_full(i)] = c;
    return out;
  };
  std::string witness;
  const std::size_t d = t2.dim();
  for (std::size_t x = 0; x < d && witness.empty(); ++x) {
    if (full.l1(to_full(x)) != map_vec(t2.l1(x))) witness = "l1 at " + t2.name(x);
    for (std::size_t y = 0; y < d && witness.empty(); ++y) {
      if (full.l2(to_full(x), to_full(y)) != map_vec(t2.l2(x, y))) witness = "l2 at " + t2.name(x) + ", " + t2.name(y);
      for (std::size_t z = 0; z < d && witness.empty(); ++z)
        if (full.l3(to_full(x), to_full(y), to_full(z)) != map_vec(t2.l3(x, y, z)))
          witness = "l3 at " + t2.name(x);
    }
  }
  rep.add("t^0 variant restricts to t^2 variant", witness.empty(), witness);
  return rep;
}

// ---------------------------------------------------------------------------
// Export as a D-algebra for the generic engine.
//
// V = (+)_{k=1..3} Lambda^k A (x) k[t]/t^{N+1} with the boundary of the
// deformed bracket a_t = alpha0 + t alpha1:
//   d(x^y)   = a_t(x,y)
//   d(x^y^z) = w (a_t(x,y)^z - a_t(x,z)^y + a_t(y,z)^x),  w = 2.
// X0 = V, X1 = starred t^2 V, l1 the inclusion, s = -star on t >= 2,
// F = V / t^2 V. Then chain_extend gives
//   l3 on Lambda^3       = sh-Lie l3,
//   l2 on Lambda^2       = sh-Lie l2 on X0 x X0,
//   l2 on (a^b)* t^p     = -(sh-Lie l2(a* t^p, b)).

struct WedgeExport {
  complexes::HomotopyData h;
  RatMatrix l2_0;
  RatMatrix d_f;
  std::vector<std::vector<std::size_t>> wedges;  // all increasing tuples of length 1..3
  std::size_t trunc = 0;

  [[nodiscard]] std::size_t wedge_index(const std::vector<std::size_t>& t) const {
    for (std::size_t i = 0; i < wedges.size(); ++i)
      if (wedges[i] == t) return i;
    throw std::out_of_range("wedge_index");
  }
  [[nodiscard]] std::size_t x0(std::size_t w, std::size_t k) const { return k * wedges.size() + w; }
  [[nodiscard]] std::size_t x1(std::size_t w, std::size_t k) const { return (k - 2) * wedges.size() + w; }
};

inline WedgeExport export_wedge(const ShLieStructure& s, const Rat& w = Rat(2)) {
  if (s.variant != Variant::FromT2) throw std::invalid_argument("export_wedge: needs the t^2 variant");
  WedgeExport ex;
  ex.trunc = s.trunc;
  const std::size_t n = s.n();
  for (std::size_t k = 1; k <= 3; ++k)
    for (auto& t : lie::increasing_tuples(n, k)) ex.wedges.push_back(t);
  const std::size_t g = ex.wedges.size();
  const std::size_t n0 = g * (s.trunc + 1), n1 = g * (s.trunc - 1);

  complexes::GradedSpace sp{{n0, n1}};
  RatMatrix dv(n0, n0);
  auto add_wedge = [&](Vec coeffs, std::size_t other, std::size_t k, const Rat& c, std::size_t col) {
    // adds c * (sum_e coeffs_e e) ^ other  at power k into column col
    if (k > s.trunc) return;
    for (std::size_t e = 0; e < n; ++e) {
      if (coeffs[e].is_zero() || e == other) continue;
      const Rat sign = e < other ? Rat(1) : Rat(-1);
      const std::vector<std::size_t> t = e < other ? std::vector<std::size_t>{e, other}
                                                   : std::vector<std::size_t>{other, e};
      dv(ex.x0(ex.wedge_index(t), k), col) += c * sign * coeffs[e];
    }
  };
  for (std::size_t wi = 0; wi < g; ++wi) {
    const auto& t = ex.wedges[wi];
    for (std::size_t p = 0; p <= s.trunc; ++p) {
      const std::size_t col = ex.x0(wi, p);
      if (t.size() == 2) {
        for (int shift = 0; shift <= 1; ++shift) {
          const std::size_t k = p + static_cast<std::size_t>(shift);
          if (k > s.trunc) continue;
          const Vec v = (shift == 0 ? s.alpha0 : s.alpha1).eval({t[0], t[1]});
          for (std::size_t e = 0; e < n; ++e)
            if (!v[e].is_zero()) dv(ex.x0(ex.wedge_index({e}), k), col) += v[e];
        }
      } else if (t.size() == 3) {
        for (int shift = 0; shift <= 1; ++shift) {
          const lie::Cochain& al = shift == 0 ? s.alpha0 : s.alpha1;
          const std::size_t k = p + static_cast<std::size_t>(shift);
          add_wedge(al.eval({t[0], t[1]}), t[2], k, w, col);
          add_wedge(al.eval({t[0], t[2]}), t[1], k, -w, col);
          add_wedge(al.eval({t[1], t[2]}), t[0], k, w, col);
        }
      }
    }
  }

  complexes::GradedMap l1(sp, -1), sm(sp, 1);
  for (std::size_t wi = 0; wi < g; ++wi)
    for (std::size_t k = 2; k <= s.trunc; ++k) {
      l1.at(1)(ex.x0(wi, k), ex.x1(wi, k)) = Rat(1);
      sm.at(0)(ex.x1(wi, k), ex.x0(wi, k)) = Rat(-1);
    }
  const std::size_t f = 2 * g;
  RatMatrix eta(f, n0), lambda(n0, f);
  for (std::size_t i = 0; i < f; ++i) {
    eta(i, i) = Rat(1);
    lambda(i, i) = Rat(1);
  }
  ex.h = complexes::HomotopyData{sp, l1, f, eta, lambda, sm};
  ex.l2_0 = dv;
  ex.d_f = eta * dv * lambda;
  return ex;
}

/// Runs chain_extend on the wedge export and compares with the sh-Lie maps entrywise.
inline Report cross_check_engine(const ShLieStructure& s) {
  Report rep;
  const WedgeExport ex = export_wedge(s);
  rep.merge(complexes::verify_homotopy(ex.h), "export: ");
  rep.merge(complexes::check_l2_conditions(ex.h, ex.l2_0, ex.d_f), "export: ");
  if (!rep.ok()) return rep;
  const complexes::ChainExtension e = complexes::chain_extend(ex.h, ex.l2_0);
  rep.merge(complexes::verify_nilpotent(e), "engine: ");
  const std::size_t n = s.n();

  auto col_x0 = [&](const RatMatrix& m, std::size_t c) {  // Lambda^1 part of a column, as sh-Lie X0
    SVec out;
    for (std::size_t k = 0; k <= s.trunc; ++k)
      for (std::size_t a = 0; a < n; ++a) {
        const Rat& v = m(ex.x0(ex.wedge_index({a}), k), c);
        if (!v.is_zero()) out[s.x0(a, k)] = v;
      }
    return out;
  };
  auto col_x1 = [&](const RatMatrix& m, std::size_t c, bool only_lambda1) {
    SVec out;
    for (std::size_t k = 2; k <= s.trunc; ++k)
      for (std::size_t wi = 0; wi < ex.wedges.size(); ++wi) {
        const Rat& v = m(ex.x1(wi, k), c);
        if (v.is_zero()) continue;
        if (ex.wedges[wi].size() != 1) {
          if (only_lambda1) out[s.dim() + wi] = v;  // marks a stray component
          continue;
        }
        out[s.x1(ex.wedges[wi][0], k)] = v;
      }
    return out;
  };

  std::string w2, w2s, w3;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t p = 0; p <= s.trunc; ++p) {
        if (a != b) {
          const std::size_t wi = ex.wedge_index(a < b ? std::vector<std::size_t>{a, b} : std::vector<std::size_t>{b, a});
          SVec eng = col_x0(e.l2.at(0), ex.x0(wi, p));
          if (a > b)
            for (auto& [i, c] : eng) c = -c;
          if (w2.empty() && eng != s.l2(s.x0(a, p), s.x0(b, 0))) w2 = s.name(s.x0(a, p)) + ", " + s.name(s.x0(b, 0));
          if (p >= 2) {
            SVec eng1 = col_x1(e.l2.at(1), ex.x1(wi, p), true);
            for (auto& [i, c] : eng1) c = (a > b) ? c : -c;
            if (w2s.empty() && eng1 != s.l2(s.x1(a, p), s.x0(b, 0)))
              w2s = s.name(s.x1(a, p)) + ", " + s.name(s.x0(b, 0));
          }
        } else if (p >= 2 && w2s.empty() && !s.l2(s.x1(a, p), s.x0(b, 0)).empty()) {
          w2s = s.name(s.x1(a, p)) + ", " + s.name(s.x0(b, 0));
        }
      }
  for (std::size_t wi = 0; wi < ex.wedges.size(); ++wi) {
    const auto& t = ex.wedges[wi];
    if (t.size() != 3) continue;
    for (std::size_t p = 0; p <= s.trunc; ++p) {
      const SVec eng = col_x1(e.l3.at(0), ex.x0(wi, p), true);
      if (w3.empty() && eng != s.l3(s.x0(t[0], p), s.x0(t[1], 0), s.x0(t[2], 0)))
        w3 = s.name(s.x0(t[0], p)) + ", " + s.name(s.x0(t[1], 0)) + ", " + s.name(s.x0(t[2], 0));
    }
  }
  rep.add("engine l2 on Lambda^2 = sh-Lie l2 on X0 x X0", w2.empty(), w2);
  rep.add("engine l2 on starred Lambda^2 = -sh-Lie l2 on X1 x X0", w2s.empty(), w2s);
  rep.add("engine l3 on Lambda^3 = sh-Lie l3", w3.empty(), w3);
  return rep;
}

}  // namespace chainext::shlie
