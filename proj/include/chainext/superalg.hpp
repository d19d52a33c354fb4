// superalg.hpp
//
// Supercommutative polynomials over Q in finitely many generators, each even
// or odd, with ghost and antighost bookkeeping. A monomial is an exponent
// vector in declaration order (odd exponents are 0 or 1); that order is the
// normal order, so reordering a product costs the Koszul sign of the odd
// transpositions.

#pragma once

#include "chainext/rational.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chainext::superalg {

enum class Kind { Coordinate, Constraint, Ghost, Antighost, Field, Antifield, Other };

struct GenSpec {
  std::string name;
  bool odd = false;
  int ghost = 0;
  int antighost = 0;
  Kind kind = Kind::Other;
};

class GenSet {
public:
  explicit GenSet(std::vector<GenSpec> gens) : gens_(std::move(gens)) {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].name.empty()) throw std::invalid_argument("GenSet: empty generator name");
      if (!by_name_.emplace(gens_[i].name, i).second)
        throw std::invalid_argument("GenSet: duplicate generator '" + gens_[i].name + "'");
    }
  }
  [[nodiscard]] std::size_t size() const { return gens_.size(); }
  [[nodiscard]] const GenSpec& operator[](std::size_t i) const { return gens_.at(i); }
  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] std::size_t index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
  }

private:
  std::vector<GenSpec> gens_;
  std::map<std::string, std::size_t> by_name_;
};

using GenSetPtr = std::shared_ptr<const GenSet>;
using Monomial = std::vector<unsigned>;

/// Monomials sorted by total degree, then by exponents in declaration order (higher first).
struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    return a > b;
  }
};

inline unsigned mono_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

/// Product of two normal-ordered monomials: sign (0 if an odd generator repeats) and result.
inline std::pair<int, Monomial> mono_mul(const GenSet& g, const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  int sign = 1;
  // odd generators of a that sit to the right of an odd generator of b in normal order
  std::size_t odd_a_after = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (g[i].odd && a[i]) ++odd_a_after;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (g[i].odd) {
      if (a[i]) --odd_a_after;
      if (a[i] && b[i]) return {0, {}};
      if (b[i] && (odd_a_after % 2)) sign = -sign;
    }
    out[i] = a[i] + b[i];
  }
  return {sign, out};
}

class SuperPoly {
public:
  using Terms = std::map<Monomial, Rat, MonoLess>;

  SuperPoly() = default;
  explicit SuperPoly(GenSetPtr g) : gens_(std::move(g)) {}

  static SuperPoly constant(GenSetPtr g, const Rat& c) {
    SuperPoly p(g);
    p.add_term(Monomial(p.gens_->size(), 0), c);
    return p;
  }
  static SuperPoly generator(GenSetPtr g, std::size_t i) {
    SuperPoly p(g);
    Monomial m(p.gens_->size(), 0);
    m.at(i) = 1;
    p.add_term(m, Rat(1));
    return p;
  }
  static SuperPoly generator(GenSetPtr g, std::string_view name) {
    const std::size_t i = g->index(name);
    return generator(std::move(g), i);
  }
  static SuperPoly monomial(GenSetPtr g, const Monomial& m, const Rat& c = Rat(1)) {
    SuperPoly p(g);
    p.add_term(m, c);
    return p;
  }

  [[nodiscard]] const GenSetPtr& gens() const { return gens_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rat& c) {
    if (!gens_) throw std::logic_error("SuperPoly: no generator set");
    if (m.size() != gens_->size()) throw std::invalid_argument("SuperPoly: monomial length mismatch");
    for (std::size_t i = 0; i < m.size(); ++i)
      if ((*gens_)[i].odd && m[i] > 1) return;
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  [[nodiscard]] Rat coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  SuperPoly& operator+=(const SuperPoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SuperPoly& operator-=(const SuperPoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
  friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
  friend SuperPoly operator-(SuperPoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend SuperPoly operator*(const Rat& s, SuperPoly a) {
    if (s.is_zero()) {
      a.terms_.clear();
      return a;
    }
    for (auto& [m, c] : a.terms_) c *= s;
    return a;
  }
  friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
    if (!a.gens_ || !b.gens_) throw std::logic_error("SuperPoly: no generator set");
    if (a.gens_ != b.gens_) throw std::invalid_argument("SuperPoly: generator-set mismatch");
    SuperPoly out(a.gens_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        auto [sign, m] = mono_mul(*a.gens_, ma, mb);
        if (sign != 0) out.add_term(m, sign > 0 ? ca * cb : -(ca * cb));
      }
    return out;
  }
  SuperPoly& operator*=(const SuperPoly& o) { return *this = *this * o; }

  friend bool operator==(const SuperPoly& a, const SuperPoly& b) { return a.terms_ == b.terms_; }

  [[nodiscard]] bool mono_odd(const Monomial& m) const {
    unsigned k = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if ((*gens_)[i].odd) k += m[i];
    return k % 2;
  }
  [[nodiscard]] int mono_ghost(const Monomial& m) const {
    int g = 0;
    for (std::size_t i = 0; i < m.size(); ++i) g += static_cast<int>(m[i]) * (*gens_)[i].ghost;
    return g;
  }
  [[nodiscard]] int mono_antighost(const Monomial& m) const {
    int g = 0;
    for (std::size_t i = 0; i < m.size(); ++i) g += static_cast<int>(m[i]) * (*gens_)[i].antighost;
    return g;
  }

  /// Parity if every term has the same parity; nullopt otherwise (zero is even).
  [[nodiscard]] std::optional<bool> parity() const {
    std::optional<bool> p;
    for (const auto& [m, c] : terms_) {
      const bool o = mono_odd(m);
      if (p && *p != o) return std::nullopt;
      p = o;
    }
    return p.value_or(false);
  }
  [[nodiscard]] std::optional<int> ghost() const {
    std::optional<int> g;
    for (const auto& [m, c] : terms_) {
      const int v = mono_ghost(m);
      if (g && *g != v) return std::nullopt;
      g = v;
    }
    return g;
  }
  [[nodiscard]] std::optional<unsigned> min_degree() const {
    std::optional<unsigned> d;
    for (const auto& [m, c] : terms_) d = d ? std::min(*d, mono_degree(m)) : mono_degree(m);
    return d;
  }
  [[nodiscard]] unsigned max_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
  }

  /// Terms satisfying a predicate on the monomial.
  template <class Pred>
  [[nodiscard]] SuperPoly filter(Pred pred) const {
    SuperPoly out(gens_);
    for (const auto& [m, c] : terms_)
      if (pred(m)) out.terms_.emplace(m, c);
    return out;
  }
  [[nodiscard]] SuperPoly truncate(unsigned cap) const {
    return filter([cap](const Monomial& m) { return mono_degree(m) <= cap; });
  }

  [[nodiscard]] std::string mono_str(const Monomial& m) const {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (!out.empty()) out += "*";
      out += (*gens_)[i].name;
      if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out;
  }

  /// Human-readable form, e.g. "-1/2*P1*eta2 + x^2"; parse() reads it back.
  [[nodiscard]] std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      const std::string ms = mono_str(m);
      const Rat a = c.sign() < 0 ? -c : c;
      if (first) {
        if (c.sign() < 0) out += "-";
      } else {
        out += c.sign() < 0 ? " - " : " + ";
      }
      first = false;
      if (ms.empty()) {
        out += a.pretty();
      } else {
        if (!a.is_one()) out += a.pretty() + "*";
        out += ms;
      }
    }
    return out;
  }

private:
  void adopt(const SuperPoly& o) {
    if (!gens_) gens_ = o.gens_;
    if (o.gens_ && gens_ != o.gens_) throw std::invalid_argument("SuperPoly: generator-set mismatch");
  }

  GenSetPtr gens_;
  Terms terms_;
};

/// Parses sums of products such as "-1/2*P1*eta2 + x^2 - 3". Factors are multiplied in
/// the written order, so "eta2*eta1" normalizes to "-eta1*eta2".
inline SuperPoly parse_poly(const GenSetPtr& g, std::string_view text) {
  SuperPoly out(g);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) -> SuperPoly {
    throw std::invalid_argument("polynomial '" + std::string(text) + "': " + why);
  };
  skip();
  if (i == text.size()) fail("empty");
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected + or - at position " + std::to_string(i));
    }
    first = false;
    SuperPoly term = SuperPoly::constant(g, Rat(sign));
    bool need_factor = true;
    while (need_factor) {
      skip();
      if (i == text.size()) fail("dangling operator");
      const std::size_t start = i;
      if (std::isdigit(static_cast<unsigned char>(text[i]))) {
        while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
        term = Rat::parse(text.substr(start, i - start)) * term;
      } else if (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_') {
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '\''))
          ++i;
        const std::string name(text.substr(start, i - start));
        auto idx = g->find(name);
        if (!idx) fail("unknown generator '" + name + "'");
        unsigned power = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          const std::size_t ps = i;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
          if (ps == i) fail("missing exponent after '^'");
          power = static_cast<unsigned>(std::stoul(std::string(text.substr(ps, i - ps))));
        }
        const SuperPoly gen = SuperPoly::generator(g, *idx);
        for (unsigned k = 0; k < power; ++k) term = term * gen;
        if (power == 0) term = term * SuperPoly::constant(g, Rat(1));
      } else {
        fail(std::string("unexpected character '") + text[i] + "'");
      }
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
      } else {
        need_factor = false;
      }
    }
    out += term;
  }
  return out;
}

/// Right derivation of the given parity from its values on generators:
/// D(uv) = u D(v) + (-1)^{parity * eps(v)} D(u) v.
inline SuperPoly right_derivation(const SuperPoly& f, bool odd,
                                  const std::function<SuperPoly(std::size_t)>& on_gen) {
  const GenSetPtr& g = f.gens();
  SuperPoly out(g);
  if (!g) return out;
  const std::size_t n = g->size();
  std::vector<std::optional<SuperPoly>> cache(n);
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i]) continue;
      if (!cache[i]) cache[i] = on_gen(i);
      if (cache[i]->is_zero()) continue;
      unsigned odd_after = 0;
      for (std::size_t j = i + 1; j < n; ++j)
        if ((*g)[j].odd) odd_after += m[j];
      Monomial before(n, 0), after(n, 0);
      for (std::size_t j = 0; j < i; ++j) before[j] = m[j];
      before[i] = m[i] - 1;
      for (std::size_t j = i + 1; j < n; ++j) after[j] = m[j];
      Rat coef = c * Rat(static_cast<long>(m[i]));
      if (odd && (odd_after % 2)) coef = -coef;
      out += coef * (SuperPoly::monomial(g, before) * *cache[i] * SuperPoly::monomial(g, after));
    }
  }
  return out;
}

inline SuperPoly right_deriv(const SuperPoly& f, std::size_t gen) {
  const GenSetPtr& g = f.gens();
  if (!g || gen >= g->size()) throw std::invalid_argument("right_deriv: unknown generator");
  SuperPoly out(g);
  for (const auto& [m, c] : f.terms()) {
    if (!m[gen]) continue;
    unsigned odd_after = 0;
    for (std::size_t j = gen + 1; j < m.size(); ++j)
      if ((*g)[j].odd) odd_after += m[j];
    Monomial r = m;
    --r[gen];
    Rat coef = c * Rat(static_cast<long>(m[gen]));
    if ((*g)[gen].odd && (odd_after % 2)) coef = -coef;
    out.add_term(r, coef);
  }
  return out;
}

inline SuperPoly left_deriv(const SuperPoly& f, std::size_t gen) {
  const GenSetPtr& g = f.gens();
  if (!g || gen >= g->size()) throw std::invalid_argument("left_deriv: unknown generator");
  SuperPoly out(g);
  for (const auto& [m, c] : f.terms()) {
    if (!m[gen]) continue;
    unsigned odd_before = 0;
    for (std::size_t j = 0; j < gen; ++j)
      if ((*g)[j].odd) odd_before += m[j];
    Monomial r = m;
    --r[gen];
    Rat coef = c * Rat(static_cast<long>(m[gen]));
    if ((*g)[gen].odd && (odd_before % 2)) coef = -coef;
    out.add_term(r, coef);
  }
  return out;
}

inline SuperPoly right_deriv(const SuperPoly& f, std::string_view name) {
  return right_deriv(f, f.gens()->index(name));
}
inline SuperPoly left_deriv(const SuperPoly& f, std::string_view name) {
  return left_deriv(f, f.gens()->index(name));
}

/// Poisson brackets of even generator pairs; filled antisymmetrically.
class PoissonTable {
public:
  explicit PoissonTable(GenSetPtr g) : gens_(std::move(g)) {}

  void set(std::size_t u, std::size_t v, const SuperPoly& value) {
    if ((*gens_)[u].odd || (*gens_)[v].odd)
      throw std::invalid_argument("PoissonTable: only even generators carry brackets");
    if (u == v) {
      if (!value.is_zero()) throw std::invalid_argument("PoissonTable: [u,u] must vanish for even u");
      return;
    }
    entries_[{u, v}] = value;
    entries_[{v, u}] = -value;
  }

  [[nodiscard]] SuperPoly get(std::size_t u, std::size_t v) const {
    auto it = entries_.find({u, v});
    return it == entries_.end() ? SuperPoly(gens_) : it->second;
  }
  [[nodiscard]] const std::map<std::pair<std::size_t, std::size_t>, SuperPoly>& entries() const { return entries_; }
  [[nodiscard]] const GenSetPtr& gens() const { return gens_; }

private:
  GenSetPtr gens_;
  std::map<std::pair<std::size_t, std::size_t>, SuperPoly> entries_;
};

inline SuperPoly poisson(const SuperPoly& f, const SuperPoly& g, const PoissonTable& table) {
  SuperPoly out(table.gens());
  std::map<std::size_t, SuperPoly> df, dg;
  for (const auto& [uv, val] : table.entries()) {
    if (val.is_zero()) continue;
    auto a = df.find(uv.first);
    if (a == df.end()) a = df.emplace(uv.first, right_deriv(f, uv.first)).first;
    if (a->second.is_zero()) continue;
    auto b = dg.find(uv.second);
    if (b == dg.end()) b = dg.emplace(uv.second, left_deriv(g, uv.second)).first;
    if (b->second.is_zero()) continue;
    out += a->second * val * b->second;
  }
  return out;
}

/// Jacobi identity of the bracket on all triples of even generators.
inline std::optional<std::string> poisson_jacobi_violation(const PoissonTable& table) {
  const GenSetPtr& g = table.gens();
  std::vector<std::size_t> even;
  for (std::size_t i = 0; i < g->size(); ++i)
    if (!(*g)[i].odd) even.push_back(i);
  for (std::size_t a = 0; a < even.size(); ++a)
    for (std::size_t b = a + 1; b < even.size(); ++b)
      for (std::size_t c = b + 1; c < even.size(); ++c) {
        const auto u = SuperPoly::generator(g, even[a]);
        const auto v = SuperPoly::generator(g, even[b]);
        const auto w = SuperPoly::generator(g, even[c]);
        const SuperPoly j = poisson(u, poisson(v, w, table), table) + poisson(v, poisson(w, u, table), table) +
                            poisson(w, poisson(u, v, table), table);
        if (!j.is_zero())
          return "Jacobi fails on (" + (*g)[even[a]].name + ", " + (*g)[even[b]].name + ", " + (*g)[even[c]].name +
                 "): " + j.str();
      }
  return std::nullopt;
}

struct FieldPair {
  std::size_t field;
  std::size_t antifield;
};

/// (f,g) = sum_A dR f/d phi^A . dL g/d phi*_A - dR f/d phi*_A . dL g/d phi^A
inline SuperPoly antibracket(const SuperPoly& f, const SuperPoly& g, const std::vector<FieldPair>& pairs) {
  SuperPoly out(f.gens() ? f.gens() : g.gens());
  for (const auto& p : pairs) {
    const SuperPoly a = right_deriv(f, p.field);
    if (!a.is_zero()) out += a * left_deriv(g, p.antifield);
    const SuperPoly b = right_deriv(f, p.antifield);
    if (!b.is_zero()) out -= b * left_deriv(g, p.field);
  }
  return out;
}

/// Every normal-ordered monomial with total degree <= cap, filtered by a predicate.
inline std::vector<Monomial> monomials_up_to(const GenSet& g, unsigned cap,
                                             const std::function<bool(const Monomial&)>& keep = {}) {
  std::vector<Monomial> out;
  Monomial m(g.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == g.size()) {
      if (!keep || keep(m)) out.push_back(m);
      return;
    }
    const unsigned maxe = g[i].odd ? std::min(1u, left) : left;
    for (unsigned e = 0; e <= maxe; ++e) {
      m[i] = e;
      self(self, i + 1, left - e);
    }
    m[i] = 0;
  };
  rec(rec, 0, cap);
  std::sort(out.begin(), out.end(), MonoLess{});
  return out;
}

}  // namespace chainext::superalg
