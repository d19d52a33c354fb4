// lie.hpp
//
// Finite-dimensional Lie algebras over Q, alternating cochains C^p(A,A) for
// p <= 3, the composition and bracket of 2-cochains, the differential
// d = [alpha0, .] and deformation obstructions.

#pragma once

#include "chainext/exactla.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainext::lie {

/// All strictly increasing p-tuples from {0..n-1}, in lexicographic order.
inline std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t n, std::size_t p) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == p) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Alternating p-linear map A^p -> A stored on increasing index tuples.
class Cochain {
public:
  Cochain() = default;
  Cochain(std::size_t dim, std::size_t arity)
      : dim_(dim), arity_(arity), tuples_(increasing_tuples(dim, arity)), values_(tuples_.size(), Vec(dim)) {
    for (std::size_t i = 0; i < tuples_.size(); ++i) index_[tuples_[i]] = i;
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t arity() const { return arity_; }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& tuples() const { return tuples_; }

  /// Value on an arbitrary index tuple, applying the alternating sign.
  [[nodiscard]] Vec eval(std::vector<std::size_t> idx) const {
    check_arity(idx.size());
    const int sign = sort_with_sign(idx);
    if (sign == 0) return Vec(dim_);
    const Vec& v = values_[index_.at(idx)];
    return sign > 0 ? v : Rat(-1) * v;
  }

  /// Multilinear evaluation on arbitrary vectors.
  [[nodiscard]] Vec eval_vec(const std::vector<Vec>& args) const {
    check_arity(args.size());
    Vec out(dim_);
    std::vector<std::size_t> idx(arity_);
    auto rec = [&](auto&& self, std::size_t pos, const Rat& coef) -> void {
      if (pos == arity_) {
        axpy(out, coef, eval(idx));
        return;
      }
      for (std::size_t i = 0; i < dim_; ++i) {
        if (args[pos][i].is_zero()) continue;
        idx[pos] = i;
        self(self, pos + 1, coef * args[pos][i]);
      }
    };
    rec(rec, 0, Rat(1));
    return out;
  }

  /// Sets the value on a tuple (any order; the alternating sign is applied).
  void set(std::vector<std::size_t> idx, const Vec& value) {
    check_arity(idx.size());
    if (value.size() != dim_) throw std::invalid_argument("Cochain::set: value length mismatch");
    const int sign = sort_with_sign(idx);
    if (sign == 0) throw std::invalid_argument("Cochain::set: repeated index");
    values_[index_.at(idx)] = sign > 0 ? value : Rat(-1) * value;
  }
  void add_entry(std::vector<std::size_t> idx, std::size_t k, const Rat& c) {
    check_arity(idx.size());
    if (k >= dim_) throw std::out_of_range("Cochain: output index out of range");
    const int sign = sort_with_sign(idx);
    if (sign == 0) throw std::invalid_argument("Cochain: repeated index");
    values_[index_.at(idx)][k] += sign > 0 ? c : -c;
  }

  [[nodiscard]] const Vec& stored(std::size_t tuple_index) const { return values_[tuple_index]; }

  /// Coordinates: tuple-major, then output index.
  [[nodiscard]] Vec flatten() const {
    Vec out;
    out.reserve(values_.size() * dim_);
    for (const auto& v : values_) out.insert(out.end(), v.begin(), v.end());
    return out;
  }
  static Cochain unflatten(std::size_t dim, std::size_t arity, const Vec& flat) {
    Cochain c(dim, arity);
    if (flat.size() != c.values_.size() * dim) throw std::invalid_argument("Cochain::unflatten: length mismatch");
    for (std::size_t t = 0; t < c.values_.size(); ++t)
      for (std::size_t k = 0; k < dim; ++k) c.values_[t][k] = flat[t * dim + k];
    return c;
  }
  [[nodiscard]] std::size_t flat_size() const { return values_.size() * dim_; }

  [[nodiscard]] bool is_zero() const {
    for (const auto& v : values_)
      if (!chainext::is_zero(v)) return false;
    return true;
  }

  Cochain& operator+=(const Cochain& o) {
    check_same(o);
    for (std::size_t t = 0; t < values_.size(); ++t) axpy(values_[t], Rat(1), o.values_[t]);
    return *this;
  }
  Cochain& operator-=(const Cochain& o) {
    check_same(o);
    for (std::size_t t = 0; t < values_.size(); ++t) axpy(values_[t], Rat(-1), o.values_[t]);
    return *this;
  }
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(const Rat& s, Cochain c) {
    for (auto& v : c.values_) v = s * std::move(v);
    return c;
  }
  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.dim_ == b.dim_ && a.arity_ == b.arity_ && a.values_ == b.values_;
  }

private:
  static int sort_with_sign(std::vector<std::size_t>& idx) {
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
        if (idx[j] > idx[j + 1]) {
          std::swap(idx[j], idx[j + 1]);
          sign = -sign;
        }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      if (idx[i] == idx[i + 1]) return 0;
    return sign;
  }
  void check_arity(std::size_t n) const {
    if (n != arity_)
      throw std::invalid_argument("Cochain: expected " + std::to_string(arity_) + " arguments, got " +
                                  std::to_string(n));
  }
  void check_same(const Cochain& o) const {
    if (dim_ != o.dim_ || arity_ != o.arity_) throw std::invalid_argument("Cochain: shape mismatch");
  }

  std::size_t dim_ = 0;
  std::size_t arity_ = 0;
  std::vector<std::vector<std::size_t>> tuples_;
  std::vector<Vec> values_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
};

inline Vec basis_vec(std::size_t dim, std::size_t i) {
  Vec v(dim);
  v.at(i) = Rat(1);
  return v;
}

struct LieAlgebra {
  std::size_t dim = 0;
  std::vector<std::string> names;
  Cochain bracket;  // arity 2

  explicit LieAlgebra(std::size_t n = 0) : dim(n), bracket(n, 2) {
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
  }
};

inline void require_arity(const Cochain& c, std::size_t p, const char* who) {
  if (c.arity() != p)
    throw std::invalid_argument(std::string(who) + ": expected arity " + std::to_string(p) + ", got " +
                                std::to_string(c.arity()));
}

/// (ai aj)(x1,x2,x3) = ai(aj(x1,x2),x3) - ai(aj(x1,x3),x2) + ai(aj(x2,x3),x1).
inline Cochain nr_compose(const Cochain& ai, const Cochain& aj) {
  require_arity(ai, 2, "nr_compose");
  require_arity(aj, 2, "nr_compose");
  if (ai.dim() != aj.dim()) throw std::invalid_argument("nr_compose: dimension mismatch");
  const std::size_t n = ai.dim();
  Cochain out(n, 3);
  for (const auto& t : out.tuples()) {
    const Vec x1 = basis_vec(n, t[0]), x2 = basis_vec(n, t[1]), x3 = basis_vec(n, t[2]);
    Vec v = ai.eval_vec({aj.eval({t[0], t[1]}), x3});
    axpy(v, Rat(-1), ai.eval_vec({aj.eval({t[0], t[2]}), x2}));
    axpy(v, Rat(1), ai.eval_vec({aj.eval({t[1], t[2]}), x1}));
    out.set(t, v);
  }
  return out;
}

inline Cochain bracket2(const Cochain& ai, const Cochain& aj) { return nr_compose(ai, aj) + nr_compose(aj, ai); }

inline bool jacobi_check(const LieAlgebra& a) { return nr_compose(a.bracket, a.bracket).is_zero(); }

inline Cochain ce_differential(const LieAlgebra& a, const Cochain& beta) {
  if (beta.dim() != a.dim) throw std::invalid_argument("ce_differential: dimension mismatch");
  if (beta.arity() == 2) return bracket2(a.bracket, beta);
  if (beta.arity() != 1) throw std::invalid_argument("ce_differential: unsupported arity " + std::to_string(beta.arity()));
  const std::size_t n = a.dim;
  Cochain out(n, 2);
  for (const auto& t : out.tuples()) {
    const Vec x = basis_vec(n, t[0]), y = basis_vec(n, t[1]);
    Vec v = a.bracket.eval_vec({x, beta.eval({t[1]})});
    axpy(v, Rat(-1), a.bracket.eval_vec({y, beta.eval({t[0]})}));
    axpy(v, Rat(-1), beta.eval_vec({a.bracket.eval({t[0], t[1]})}));
    out.set(t, v);
  }
  return out;
}

/// Matrix of d : C^p -> C^{p+1} in flattened coordinates, p in {1, 2}.
inline RatMatrix differential_matrix(const LieAlgebra& a, std::size_t p) {
  const Cochain probe(a.dim, p);
  const std::size_t cols = probe.flat_size();
  const std::size_t rows = Cochain(a.dim, p + 1).flat_size();
  RatMatrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    Vec e(cols);
    e[c] = Rat(1);
    m.set_column(c, ce_differential(a, Cochain::unflatten(a.dim, p, e)).flatten());
  }
  return m;
}

struct H2Result {
  std::size_t dimension = 0;
  std::vector<Cochain> representatives;
};

inline H2Result h2(const LieAlgebra& a) {
  const RatMatrix d1 = differential_matrix(a, 1);
  const RatMatrix d2 = differential_matrix(a, 2);
  const std::size_t n2 = d1.rows();
  // Greedy complement: start from the coboundaries and add cocycles that raise the rank.
  std::vector<Vec> span;
  for (std::size_t c = 0; c < d1.cols(); ++c) span.push_back(d1.column(c));
  std::size_t r = span.empty() ? 0 : rank(RatMatrix::from_columns(span, n2));
  H2Result out;
  for (auto& z : kernel_basis(d2)) {
    span.push_back(z);
    const std::size_t r2 = rank(RatMatrix::from_columns(span, n2));
    if (r2 > r) {
      r = r2;
      out.representatives.push_back(Cochain::unflatten(a.dim, 2, z));
    } else {
      span.pop_back();
    }
  }
  out.dimension = out.representatives.size();
  return out;
}

/// rho_n = -sum_{i+j=n, i,j>=1} alpha_i alpha_j, with alphas[0] = alpha_1.
inline Cochain obstruction(const std::vector<Cochain>& alphas, std::size_t n) {
  if (n < 2 || alphas.size() + 1 < n)
    throw std::invalid_argument("obstruction: need alpha_1..alpha_" + std::to_string(n - 1));
  Cochain rho(alphas.front().dim(), 3);
  for (std::size_t i = 1; i < n; ++i) rho -= nr_compose(alphas[i - 1], alphas[n - i - 1]);
  return rho;
}

class DeformationPrecondition : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Order-m deformation equation residual: d alpha_m - rho_m (alpha_1 case: d alpha_1).
inline Cochain deformation_residual(const LieAlgebra& a, const std::vector<Cochain>& alphas, std::size_t m) {
  Cochain r = ce_differential(a, alphas.at(m - 1));
  if (m >= 2) r -= obstruction(alphas, m);
  return r;
}

/// Solves d alpha_n = rho_n for n = alphas.size() + 1. nullopt when [rho_n] != 0.
inline std::optional<Cochain> extend_deformation(const LieAlgebra& a, const std::vector<Cochain>& alphas) {
  if (alphas.empty()) throw std::invalid_argument("extend_deformation: need at least alpha_1");
  for (const auto& c : alphas) {
    require_arity(c, 2, "extend_deformation");
    if (c.dim() != a.dim) throw std::invalid_argument("extend_deformation: dimension mismatch");
  }
  for (std::size_t m = 1; m <= alphas.size(); ++m)
    if (!deformation_residual(a, alphas, m).is_zero())
      throw DeformationPrecondition("input fails its own deformation equation at order " + std::to_string(m));
  const std::size_t n = alphas.size() + 1;
  const Cochain rho = obstruction(alphas, n);
  auto x = solve(differential_matrix(a, 2), rho.flatten());
  if (!x) return std::nullopt;
  return Cochain::unflatten(a.dim, 2, *x);
}

inline std::string format_vec(const Vec& v, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    const Rat& c = v[k];
    if (out.empty()) {
      out += c.is_one() ? "" : (c == Rat(-1) ? "-" : c.pretty() + "*");
    } else {
      out += c.sign() < 0 ? " - " : " + ";
      const Rat a = c.sign() < 0 ? -c : c;
      out += a.is_one() ? "" : a.pretty() + "*";
    }
    out += names.at(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace chainext::lie
