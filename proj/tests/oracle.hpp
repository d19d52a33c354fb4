// Test-side oracles that share no code with the library's elimination.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using QMatrix = std::vector<std::vector<mpq_class>>;

/// Rank by Bareiss fraction-free elimination after clearing denominators row by row.
inline std::size_t rank(const QMatrix& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (const auto& v : m[r]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m[r][c].get_num() * (l / m[r][c].get_den());
  }
  std::size_t rk = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rk < rows; ++c) {
    std::size_t p = rk;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rk]);
    for (std::size_t r = rk + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) a[r][k] = (a[rk][c] * a[r][k] - a[r][c] * a[rk][k]) / prev;
      a[r][c] = 0;
    }
    prev = a[rk][c];
    ++rk;
  }
  return rk;
}

inline QMatrix zeros(std::size_t r, std::size_t c) { return QMatrix(r, std::vector<mpq_class>(c, 0)); }

/// Structure constants: bracket[{i,j}] = vector of coefficients, i < j.
struct Lie {
  std::size_t n = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<mpq_class>> c;

  [[nodiscard]] std::vector<mpq_class> br(std::size_t i, std::size_t j) const {
    std::vector<mpq_class> out(n, 0);
    if (i == j) return out;
    const bool flip = i > j;
    auto it = c.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
    if (it == c.end()) return out;
    for (std::size_t k = 0; k < n; ++k) out[k] = flip ? -it->second[k] : it->second[k];
    return out;
  }
  void set(std::size_t i, std::size_t j, std::size_t k, long v) {
    auto& slot = c[{i, j}];
    slot.resize(n, 0);
    slot[k] += v;
  }
};

/// dim H^2 by the textbook Chevalley-Eilenberg formulas on alternating cochains.
inline std::size_t h2_dim(const Lie& g) {
  const std::size_t n = g.n;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::vector<std::size_t>> triples;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) triples.push_back({i, j, k});
  auto pidx = [&](std::size_t i, std::size_t j) -> std::pair<std::size_t, int> {
    if (i == j) return {0, 0};
    for (std::size_t t = 0; t < pairs.size(); ++t)
      if (pairs[t] == std::make_pair(std::min(i, j), std::max(i, j))) return {t, i < j ? 1 : -1};
    return {0, 0};
  };
  // C^1 -> C^2: (d g)(x,y) = [x, g y] - [y, g x] - g [x,y].  Coordinates (input, output).
  QMatrix d1 = zeros(pairs.size() * n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t o = 0; o < n; ++o) {
      const std::size_t col = a * n + o;  // gamma(e_a) = e_o
      for (std::size_t t = 0; t < pairs.size(); ++t) {
        const auto [x, y] = pairs[t];
        std::vector<mpq_class> v(n, 0);
        if (y == a) {
          auto b = g.br(x, o);
          for (std::size_t k = 0; k < n; ++k) v[k] += b[k];
        }
        if (x == a) {
          auto b = g.br(y, o);
          for (std::size_t k = 0; k < n; ++k) v[k] -= b[k];
        }
        v[o] -= g.br(x, y)[a];
        for (std::size_t k = 0; k < n; ++k) d1[t * n + k][col] += v[k];
      }
    }
  // C^2 -> C^3
  QMatrix d2 = zeros(triples.size() * n, pairs.size() * n);
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t o = 0; o < n; ++o) {
      const std::size_t col = p * n + o;
      auto beta = [&](std::size_t i, std::size_t j) {
        std::vector<mpq_class> v(n, 0);
        auto [t, s] = pidx(i, j);
        if (s != 0 && t == p) v[o] = s;
        return v;
      };
      auto beta_lin = [&](const std::vector<mpq_class>& u, std::size_t j) {
        std::vector<mpq_class> v(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
          if (u[i] == 0) continue;
          auto b = beta(i, j);
          for (std::size_t k = 0; k < n; ++k) v[k] += u[i] * b[k];
        }
        return v;
      };
      auto br_lin = [&](std::size_t i, const std::vector<mpq_class>& u) {
        std::vector<mpq_class> v(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
          if (u[j] == 0) continue;
          auto b = g.br(i, j);
          for (std::size_t k = 0; k < n; ++k) v[k] += u[j] * b[k];
        }
        return v;
      };
      for (std::size_t t = 0; t < triples.size(); ++t) {
        const std::size_t x = triples[t][0], y = triples[t][1], z = triples[t][2];
        std::vector<mpq_class> v(n, 0);
        auto acc = [&](const std::vector<mpq_class>& w, int s) {
          for (std::size_t k = 0; k < n; ++k) v[k] += s * w[k];
        };
        acc(br_lin(x, beta(y, z)), 1);
        acc(br_lin(y, beta(x, z)), -1);
        acc(br_lin(z, beta(x, y)), 1);
        acc(beta_lin(g.br(x, y), z), -1);
        acc(beta_lin(g.br(x, z), y), 1);
        acc(beta_lin(g.br(y, z), x), -1);
        for (std::size_t k = 0; k < n; ++k) d2[t * n + k][col] += v[k];
      }
    }
  const std::size_t c2 = pairs.size() * n;
  const std::size_t r2 = triples.empty() ? 0 : rank(d2);
  const std::size_t r1 = pairs.empty() ? 0 : rank(d1);
  return c2 - r2 - r1;
}

}  // namespace oracle
