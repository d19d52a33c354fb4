// fuzz.hpp
//
// Random chain-extension instances. Each instance is first written in an
// adapted basis where every X_p splits as (cycles-with-no-boundary | B_p)
// and l1 is an identity between matching pieces, then hidden behind a random
// change of basis in every degree. Conditions (i)-(iii) hold by construction,
// but the caller still rejects anything check_l2_conditions does not accept.

#pragma once

#include "chainext/complexes.hpp"

#include <cstdint>
#include <random>

namespace chainext::complexes {

struct FuzzInstance {
  HomotopyData h;
  RatMatrix l2_0;
  RatMatrix d_f;
};

namespace detail {

inline long small_int(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline RatMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo = -2, long hi = 2) {
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rat(small_int(rng, lo, hi));
  return m;
}

inline std::pair<RatMatrix, RatMatrix> random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    RatMatrix m = random_matrix(rng, n, n);
    if (auto inv = inverse(m)) return {m, *inv};
  }
}

}  // namespace detail

/// Degrees 0..3 with dims X0 = f+c1, X1 = c1+c2, X2 = c2+c3, X3 = c3.
inline FuzzInstance random_instance(std::mt19937_64& rng) {
  using detail::small_int;
  const std::size_t f = static_cast<std::size_t>(small_int(rng, 1, 3));
  const std::size_t c1 = static_cast<std::size_t>(small_int(rng, 0, 3));
  const std::size_t c2 = static_cast<std::size_t>(small_int(rng, 0, 3));
  const std::size_t c3 = static_cast<std::size_t>(small_int(rng, 0, 3));
  const std::size_t c[4] = {0, c1, c2, c3};

  GradedSpace sp{{f + c1, c1 + c2, c2 + c3, c3}};
  // Adapted layout: X0 = [F | B0], X_p = [C_p | B_p] for p >= 1 with dim C_p = c_p, dim B_p = c_{p+1}.
  auto b_off = [&](int p) -> std::size_t { return p == 0 ? f : c[p]; };

  GradedMap l1(sp, -1), s(sp, 1);
  for (int p = 1; p <= 3; ++p)
    for (std::size_t i = 0; i < c[p]; ++i) {
      l1.at(p)(b_off(p - 1) + i, i) = Rat(1);
      s.at(p - 1)(i, b_off(p - 1) + i) = Rat(-1);
    }
  RatMatrix eta(f, sp.dim(0)), lambda(sp.dim(0), f);
  for (std::size_t i = 0; i < f; ++i) {
    eta(i, i) = Rat(1);
    lambda(i, i) = Rat(1);
  }

  // D with D^2 = 0 on F: conjugate of a standard square-zero block.
  const std::size_t r = static_cast<std::size_t>(small_int(rng, 0, static_cast<long>(f / 2)));
  RatMatrix e(f, f);
  for (std::size_t i = 0; i < r; ++i) e(i, r + i) = Rat(1);
  auto [u, uinv] = detail::random_invertible(rng, f);
  const RatMatrix d = u * e * uinv;

  RatMatrix l2_0(sp.dim(0), sp.dim(0));
  const RatMatrix y = detail::random_matrix(rng, c1, f);
  const RatMatrix z = detail::random_matrix(rng, c1, c1);
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j) l2_0(i, j) = d(i, j);
  for (std::size_t i = 0; i < c1; ++i) {
    for (std::size_t j = 0; j < f; ++j) l2_0(f + i, j) = y(i, j);
    for (std::size_t j = 0; j < c1; ++j) l2_0(f + i, f + j) = z(i, j);
  }

  std::vector<RatMatrix> t, tinv;
  for (int p = 0; p <= 3; ++p) {
    auto [m, mi] = detail::random_invertible(rng, sp.dim(p));
    t.push_back(std::move(m));
    tinv.push_back(std::move(mi));
  }
  for (int p = 1; p <= 3; ++p) l1.at(p) = t[p - 1] * l1.at(p) * tinv[p];
  for (int p = 0; p <= 2; ++p) s.at(p) = t[p + 1] * s.at(p) * tinv[p];
  s.at(3) = RatMatrix(0, sp.dim(3));

  FuzzInstance out;
  out.h = HomotopyData{sp, l1, f, eta * tinv[0], t[0] * lambda, s};
  out.l2_0 = t[0] * l2_0 * tinv[0];
  out.d_f = d;
  return out;
}

struct FuzzSummary {
  std::size_t generated = 0;
  std::size_t rejected = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;
};

/// Builds `count` accepted instances and runs the full verification on each.
inline FuzzSummary run_fuzz(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  FuzzSummary sum;
  while (sum.generated < count) {
    FuzzInstance inst = random_instance(rng);
    if (!check_l2_conditions(inst.h, inst.l2_0, inst.d_f).ok() || !verify_homotopy(inst.h).ok()) {
      ++sum.rejected;
      continue;
    }
    ++sum.generated;
    const ChainExtension e = chain_extend(inst.h, inst.l2_0);
    Report rep = verify_nilpotent(e);
    rep.merge(verify_vanishing(e));
    const std::size_t expect = homology_dim(inst.d_f);
    const std::size_t got = total_homology_dims(e);
    rep.add("H(X,l) = H(F,D)", got == expect, std::to_string(got) + " vs " + std::to_string(expect));
    if (rep.ok()) {
      ++sum.passed;
    } else {
      sum.failures.push_back("instance " + std::to_string(sum.generated) + ": " + rep.first_failure()->name);
    }
  }
  return sum;
}

}  // namespace chainext::complexes
