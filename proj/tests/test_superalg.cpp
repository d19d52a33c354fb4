#include "chainext/superalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace chainext;
using namespace chainext::superalg;

namespace {

// x y even, th1 th2 odd, declared in this order.
GenSetPtr mixed() {
  return std::make_shared<const GenSet>(std::vector<GenSpec>{
      {"x", false, 0, 0, Kind::Other}, {"th1", true, 1, 0, Kind::Other}, {"y", false, 0, 0, Kind::Other},
      {"th2", true, -1, 0, Kind::Other}, {"th3", true, 1, 0, Kind::Other}});
}

/// Oracle: sort a word of generator indices into declaration order by adjacent swaps.
SuperPoly word_oracle(const GenSetPtr& g, std::vector<std::size_t> w) {
  int sign = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
      if (w[j] > w[j + 1]) {
        if ((*g)[w[j]].odd && (*g)[w[j + 1]].odd) sign = -sign;
        std::swap(w[j], w[j + 1]);
      }
  Monomial m(g->size(), 0);
  for (auto i : w) {
    if ((*g)[i].odd && m[i]) return SuperPoly(g);
    ++m[i];
  }
  return SuperPoly::monomial(g, m, Rat(sign));
}

SuperPoly word_product(const GenSetPtr& g, const std::vector<std::size_t>& w) {
  SuperPoly p = SuperPoly::constant(g, Rat(1));
  for (auto i : w) p = p * SuperPoly::generator(g, i);
  return p;
}

SuperPoly random_poly(std::mt19937_64& rng, const GenSetPtr& g, std::size_t terms, std::size_t len) {
  SuperPoly p(g);
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<std::size_t> w(rng() % (len + 1));
    for (auto& i : w) i = rng() % g->size();
    p += Rat(static_cast<long>(rng() % 5) - 2) * word_product(g, w);
  }
  return p;
}

/// Homogeneous random polynomial of fixed parity.
SuperPoly random_homogeneous(std::mt19937_64& rng, const GenSetPtr& g, bool odd) {
  SuperPoly p = random_poly(rng, g, 4, 3);
  return p.filter([&](const Monomial& m) { return p.mono_odd(m) == odd; });
}

int eps(const SuperPoly& p) { return p.is_zero() ? 0 : (*p.parity() ? 1 : 0); }

}  // namespace

TEST(SuperAlg, ProductMatchesWordOracle) {
  const auto g = mixed();
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::size_t> w(rng() % 6);
    for (auto& i : w) i = rng() % g->size();
    EXPECT_EQ(word_product(g, w), word_oracle(g, w));
  }
}

TEST(SuperAlg, BasicSigns) {
  const auto g = mixed();
  const auto t1 = SuperPoly::generator(g, "th1"), t3 = SuperPoly::generator(g, "th3");
  EXPECT_EQ(t3 * t1, -(t1 * t3));
  EXPECT_TRUE((t1 * t1).is_zero());
  EXPECT_EQ(parse_poly(g, "th3*th1"), -parse_poly(g, "th1*th3"));
  EXPECT_EQ(parse_poly(g, "-1/2*x^2*th1 + y").str(), "y - 1/2*x^2*th1");
}

TEST(SuperAlg, SupercommutativeAndAssociative) {
  const auto g = mixed();
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const bool pa = rng() % 2, pb = rng() % 2;
    const auto a = random_homogeneous(rng, g, pa), b = random_homogeneous(rng, g, pb);
    const auto c = random_poly(rng, g, 3, 3);
    EXPECT_EQ(a * b, Rat((pa && pb) ? -1 : 1) * (b * a));
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(SuperAlg, LeftRightDerivatives) {
  // dL f/dz = (-1)^{eps(z)(eps(f)+1)} dR f/dz for homogeneous f
  const auto g = mixed();
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const bool pf = rng() % 2;
    const auto f = random_homogeneous(rng, g, pf);
    for (std::size_t z = 0; z < g->size(); ++z) {
      const int s = ((*g)[z].odd && !pf) ? -1 : 1;
      EXPECT_EQ(left_deriv(f, z), Rat(s) * right_deriv(f, z));
    }
  }
  const auto f = parse_poly(g, "x*th1*th3");
  EXPECT_EQ(right_deriv(f, "th3"), parse_poly(g, "x*th1"));
  EXPECT_EQ(right_deriv(f, "th1"), parse_poly(g, "-x*th3"));
  EXPECT_EQ(left_deriv(f, "th1"), parse_poly(g, "x*th3"));
  EXPECT_EQ(right_deriv(f, "x"), parse_poly(g, "th1*th3"));
}

TEST(SuperAlg, RightDerivationLeibniz) {
  // right derivative in an odd generator is an odd right derivation
  const auto g = mixed();
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const auto u = random_poly(rng, g, 3, 3);
    const bool pv = rng() % 2;
    const auto v = random_homogeneous(rng, g, pv);
    const std::size_t z = 1;  // th1
    EXPECT_EQ(right_deriv(u * v, z), u * right_deriv(v, z) + Rat(pv ? -1 : 1) * (right_deriv(u, z) * v));
  }
}

TEST(SuperAlg, PoissonBracketSo3) {
  auto g = std::make_shared<const GenSet>(std::vector<GenSpec>{
      {"J1", false, 0, 0, Kind::Other}, {"J2", false, 0, 0, Kind::Other}, {"J3", false, 0, 0, Kind::Other}});
  PoissonTable t(g);
  auto J = [&](int i) { return SuperPoly::generator(g, static_cast<std::size_t>(i)); };
  t.set(0, 1, J(2));
  t.set(1, 2, J(0));
  t.set(2, 0, J(1));
  EXPECT_FALSE(poisson_jacobi_violation(t).has_value());
  // Casimir commutes with everything
  const auto cas = J(0) * J(0) + J(1) * J(1) + J(2) * J(2);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(poisson(cas, J(i), t).is_zero());
  // Leibniz and antisymmetry
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_poly(rng, g, 3, 2), b = random_poly(rng, g, 3, 2), c = random_poly(rng, g, 2, 2);
    EXPECT_EQ(poisson(a, b, t), -poisson(b, a, t));
    EXPECT_EQ(poisson(a, b * c, t), poisson(a, b, t) * c + b * poisson(a, c, t));
  }
  PoissonTable bad(g);
  bad.set(0, 1, J(2));
  bad.set(1, 2, J(0));
  bad.set(0, 2, J(0));  // Jacobiator on (J1,J2,J3) is J3
  EXPECT_TRUE(poisson_jacobi_violation(bad).has_value());
  EXPECT_THROW(bad.set(0, 0, J(1)), std::invalid_argument);
}

TEST(SuperAlg, AntibracketAxioms) {
  // phi even gh 0, C odd gh 1, phi* odd gh -1, C* even gh -2
  auto g = std::make_shared<const GenSet>(std::vector<GenSpec>{{"phi", false, 0, 0, Kind::Field},
                                                              {"C", true, 1, 0, Kind::Field},
                                                              {"phistar", true, -1, 0, Kind::Antifield},
                                                              {"Cstar", false, -2, 0, Kind::Antifield}});
  const std::vector<FieldPair> pairs{{0, 2}, {1, 3}};
  const auto s0 = parse_poly(g, "phistar*C");
  EXPECT_EQ(antibracket(s0, parse_poly(g, "phi"), pairs), parse_poly(g, "C"));
  EXPECT_EQ(antibracket(parse_poly(g, "phi"), parse_poly(g, "phistar"), pairs), parse_poly(g, "1"));
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const bool pf = rng() % 2, pg = rng() % 2, ph = rng() % 2;
    const auto f = random_homogeneous(rng, g, pf), h = random_homogeneous(rng, g, pg), k = random_homogeneous(rng, g, ph);
    // (F,G) = -(-1)^{(eF+1)(eG+1)} (G,F)
    const int s = ((eps(f) + 1) * (eps(h) + 1)) % 2 ? 1 : -1;
    EXPECT_EQ(antibracket(f, h, pairs), Rat(s) * antibracket(h, f, pairs));
    // graded Jacobi: (F,(G,H)) = ((F,G),H) + (-1)^{(eF+1)(eG+1)} (G,(F,H))
    const int t = ((eps(f) + 1) * (eps(h) + 1)) % 2 ? -1 : 1;
    EXPECT_EQ(antibracket(f, antibracket(h, k, pairs), pairs),
              antibracket(antibracket(f, h, pairs), k, pairs) + Rat(t) * antibracket(h, antibracket(f, k, pairs), pairs));
    // the bracket is odd
    const auto fh = antibracket(f, h, pairs);
    if (!fh.is_zero()) {
      EXPECT_EQ(*fh.parity(), (eps(f) + eps(h) + 1) % 2 == 1);
    }
  }
}

TEST(SuperAlg, MonomialCount) {
  // x, y even and one odd generator: degree <= 2 gives 1 + 3 + 5 monomials
  auto g = std::make_shared<const GenSet>(std::vector<GenSpec>{
      {"x", false, 0, 0, Kind::Other}, {"y", false, 0, 0, Kind::Other}, {"th", true, 1, 0, Kind::Other}});
  EXPECT_EQ(monomials_up_to(*g, 2).size(), 9u);
  // general count: sum over odd part of binomials
  EXPECT_EQ(monomials_up_to(*g, 4).size(), 15u + 10u);
}

TEST(SuperAlg, ParseErrors) {
  const auto g = mixed();
  EXPECT_THROW(parse_poly(g, "z"), std::invalid_argument);
  EXPECT_THROW(parse_poly(g, "x +"), std::invalid_argument);
  EXPECT_THROW(parse_poly(g, ""), std::invalid_argument);
  EXPECT_THROW(parse_poly(g, "x y"), std::invalid_argument);
}

TEST(SuperAlg, GhostAndParityBookkeeping) {
  const auto g = mixed();
  const auto p = parse_poly(g, "x*th1*th2 + y");
  EXPECT_EQ(p.ghost(), std::optional<int>(0));
  EXPECT_EQ(p.parity(), std::optional<bool>(false));
  EXPECT_FALSE(parse_poly(g, "x + th1").parity().has_value());
  EXPECT_EQ(p.max_degree(), 3u);
  EXPECT_EQ(p.truncate(2), parse_poly(g, "y"));
}
