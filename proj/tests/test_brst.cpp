#include "chainext/brst.hpp"
#include "chainext/io.hpp"

#include <gtest/gtest.h>

using namespace chainext;
using namespace chainext::brst;
using superalg::parse_poly;

namespace {

ConstraintSystem load(const std::string& name) {
  return io::parse_brst(io::read_file(std::string(CHAINEXT_SAMPLES_DIR) + "/" + name)).system;
}

/// l3 by its defining clauses, with no caching:
/// antighost 0: s(l2 l2 f); otherwise s(l2 l2 f + l3 l1 f).
SuperPoly l3_recursive(const BRSTExtension& e, const SuperPoly& f) {
  const auto& s = e.system();
  SuperPoly out = s.zero();
  for (const auto& [m, c] : f.terms()) {
    const SuperPoly mono = SuperPoly::monomial(s.gens, m, c);
    SuperPoly inner = e.l2(e.l2(mono));
    if (s.antighost(m) > 0) inner += l3_recursive(e, koszul_tate(s, mono));
    out += homotopy_s(s, inner);
  }
  return out;
}

}  // namespace

TEST(Brst, So3KoszulTateAndL2) {
  const auto s = load("brst_so3.brst");
  ASSERT_TRUE(validate_system(s).ok());
  const auto e = build_brst(s, 4);
  for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(e.l1(s.gen(s.P[a])), -s.gen(s.G[a]));
  EXPECT_EQ(e.l2(s.gen(s.P[0])), parse_poly(s.gens, "-P2*eta3 + P3*eta2"));
  EXPECT_EQ(e.l2(s.gen(s.eta[0])), parse_poly(s.gens, "-eta2*eta3"));
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_EQ(e.l2(s.gen(s.P[a])), l2_pa_closed_form(s, a));
    EXPECT_TRUE(homotopy_s(s, s.C[(a + 2) % 3][a][(a + 1) % 3]).is_zero());  // s(C) = 0 for constants
  }
}

TEST(Brst, So3L3VanishesAndSSquaredIsZero) {
  const auto s = load("brst_so3.brst");
  const auto e = build_brst(s, 4);
  for (const auto& m : basis(s, 4)) {
    const SuperPoly f = SuperPoly::monomial(s.gens, m);
    EXPECT_TRUE(e.l3(f).is_zero()) << f.str();
    EXPECT_TRUE(e.total(e.total(f).truncate(4)).truncate(4).is_zero()) << f.str();
  }
  EXPECT_TRUE(verify_brst(e, 4).ok()) << verify_brst(e, 4).summary();
}

TEST(Brst, HomotopyIdentitiesOnEveryMonomial) {
  for (const char* n : {"brst_so3.brst", "brst_toy.brst"}) {
    const auto s = load(n);
    for (const auto& m : basis(s, 4)) {
      const SuperPoly f = SuperPoly::monomial(s.gens, m);
      EXPECT_EQ(koszul_tate(s, sigma(s, f)) + sigma(s, koszul_tate(s, f)), nbar(s, f)) << n << " " << f.str();
      EXPECT_TRUE(koszul_tate(s, koszul_tate(s, f)).is_zero());
      if (s.antighost(m) == 0 && s.contains_g(m)) {
        EXPECT_TRUE(lambda_tilde(s, f).is_zero()) << f.str();
      }
      // lambda eta - 1 = l1 s + s l1: eta lambda restricts to the G-free part in degree 0
      const SuperPoly rhs = koszul_tate(s, homotopy_s(s, f)) + homotopy_s(s, koszul_tate(s, f));
      const SuperPoly lhs = (s.antighost(m) == 0 ? g_free_part(s, f) : s.zero()) - f;
      EXPECT_EQ(lhs, rhs) << f.str();
    }
  }
}

TEST(Brst, ToyHasNonzeroL3FromItsDefinition) {
  const auto s = load("brst_toy.brst");
  const auto e = build_brst(s, 4);
  EXPECT_EQ(e.l3(s.gen(s.G[1])), parse_poly(s.gens, "-x*P1*eta1*eta2"));
  std::size_t nonzero = 0;
  for (const auto& m : basis(s, 4)) {
    const SuperPoly f = SuperPoly::monomial(s.gens, m);
    const SuperPoly l3 = e.l3(f);
    if (!l3.is_zero()) ++nonzero;
    EXPECT_EQ(l3, l3_recursive(e, f)) << f.str();
    EXPECT_TRUE(e.total(e.total(f).truncate(4)).truncate(4).is_zero()) << f.str();
  }
  EXPECT_GT(nonzero, 0u);
  EXPECT_TRUE(verify_brst(e, 4).ok()) << verify_brst(e, 4).summary();
}

TEST(Brst, ToyClosedFormOnGFreeBrackets) {
  const auto s = load("brst_toy.brst");
  const auto e = build_brst(s, 4);
  // [C^1_12, G2] = [x, G2] = x is G-free, so l3(G2) = 1/2 [C, G2] P eta eta summed over (a,b)
  EXPECT_EQ(e.l3(s.gen(s.G[1])), l3_closed_form(s, s.gen(s.G[1])));
  EXPECT_EQ(e.l3(s.gen(s.x[0])), l3_closed_form(s, s.gen(s.x[0])));
}

TEST(Brst, CentralToyHasZeroL3) {
  const auto s = load("brst_toy_central.brst");
  const auto e = build_brst(s, 4);
  EXPECT_FALSE(constant_structure(s));
  for (const auto& m : basis(s, 4)) EXPECT_TRUE(e.l3(SuperPoly::monomial(s.gens, m)).is_zero());
  EXPECT_TRUE(verify_brst(e, 4).ok());
}

TEST(Brst, CorruptedL3BreaksNilpotency) {
  const auto s = load("brst_toy.brst");
  const auto e = build_brst(s, 4);
  bool broken = false;
  for (const auto& m : basis(s, 4)) {
    const SuperPoly f = SuperPoly::monomial(s.gens, m);
    auto bad = [&](const SuperPoly& g) { return e.l1(g) + e.l2(g) + Rat(2) * e.l3(g); };
    if (!bad(bad(f).truncate(4)).truncate(4).is_zero()) broken = true;
  }
  EXPECT_TRUE(broken);
}

TEST(Brst, EngineCrossCheck) {
  for (const char* n : {"brst_so3.brst", "brst_toy.brst", "brst_toy_central.brst"}) {
    const auto s = load(n);
    const auto e = build_brst(s, 4);
    const Report r = cross_check_engine(s, e, 4);
    EXPECT_TRUE(r.ok()) << n << "\n" << r.summary();
  }
}

TEST(Brst, InconsistentStructureIsRejected) {
  auto s = ConstraintSystem::make({}, 2);
  s.table.set(s.G[0], s.G[1], s.gen(s.G[0]));  // [G1,G2] = G1 but no structure function
  EXPECT_FALSE(validate_system(s).ok());
  EXPECT_THROW(build_brst(s, 3), BrstError);
  EXPECT_THROW(s.set_structure(0, 0, 1, SuperPoly::constant(s.gens, Rat(1))), std::invalid_argument);
}
