#include "chainext/bv.hpp"
#include "chainext/io.hpp"

#include <gtest/gtest.h>

using namespace chainext;
using namespace chainext::bv;
using superalg::parse_poly;

namespace {

io::BvFile load(const std::string& name) {
  return io::parse_bv(io::read_file(std::string(CHAINEXT_SAMPLES_DIR) + "/" + name));
}

BVModel two_pair(unsigned cap = 4) {
  return BVModel::make({{"phi", "phistar", false, 0}, {"C", "Cstar", true, 1}}, cap);
}

}  // namespace

TEST(Bv, ModelBookkeeping) {
  const BVModel m = two_pair();
  const auto& g = *m.gens;
  EXPECT_EQ(g[*g.find("phistar")].ghost, -1);
  EXPECT_TRUE(g[*g.find("phistar")].odd);
  EXPECT_EQ(g[*g.find("Cstar")].ghost, -2);
  EXPECT_FALSE(g[*g.find("Cstar")].odd);
}

TEST(Bv, S0DifferentialAndMaster) {
  const BVModel m = two_pair();
  const auto s0 = parse_poly(m.gens, "phistar*C");
  EXPECT_TRUE(master_check(m, s0));
  EXPECT_EQ(s0_differential(m, s0, parse_poly(m.gens, "phi")), parse_poly(m.gens, "C"));
  EXPECT_THROW(master_check(m, parse_poly(m.gens, "C")), BVError);
  EXPECT_THROW(master_check(m, parse_poly(m.gens, "phi*C*Cstar")), BVError);  // ghost -1
}

TEST(Bv, CocycleSearch) {
  const BVModel m = two_pair();
  const auto s0 = parse_poly(m.gens, "phistar*C");
  const auto s1 = find_cocycle(m, s0);
  ASSERT_TRUE(s1.has_value());
  EXPECT_EQ(*s1, parse_poly(m.gens, "phi*C*phistar"));
  EXPECT_TRUE(m.bracket(s0, *s1).is_zero());
  EXPECT_TRUE(m.bracket(*s1, *s1).is_zero());
}

TEST(Bv, TwoPairSatisfiesEveryIdentity) {
  const auto f = load("bv_two_pair.bv");
  ASSERT_EQ(f.problem.order(), 1u);
  EXPECT_TRUE(obstruction_R(f.problem, 2).is_zero());
  const auto t = deformation_maps(f.problem, 4);
  const Report r = verify_deformation_maps(t);
  EXPECT_TRUE(r.ok()) << r.summary();
  // S^2 on generators and a few composites, written out
  const auto& m = t.model();
  for (const char* p : {"phi", "C", "phistar", "Cstar", "phi*C", "phi^2*Cstar", "C*phistar"}) {
    const auto poly = parse_poly(m.gens, p);
    const auto mono = poly.terms().begin()->first;
    for (std::size_t k = 0; k <= 4; ++k) EXPECT_TRUE(t.total(t.total(t.unit(false, mono, k))).is_zero()) << p;
    for (std::size_t k = 2; k <= 4; ++k) EXPECT_TRUE(t.total(t.total(t.unit(true, mono, k))).is_zero()) << p;
  }
  EXPECT_TRUE(cross_check_engine(t).ok());
}

TEST(Bv, GhostCeModelHasObstruction) {
  const auto f = load("bv_ghost_ce.bv");
  const auto& m = f.problem.model;
  const SuperPoly r2 = obstruction_R(f.problem, 2);
  EXPECT_FALSE(r2.is_zero());
  EXPECT_EQ(r2, m.bracket(f.problem.S[1], f.problem.S[1]));
  // the obstruction is s0-closed trivially (S0 = 0) and has ghost number 1
  EXPECT_EQ(r2.ghost(), std::optional<int>(1));
  const auto t = deformation_maps(f.problem, 4);
  const Report r = verify_deformation_maps(t);
  EXPECT_TRUE(r.ok()) << r.summary();
  // l3's t^2 coefficient on every generator is -1/2 (R2, a)*
  for (std::size_t i = 0; i < m.gens->size(); ++i) {
    const auto a = SuperPoly::generator(m.gens, i);
    const auto l3 = t.l3(t.unit(false, a.terms().begin()->first, 0));
    EXPECT_EQ(l3.x1[2], (Rat(-1, 2) * m.bracket(r2, a)).truncate(m.cap));
  }
  EXPECT_TRUE(cross_check_engine(t).ok());
}

TEST(Bv, CorruptedL3BreaksNilpotency) {
  const auto f = load("bv_ghost_ce.bv");
  const auto t = deformation_maps(f.problem, 4);
  bool broken = false;
  for (const auto& mono : t.model().basis()) {
    const Elem x = t.unit(false, mono, 0);
    auto bad = [&](const Elem& e) {
      Elem a = t.l1(e), b = t.l2(e), c = t.l3(e);
      for (std::size_t k = 0; k <= t.trunc(); ++k) {
        a.x0[k] += b.x0[k] + Rat(3) * c.x0[k];
        a.x1[k] += b.x1[k] + Rat(3) * c.x1[k];
      }
      return a;
    };
    if (!bad(bad(x)).is_zero()) broken = true;
  }
  EXPECT_TRUE(broken);
}

TEST(Bv, ProblemValidation) {
  const BVModel m = two_pair();
  const auto s0 = parse_poly(m.gens, "phistar*C");
  EXPECT_THROW(deformation_maps(DeformationProblem{m, {s0, parse_poly(m.gens, "phi")}}, 4), BVError);
  // order-1 master equation fails for S1 = phi^2 (its s0 image is 2 phi C)
  EXPECT_THROW(deformation_maps(DeformationProblem{m, {s0, parse_poly(m.gens, "phi^2")}}, 4), BVError);
  EXPECT_THROW(deformation_maps(DeformationProblem{m, {s0, parse_poly(m.gens, "phi*C*phistar")}}, 1), BVError);
  EXPECT_TRUE(validate_problem(DeformationProblem{m, {s0, parse_poly(m.gens, "phi*C*phistar")}}).ok());
}

TEST(Bv, HigherOrderProblem) {
  // S_D = S0 + t S1 + t^2 S2 with S2 = phi^2 C phistar: still satisfies the master equation to order 2
  const BVModel m = two_pair(4);
  DeformationProblem p{m, {parse_poly(m.gens, "phistar*C"), parse_poly(m.gens, "phi*C*phistar"),
                           parse_poly(m.gens, "phi^2*C*phistar")}};
  ASSERT_TRUE(validate_problem(p).ok());
  const auto t = deformation_maps(p, 5);
  EXPECT_TRUE(verify_deformation_maps(t).ok()) << verify_deformation_maps(t).summary();
}
