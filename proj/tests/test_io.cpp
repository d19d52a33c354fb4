#include "chainext/io.hpp"

#include <gtest/gtest.h>

using namespace chainext;
using namespace chainext::io;

namespace {

std::string sample(const std::string& name) { return read_file(std::string(CHAINEXT_SAMPLES_DIR) + "/" + name); }

std::size_t error_line(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST(Io, LieRoundTrip) {
  const LieFile f = parse_lie(sample("abelian3.lie"));
  EXPECT_EQ(f.algebra.dim, 3u);
  ASSERT_TRUE(f.alpha1.has_value());
  const LieFile g = parse_lie(write_lie(f));
  EXPECT_EQ(g.algebra.bracket, f.algebra.bracket);
  EXPECT_EQ(*g.alpha1, *f.alpha1);
  const LieFile s = parse_lie(sample("sl2.lie"));
  EXPECT_EQ(s.algebra.names, (std::vector<std::string>{"h", "e", "f"}));
  EXPECT_EQ(s.algebra.bracket.eval({0, 2}), (Vec{0, 0, -2}));
  EXPECT_EQ(parse_lie(write_lie(s)).algebra.bracket, s.algebra.bracket);
}

TEST(Io, LieErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line([] { parse_lie("dim 2\n\n# comment\nbracket 1 2 3 1\n"); }), 4u);
  EXPECT_EQ(error_line([] { parse_lie("bracket 1 2 1 1\n"); }), 1u);
  EXPECT_EQ(error_line([] { parse_lie("dim 2\nbracket 1 1 1 1\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_lie("dim 2\nbracket 1 2 1 x\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_lie("dim 2\nfrobnicate\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_lie("dim 2\nnames a\n"); }), 2u);
  EXPECT_THROW(parse_lie("# nothing\n"), ParseError);
}

TEST(Io, CochainFile) {
  const auto c = parse_cochain("dim 3\nalpha1 2 1 3 -1/2\n", 3);
  EXPECT_EQ(c.eval({0, 1}), (Vec{0, 0, Rat(1, 2)}));
  EXPECT_EQ(error_line([] { parse_cochain("dim 4\n", 3); }), 1u);
}

TEST(Io, ComplexRoundTrip) {
  const ComplexFile f = parse_complex(sample("split_exact.cx"));
  EXPECT_EQ(f.h.space.dims, (std::vector<std::size_t>{3, 1}));
  EXPECT_EQ(f.h.f_dim, 2u);
  ASSERT_TRUE(f.d_f.has_value());
  const ComplexFile g = parse_complex(write_complex(f));
  EXPECT_EQ(g.h.l1.at(1), f.h.l1.at(1));
  EXPECT_EQ(g.h.s.at(0), f.h.s.at(0));
  EXPECT_EQ(g.h.eta, f.h.eta);
  EXPECT_EQ(g.h.lambda, f.h.lambda);
  EXPECT_EQ(g.l2_0, f.l2_0);
  EXPECT_EQ(*g.d_f, *f.d_f);
  EXPECT_EQ(write_complex(g), write_complex(f));
}

TEST(Io, ComplexErrors) {
  EXPECT_EQ(error_line([] { parse_complex("degrees 2\nf 1\nmatrix eta 0 1 2\n1 0 0\n"); }), 4u);
  EXPECT_EQ(error_line([] { parse_complex("degrees 2\nf 1\nmatrix eta 0 2 2\n1 0\n0 1\n"); }), 3u);
  EXPECT_EQ(error_line([] { parse_complex("degrees 2 1\nf 1\nmatrix l1 0 2 1\n1\n0\n"); }), 3u);
  EXPECT_EQ(error_line([] { parse_complex("degrees 2\nf 1\nmatrix eta 0 1 2\n1 1/0\n"); }), 4u);
  EXPECT_THROW(parse_complex("f 1\n"), ParseError);
}

TEST(Io, BrstFile) {
  const BrstFile f = parse_brst(sample("brst_toy.brst"));
  EXPECT_EQ(f.system.n(), 2u);
  EXPECT_EQ(f.cap, std::optional<unsigned>(4));
  EXPECT_EQ(f.system.C[0][0][1], superalg::parse_poly(f.system.gens, "x"));
  EXPECT_EQ(f.system.C[0][1][0], superalg::parse_poly(f.system.gens, "-x"));
  EXPECT_EQ(error_line([] { parse_brst("constraints 1\npoisson G1 Q : 1\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_brst("poisson G1 G2 : 1\n"); }), 1u);
  EXPECT_EQ(error_line([] { parse_brst("constraints 2\nstructure 1 2 3 : 1\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_brst("constraints 2\nstructure 1 2 1 : G1 +\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_brst("constraints 2\nstructure 1 2 1\n"); }), 2u);
}

TEST(Io, BvFile) {
  const BvFile f = parse_bv(sample("bv_two_pair.bv"));
  EXPECT_EQ(f.problem.order(), 1u);
  EXPECT_EQ(f.auto_orders, (std::vector<std::size_t>{1}));
  EXPECT_EQ(f.problem.S[1], superalg::parse_poly(f.problem.model.gens, "phi*C*phistar"));
  EXPECT_EQ(f.problem.model.cap, 4u);
  EXPECT_EQ(parse_bv(sample("bv_two_pair.bv"), 5u).problem.model.cap, 5u);
  EXPECT_EQ(error_line([] { parse_bv("pair a b maybe 0\n"); }), 1u);
  EXPECT_EQ(error_line([] { parse_bv("pair a b even 0\nS 0 : a*b\nS 0 : a*b\n"); }), 3u);
  EXPECT_EQ(error_line([] { parse_bv("pair a b even 0\nS 0 : q\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_bv("pair a b even 0\nS 0 : 0\nS 2 auto\n"); }), 3u);
  EXPECT_THROW(parse_bv("pair a b even 0\nS 1 : 0\n"), ParseError);
}
