#include "test_support.hpp"

#include <residual/residue.hpp>

#include <gtest/gtest.h>

#include <array>

using namespace residual;
using residual::testing::random_nonzero_poly;
using residual::testing::random_poly;

namespace {

const VarList xy = make_vars({"x", "y"});
const VarList y_only = make_vars({"y"});
const VarList x_only = make_vars({"x"});

RationalForm1D form(const char* num, const char* den, const VarList& vars = xy) {
  return RationalForm1D(parse_poly(num, vars), parse_poly(den, vars));
}

RatFunc X(const char* text) { return RatFunc(parse_poly(text, x_only)); }

} // namespace

TEST(ResidueSum, Examples) {
  EXPECT_EQ(residue_sum(form("1", "y", y_only)), RatFunc(MPoly::constant(make_vars({}), 1)));
  EXPECT_EQ(residue_sum(form("y", "y^2 - x")), X("1"));
  // Residues y_i^2 / (2 y_i) = +-sqrt(x)/2 cancel; the polynomial part x has
  // no residue.
  EXPECT_EQ(residue_sum(form("y^2", "y^2 - x")), X("0"));
}

TEST(ResidueSum, DegreeZeroDenominatorHasNoPoles) {
  EXPECT_TRUE(residue_sum(form("y^3", "x + 1")).is_zero());
  EXPECT_THROW(form("1", "0"), Error);
}

TEST(ResidueSum, NonMonicAndNonSquareFree) {
  // 1/(2y) has residue 1/2 at 0.
  EXPECT_EQ(residue_sum(form("1", "2*y")), X("1/2"));
  // (y+1)/(x y - 1): single pole 1/x, residue (1/x + 1)/x.
  EXPECT_EQ(residue_sum(form("y + 1", "x*y - 1")), RatFunc(parse_poly("x + 1", x_only), parse_poly("x^2", x_only)));
  // y^3/(y - x)^2: residue at the double pole is d/dy y^3 = 3 x^2.
  EXPECT_EQ(residue_sum(form("y^3", "(y - x)^2")), X("3*x^2"));
}

TEST(ResidueSum, VanishesWhenNumeratorDegreeIsTwoBelow) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    std::uint32_t d = 2 + trial % 4;
    MPoly den = MPoly::variable(xy, 1, d) * random_nonzero_poly(rng, x_only, 2, 2).embed(xy) + random_poly(rng, xy, d, 5);
    if (den.degree_in(1) != d)
      continue;
    MPoly num(xy);
    for (std::uint32_t k = 0; k + 2 <= d; ++k)
      num += random_poly(rng, x_only, 2, 2).embed(xy) * MPoly::variable(xy, 1, k);
    EXPECT_TRUE(residue_sum(RationalForm1D(num, den)).is_zero());
  }
}

TEST(ResidueSum, Linearity) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    MPoly den = MPoly::variable(xy, 1, 3) + random_poly(rng, xy, 2, 4);
    MPoly f = random_poly(rng, xy, 4, 4);
    MPoly g = random_poly(rng, xy, 4, 4);
    EXPECT_EQ(residue_sum(RationalForm1D(f + g, den)),
              residue_sum(RationalForm1D(f, den)) + residue_sum(RationalForm1D(g, den)));
  }
}

TEST(ResidueSum, IncrementalPowersMatchDirectSums) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    MPoly den = MPoly::variable(xy, 1, 2) * random_nonzero_poly(rng, x_only, 1, 2).embed(xy) + random_poly(rng, xy, 2, 3);
    if (den.degree_in(1) == 0)
      continue;
    MPoly num = random_poly(rng, xy, 3, 3);
    auto sums = residue_sums_of_powers(RationalForm1D(num, den), 6);
    for (std::uint32_t k = 0; k < 6; ++k)
      EXPECT_EQ(sums[k], residue_sum(RationalForm1D(num * MPoly::variable(xy, 1, k), den))) << "k=" << k;
  }
}

TEST(PointwiseResidues, Examples) {
  std::array<Complex, 1> x{Complex(0.3, 0.1)};
  auto r1 = pointwise_residues(form("1", "y^2 - 1"), x);
  ASSERT_EQ(r1.size(), 2U);
  EXPECT_NEAR(std::abs(r1[0].pole - Complex(-1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r1[0].residue - Complex(-0.5)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r1[1].pole - Complex(1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r1[1].residue - Complex(0.5)), 0.0, 1e-12);

  auto r2 = pointwise_residues(form("1", "y", y_only), std::span<const Complex>());
  ASSERT_EQ(r2.size(), 1U);
  EXPECT_NEAR(std::abs(r2[0].pole), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r2[0].residue - Complex(1.0)), 0.0, 1e-12);

  auto r3 = pointwise_residues(form("2*y - 1", "y^2 - y"), x);
  ASSERT_EQ(r3.size(), 2U);
  EXPECT_NEAR(std::abs(r3[0].pole), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r3[1].pole - Complex(1.0)), 0.0, 1e-12);
  for (const auto& pr : r3)
    EXPECT_NEAR(std::abs(pr.residue - Complex(1.0)), 0.0, 1e-12);
}

TEST(PointwiseResidues, RepeatedRootIsReported) {
  std::array<Complex, 1> x{Complex(1.0)};
  EXPECT_THROW(pointwise_residues(form("1", "(y - x)^2"), x), Error);
}

TEST(PointwiseResidues, SumMatchesExactResidueSum) {
  std::mt19937_64 rng(24);
  MPoly den = parse_poly("y^3 - x*y + 2*x^2 - 1", xy);
  MPoly num = parse_poly("x*y^2 + 3*y - x", xy);
  RationalForm1D f(num, den);
  RatFunc exact = residue_sum(f);
  std::uniform_int_distribution<int> pick(-40, 40);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rational xr = rational(pick(rng), 13);
    std::array<Complex, 1> x{Complex(xr.get_d())};
    std::vector<PoleResidue> pts;
    try {
      pts = pointwise_residues(f, x);
    } catch (const Error&) {
      continue; // non-square-free specialization
    }
    Complex sum = 0.0;
    for (const auto& pr : pts)
      sum += pr.residue;
    std::array<Rational, 1> xq{xr};
    EXPECT_NEAR(std::abs(sum - Complex(exact.evaluate(xq).get_d())), 0.0, 1e-8);
    ++checked;
  }
  EXPECT_GE(checked, 95);
}

TEST(ContourOracle, Examples) {
  std::span<const Complex> none;
  EXPECT_NEAR(std::abs(contour_oracle(form("1", "y", y_only), none, {0.0, 2.0, 256}) - Complex(1.0)), 0.0, 1e-10);
  std::array<Complex, 1> x1{Complex(1.0)};
  EXPECT_NEAR(std::abs(contour_oracle(form("y", "y^2 - x"), x1, {0.0, 4.0, 256}) - Complex(1.0)), 0.0, 1e-8);
  EXPECT_THROW(contour_oracle(form("1", "y^2 + 1", y_only), none, {0.0, 0.5, 256}), Error);
}

TEST(ContourOracle, RejectsBadSpecs) {
  std::span<const Complex> none;
  EXPECT_THROW(contour_oracle(form("1", "y", y_only), none, {0.0, 0.0, 256}), Error);
  EXPECT_THROW(contour_oracle(form("1", "y", y_only), none, {0.0, 1.0, 8}), Error);
  EXPECT_THROW(contour_oracle(form("1", "y - 1", y_only), none, {0.0, 1.0 + 1e-8, 64}), Error);
}

TEST(ContourOracle, ConvergesUnderPointDoubling) {
  std::array<Complex, 1> x{Complex(0.7)};
  auto f = form("x*y^2 + 1", "y^3 - 2*x*y + 1/2");
  ContourSpec spec = default_contour(f, x, 256);
  Complex coarse = contour_oracle(f, x, spec);
  spec.points = 512;
  Complex fine = contour_oracle(f, x, spec);
  EXPECT_LT(std::abs(coarse - fine), 1e-10);
  auto rec = oracle_compare(f, residue_sum(f), x, spec);
  EXPECT_LT(rec.abs_error, 1e-8);
}
