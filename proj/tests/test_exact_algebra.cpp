#include "test_support.hpp"

#include <residual/matrix.hpp>
#include <residual/poly_gcd.hpp>

#include <gtest/gtest.h>

using namespace residual;
using residual::testing::random_nonzero_poly;
using residual::testing::random_poly;

namespace {

const VarList xy = make_vars({"x", "y"});
const VarList x_only = make_vars({"x"});

MPoly P(const char* text, const VarList& vars = xy) { return parse_poly(text, vars); }

RatFunc F(const char* num, const char* den = "1", const VarList& vars = x_only) {
  return RatFunc(parse_poly(num, vars), parse_poly(den, vars));
}

} // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(*parse_rational("-3/2")), "-3/2");
  EXPECT_EQ(to_string(*parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(*parse_rational("0")), "0");
  EXPECT_FALSE(parse_rational("1/0"));
  EXPECT_FALSE(parse_rational("1.5"));
  EXPECT_FALSE(parse_rational(""));
  EXPECT_FALSE(parse_rational("--1"));
}

TEST(MPoly, ArithmeticExamples) {
  EXPECT_EQ(P("x + y") + P("x - y"), P("2*x"));
  EXPECT_EQ(P("y - 1") * P("y + 1"), P("y^2 - 1"));
  EXPECT_EQ(P("y^2 - x") * P("1"), P("y^2 - x"));
  EXPECT_TRUE((P("x*y") - P("y*x")).is_zero());
}

TEST(MPoly, VariableMismatchIsRejected) {
  MPoly a = P("x");
  MPoly b = parse_poly("x", make_vars({"x", "z"}));
  EXPECT_THROW(a + b, Error);
  EXPECT_THROW(a * b, Error);
}

TEST(MPoly, CanonicalTermOrderAndPrinting) {
  MPoly p = P("x + y^2 - 3/2*x*y^2 + 1");
  EXPECT_EQ(p.to_string(), "-3/2*x*y^2 + y^2 + x + 1");
  EXPECT_EQ(parse_poly(p.to_string(), xy), p);
  EXPECT_EQ(P("(x - y)^3").to_string(), "x^3 - 3*x^2*y + 3*x*y^2 - y^3");
}

TEST(MPoly, ExactDivision) {
  EXPECT_EQ(*divide_exact(P("x^2 - y^2"), P("x + y")), P("x - y"));
  EXPECT_FALSE(divide_exact(P("x^2 + y^2"), P("x + y")));
  EXPECT_EQ(*divide_exact(P("3*x"), P("3/2")), P("2*x"));
}

TEST(PolyDivmodY, Examples) {
  auto r1 = poly_divmod_y(P("y^3"), P("y^2 - x"), 1);
  EXPECT_EQ(r1.quotient, P("y"));
  EXPECT_EQ(r1.remainder, P("x*y"));
  // y*(y^2 - x) + x*y = y^3
  EXPECT_EQ(r1.quotient * P("y^2 - x") + r1.remainder, P("y^3"));

  auto r2 = poly_divmod_y(P("y^2 - x"), P("y^2 - x"), 1);
  EXPECT_EQ(r2.quotient, P("1"));
  EXPECT_TRUE(r2.remainder.is_zero());

  auto r3 = poly_divmod_y(P("1"), P("y - 3"), 1);
  EXPECT_TRUE(r3.quotient.is_zero());
  EXPECT_EQ(r3.remainder, P("1"));
}

TEST(PolyDivmodY, Errors) {
  EXPECT_THROW(poly_divmod_y(P("y^2"), P("2*y - 1"), 1), Error);
  EXPECT_THROW(poly_divmod_y(P("y^2"), P("x*y - 1"), 1), Error);
  EXPECT_THROW(poly_divmod_y(P("y^2"), P("x + 1"), 1), Error);
}

TEST(PolyDivmodY, RoundtripProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    MPoly a = random_poly(rng, xy, 6, 6);
    std::uint32_t d = 1 + trial % 4;
    MPoly b = MPoly::variable(xy, 1, d) + random_poly(rng, x_only, d, 4).embed(xy);
    for (std::uint32_t k = 1; k < d; ++k)
      b += random_poly(rng, x_only, 2, 2).embed(xy) * MPoly::variable(xy, 1, k);
    auto [q, r] = poly_divmod_y(a, b, 1);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree_in(1), d);
  }
}

TEST(PolyGcdY, Examples) {
  EXPECT_EQ(poly_gcd_y(P("y^2 - x"), P("y"), 1), P("1"));
  EXPECT_EQ(poly_gcd_y(P("y^2 - x^2"), P("y - x"), 1), P("y - x"));
  EXPECT_EQ(poly_gcd_y(P("2*y^2 - 2*x"), P("0"), 1), P("y^2 - x"));
  EXPECT_EQ(poly_gcd_y(P("x*y"), P("0"), 1), P("y"));
  EXPECT_THROW(poly_gcd_y(P("0"), P("0"), 1), Error);
}

TEST(Gcd, MultivariateCases) {
  EXPECT_EQ(gcd(P("x^2*y - y"), P("x*y + y")), P("x*y + y"));
  EXPECT_EQ(gcd(P("x"), P("y")), P("1"));
  EXPECT_EQ(gcd(P("6*x^2 - 6"), P("4*x + 4")), P("x + 1"));
  EXPECT_EQ(gcd(P("(x + y)^3*(x - 1)"), P("(x + y)^2*(y + 2)")), P("(x + y)^2"));
}

TEST(Gcd, DividesBothAndRecoversPlantedFactor) {
  std::mt19937_64 rng(7);
  const VarList xyz = make_vars({"x", "y", "z"});
  for (int trial = 0; trial < 80; ++trial) {
    const VarList& vars = trial % 2 ? xy : xyz;
    MPoly g = random_nonzero_poly(rng, vars, 2, 3);
    MPoly a = random_nonzero_poly(rng, vars, 3, 4) * g;
    MPoly b = random_nonzero_poly(rng, vars, 3, 4) * g;
    MPoly h = gcd(a, b);
    ASSERT_TRUE(divide_exact(a, h)) << a.to_string() << " / " << h.to_string();
    ASSERT_TRUE(divide_exact(b, h));
    EXPECT_TRUE(divide_exact(h, g)) << "gcd " << h.to_string() << " misses planted " << g.to_string();
    // Cofactors are coprime.
    EXPECT_TRUE(gcd(*divide_exact(a, h), *divide_exact(b, h)).is_one());
  }
}

TEST(SolveLinear, Examples) {
  FracMatrix id(2, 2, {F("1"), F("0"), F("0"), F("1")});
  std::vector<RatFunc> v{F("x"), F("1", "x")};
  EXPECT_EQ(solve_linear(id, v), v);

  FracMatrix m(2, 2, {F("2"), F("1"), F("1"), F("1")});
  EXPECT_EQ(solve_linear(m, {F("-1"), F("-1")}), (std::vector<RatFunc>{F("0"), F("-1")}));

  FracMatrix singular(2, 2, {F("1"), F("x"), F("x"), F("x^2")});
  EXPECT_THROW(solve_linear(singular, {F("1"), F("1")}), Error);
  EXPECT_FALSE(try_solve_linear(singular, {F("1"), F("1")}));
}

TEST(SolveLinear, MultiplyBackProperty) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<RatFunc> entries;
      for (std::size_t k = 0; k < n * n; ++k)
        entries.emplace_back(random_poly(rng, x_only, 3, 3));
      FracMatrix m(n, n, std::move(entries));
      std::vector<RatFunc> rhs;
      for (std::size_t k = 0; k < n; ++k)
        rhs.emplace_back(random_poly(rng, x_only, 3, 3), random_nonzero_poly(rng, x_only, 1, 2));
      auto x = try_solve_linear(m, rhs);
      if (!x) {
        EXPECT_TRUE(determinant(m).is_zero());
        continue;
      }
      EXPECT_EQ(m.multiply(*x), rhs) << "n=" << n;
    }
  }
}

TEST(Determinant, Examples) {
  // Hankel of the traces (0, 1, 0) of y^2 - x, anti-diagonal order.
  FracMatrix h(2, 2, {F("1"), F("0"), F("0"), F("1")});
  EXPECT_EQ(determinant(h), F("1"));
  EXPECT_EQ(determinant(FracMatrix(1, 1, {F("x + 2", "x - 1")})), F("x + 2", "x - 1"));
  FracMatrix repeated(3, 3, {F("x"), F("1"), F("2"), F("x"), F("1"), F("2"), F("3"), F("x^2"), F("1")});
  EXPECT_TRUE(determinant(repeated).is_zero());
  EXPECT_THROW(determinant(FracMatrix(2, 3, x_only)), Error);
  EXPECT_EQ(determinant(FracMatrix(2, 2, {F("0"), F("1"), F("1"), F("0")})), F("-1"));
}

TEST(Determinant, AgreesWithCofactorExpansion) {
  std::mt19937_64 rng(5);
  const VarList ab = make_vars({"a", "b"});
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      const VarList& vars = trial % 2 ? ab : x_only;
      std::vector<RatFunc> entries;
      for (std::size_t k = 0; k < n * n; ++k) {
        MPoly den = (k % 3 == 0) ? random_nonzero_poly(rng, vars, 1, 2) : MPoly::constant(vars, 1);
        entries.emplace_back(random_poly(rng, vars, 2, 3), den);
      }
      FracMatrix m(n, n, std::move(entries));
      EXPECT_EQ(determinant(m), residual::testing::cofactor_determinant(m)) << "n=" << n;
    }
  }
}

TEST(Diff, Examples) {
  EXPECT_EQ(F("x^2").diff("x"), F("2*x"));
  EXPECT_EQ(F("1", "x").diff("x"), F("-1", "x^2"));
  const VarList ab = make_vars({"a", "b"});
  RatFunc f(parse_poly("a^2/2 + b", ab));
  EXPECT_EQ(f.diff("a"), RatFunc(parse_poly("a", ab)));
  EXPECT_THROW(f.diff("z"), Error);
}

TEST(Diff, ProductRule) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    RatFunc f(random_poly(rng, xy, 3, 3), random_nonzero_poly(rng, xy, 2, 2));
    RatFunc g(random_poly(rng, xy, 3, 3), random_nonzero_poly(rng, xy, 2, 2));
    for (std::size_t v = 0; v < 2; ++v)
      EXPECT_EQ((f * g).diff(v), f * g.diff(v) + g * f.diff(v));
  }
}

TEST(RatFunc, CanonicalForm) {
  EXPECT_EQ(F("x^2 - 1", "2*x + 2"), F("x/2 - 1/2"));
  EXPECT_EQ(F("1", "-2*x"), F("-1/2", "x"));
  RatFunc f = F("3", "6*x - 3");
  EXPECT_EQ(f.den(), parse_poly("2*x - 1", x_only));
  EXPECT_EQ(f.num(), parse_poly("1", x_only));
  EXPECT_TRUE((F("1", "x") - F("1", "x")).is_zero());
  EXPECT_THROW(F("1", "0"), Error);
}
