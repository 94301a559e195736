#include "test_support.hpp"

#include <residual/radon.hpp>

#include <gtest/gtest.h>

using namespace residual;

namespace {

const VarList xy = make_vars({"x", "y"});
const VarList ab = make_vars({"a", "b"});
const VarList a_only = make_vars({"a"});

MPoly P2(const char* text) { return parse_poly(text, xy); }
RatFunc AB(const char* text) { return RatFunc(parse_poly(text, ab)); }
RatFunc A(const char* text) { return RatFunc(parse_poly(text, a_only)); }

// Term-wise antiderivative in variable v.
MPoly integrate(const MPoly& p, std::size_t v) {
  std::vector<MPoly::Term> out;
  for (const auto& t : p.terms()) {
    MPoly::Term s = t;
    s.exps[v] += 1;
    s.coeff /= s.exps[v];
    out.push_back(std::move(s));
  }
  return MPoly(p.var_list(), std::move(out));
}

// P(x, y) with every non-leading term of total degree <= top. With top = d
// the substituted leading coefficient c(a) satisfies c(0) = 1; with top < d
// it is 1 and all u_k are polynomial.
ResidualCurrent random_chart_current(std::mt19937_64& rng, std::size_t d, unsigned top) {
  for (;;) {
    MPoly P = MPoly::variable(xy, 1, static_cast<std::uint32_t>(d)) + sampling::random_poly(rng, xy, top, 4);
    if (P.degree_in(1) != d || !is_monic_in(P, 1))
      continue;
    MPoly r = sampling::random_nonzero_poly(rng, xy, static_cast<unsigned>(d - 1), 3);
    auto v = validate(P, r);
    if (!v.reduced() && !v.remainder_taken)
      return v.current;
  }
}

} // namespace

TEST(LineChart, Variables) {
  EXPECT_EQ(*LineChart(1).vars(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(*LineChart(2).vars(), (std::vector<std::string>{"a1", "a2", "b1", "b2"}));
  EXPECT_THROW(LineChart(0), Error);
  EXPECT_THROW(LineChart(1).with_fiber("a"), Error);
}

TEST(Radon, Examples) {
  auto u = radon(make_current(P2("y^2 - x"), P2("1")), 2);
  EXPECT_EQ(u[0], AB("0"));
  EXPECT_EQ(u[1], AB("1"));
  EXPECT_EQ(u[2], AB("a"));

  auto v = radon(make_current(P2("y^2 - x"), P2("y")), 2);
  EXPECT_EQ(v[0], AB("1"));
  EXPECT_EQ(v[1], AB("a"));
  EXPECT_EQ(v[2], AB("a^2 + b"));
}

// P(ay + b, y) = (1 - a) y - b has root b/(1 - a); its residue carries the
// factor 1/(1 - a).
TEST(Radon, SinglePointCarriesJacobianFactor) {
  auto u = radon(make_current(P2("y - x"), P2("3")), 4);
  for (unsigned k = 0; k <= 4; ++k)
    EXPECT_EQ(u[k], AB("3") * AB("b").pow(k) / AB("1 - a").pow(k + 1)) << "k=" << k;
}

// P = y - x^2 gives -a^2 y^2 + (1 - 2ab) y - b^2; the zero of the leading
// coefficient stays as a pole of the u_k.
TEST(Radon, LeadingCoefficientZerosBecomePoles) {
  auto u = radon(make_current(P2("y - x^2"), P2("1")), 1);
  EXPECT_EQ(u[0], AB("0"));
  EXPECT_EQ(u[1], AB("-1") / AB("a^2"));
}

TEST(Radon, ZeroSlopeRecoversFiberTraces) {
  std::mt19937_64 rng(61);
  VarList b_only = make_vars({"b"});
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t d = 1 + trial % 4;
    auto c = random_chart_current(rng, d, static_cast<unsigned>(d));
    auto u = radon(c, 5);
    auto t = traces(c, 6);
    std::vector<MPoly> at_zero{MPoly::constant(b_only, 0), MPoly::variable(b_only, 0)};
    std::vector<MPoly> rename{MPoly::variable(b_only, 0)};
    for (std::size_t k = 0; k <= 5; ++k)
      EXPECT_EQ(u[k].substitute(at_zero, b_only), t[k].substitute(rename, b_only));
  }
}

TEST(AssembleRadonForm, Examples) {
  auto r = assemble_radon_form({AB("0"), AB("1")}, 1);
  EXPECT_EQ(r.component(0), AB("0"));
  EXPECT_EQ(r.component(1), AB("1"));
  EXPECT_TRUE(r.is_closed());

  auto s = assemble_radon_form({AB("1"), AB("a")}, 1);
  EXPECT_TRUE(s.is_closed());
  auto non_closed = assemble_radon_form({AB("a"), AB("1")}, 1);
  EXPECT_FALSE(non_closed.is_closed());

  VarList v2 = LineChart(2).vars();
  std::vector<RatFunc> u{RatFunc(parse_poly("b1", v2)), RatFunc(parse_poly("a1 + 2", v2)),
                         RatFunc(parse_poly("a2", v2))};
  auto f = assemble_radon_form(u, 2);
  ASSERT_EQ(f.subset_count(), 4U);
  EXPECT_EQ(f.component(0b00), u[0]);
  EXPECT_EQ(f.component(0b01), u[1]);
  EXPECT_EQ(f.component(0b10), u[1]);
  EXPECT_EQ(f.component(0b11), u[2]);
  // da1^db2 is already sorted; db1^da2 = -da2^db1.
  EXPECT_EQ(f.sorted_sign(0b01), 1);
  EXPECT_EQ(f.sorted_sign(0b10), -1);
  EXPECT_EQ(f.sorted_sign(0b11), 1);
  EXPECT_EQ(f.sorted_coefficient(0b10), -u[1]);

  EXPECT_THROW(assemble_radon_form({AB("1")}, 1), Error);
}

TEST(ClosednessCheck, Examples) {
  auto u = radon(make_current(P2("y^2 - x"), P2("1")), 3);
  EXPECT_TRUE(closedness_check(u, 1, 0).empty());
  auto v = radon(make_current(P2("y^2 - x"), P2("y")), 3);
  EXPECT_TRUE(closedness_check(v, 1, 1).empty());
  auto corrupted = v;
  corrupted[1] = AB("a + b");
  EXPECT_EQ(closedness_check(corrupted, 1, 0), (std::vector<ClosednessViolation>{{1, 0}}));
  EXPECT_THROW(closedness_check(u, 1, 5), Error);
}

TEST(ClosednessCheck, HoldsForRandomCurrents) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = 1 + trial % 2;
    std::size_t d = 1 + trial % (n == 1 ? 3 : 2);
    auto c = sampling::random_current(rng, n, d, 2);
    auto u = radon(c, 2 * d + n);
    EXPECT_TRUE(closedness_check(u, n, 2 * d).empty());
    EXPECT_TRUE(assemble_radon_form(u, n).is_closed());
  }
}

// For n = 1 and polynomial u_k, u_1 da + u_0 db has a polynomial potential.
TEST(RadonForm, ExactnessWitness) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = random_chart_current(rng, 1 + trial % 3, static_cast<unsigned>(trial % 3));
    auto u = radon(c, 1);
    ASSERT_TRUE(u[0].is_polynomial() && u[1].is_polynomial());
    MPoly F = integrate(u[1].num(), 0);
    MPoly rest = u[0].num() - F.diff(1);
    ASSERT_EQ(rest.degree_in(0), 0U);
    F += integrate(rest, 1);
    EXPECT_EQ(RatFunc(F.diff(0)), u[1]);
    EXPECT_EQ(RatFunc(F.diff(1)), u[0]);
  }
}

TEST(PencilProjection, Examples) {
  auto t = pencil_projection(make_current(P2("y^2 - x"), P2("1")), {rational(-1, 1)}, 0, 3);
  EXPECT_EQ(t[0], A("0"));
  EXPECT_EQ(t[1], A("1"));

  Rational x0 = 2, y0 = 5;
  auto s = pencil_projection(make_current(P2("y - x"), P2("3")), {x0}, y0, 4);
  for (unsigned k = 0; k <= 4; ++k)
    EXPECT_EQ(s[k], A("3") * A("2 - 5*a").pow(k) / A("1 - a").pow(k + 1));

  EXPECT_THROW(pencil_projection(make_current(P2("y^2 - x"), P2("1")), {rational(1, 1)}, 1, 3), Error);
  EXPECT_THROW(pencil_projection(make_current(P2("y^2 - x"), P2("1")), {}, 1, 3), Error);
}

TEST(PencilProjection, AgreesWithRestrictedTransform) {
  std::mt19937_64 rng(64);
  int done = 0;
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = 1 + trial % 2;
    auto c = sampling::random_current(rng, n, 1 + trial % 2, 2);
    auto x0 = sampling::random_point(rng, n);
    Rational y0 = sampling::random_point(rng, 1)[0];
    std::vector<Rational> pt = x0;
    pt.push_back(y0);
    if (c.P().evaluate(pt) == 0)
      continue;
    // Throws if direct and substituted routes differ.
    auto t = pencil_projection(c, x0, y0, 3);
    EXPECT_EQ(t.size(), 4U);
    ++done;
  }
  EXPECT_GE(done, 10);
}

TEST(IsRadonZero, Examples) {
  EXPECT_TRUE(is_radon_zero(ZeroCurrent{}, 4));
  EXPECT_FALSE(is_radon_zero(make_current(P2("y^2 - x"), P2("1")), 4));
  std::mt19937_64 rng(65);
  for (int trial = 0; trial < 6; ++trial)
    EXPECT_FALSE(is_radon_zero(sampling::random_current(rng, 1 + trial % 2, 1 + trial % 2, 2), 2));
}
