#ifndef RESIDUAL_SAMPLING_HPP
#define RESIDUAL_SAMPLING_HPP

// Seeded random instance families shared by the verify command and the test
// suites. Everything is driven by an explicit std::mt19937_64, so a seed fixes
// the family.

#include <residual/current.hpp>

#include <random>
#include <string>
#include <vector>

namespace residual::sampling {

inline Rational random_coeff(std::mt19937_64& rng, int range = 5, bool allow_fractions = true) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, allow_fractions ? 3 : 1);
  int a = num(rng);
  int b = den(rng);
  return rational(a, b);
}

inline Rational random_nonzero_coeff(std::mt19937_64& rng, int range = 5) {
  for (;;) {
    Rational q = random_coeff(rng, range);
    if (q != 0)
      return q;
  }
}

// Random polynomial of total degree <= max_degree with up to `terms` terms.
inline MPoly random_poly(std::mt19937_64& rng, const VarList& vars, unsigned max_degree, int terms) {
  std::vector<MPoly::Term> out;
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  for (int t = 0; t < terms; ++t) {
    Exponents e(vars->size(), 0);
    unsigned budget = deg(rng);
    if (!vars->empty())
      for (unsigned k = 0; k < budget; ++k)
        ++e[std::uniform_int_distribution<std::size_t>(0, vars->size() - 1)(rng)];
    Rational c = random_coeff(rng);
    out.push_back({std::move(e), std::move(c)});
  }
  return MPoly(vars, std::move(out));
}

inline MPoly random_nonzero_poly(std::mt19937_64& rng, const VarList& vars, unsigned max_degree, int terms) {
  for (;;) {
    MPoly p = random_poly(rng, vars, max_degree, terms);
    if (!p.is_zero())
      return p;
  }
}

inline VarList base_variables(std::size_t n) {
  if (n == 1)
    return make_vars({"x"});
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i)
    names.push_back("x" + std::to_string(i));
  return make_vars(std::move(names));
}

inline VarList current_variables(std::size_t n, const std::string& fiber = "y") {
  std::vector<std::string> names = *base_variables(n);
  names.push_back(fiber);
  return make_vars(std::move(names));
}

// Valid current of exact y-degree d with coefficients a_i and r_j of total
// degree <= coeff_deg in the n base variables. Draws are repeated until
// gcd_y(P, r) = 1, so validate() leaves the pair untouched.
inline ResidualCurrent random_current(std::mt19937_64& rng, std::size_t n, std::size_t d, unsigned coeff_deg) {
  VarList base = base_variables(n);
  VarList vars = current_variables(n);
  const std::size_t y = n;
  for (;;) {
    MPoly P = MPoly::variable(vars, y, static_cast<std::uint32_t>(d));
    for (std::size_t i = 1; i <= d; ++i)
      P += random_poly(rng, base, coeff_deg, 3).embed(vars) * MPoly::variable(vars, y, static_cast<std::uint32_t>(d - i));
    MPoly r(vars);
    for (std::size_t j = 0; j < d; ++j)
      r += random_poly(rng, base, coeff_deg, 2).embed(vars) * MPoly::variable(vars, y, static_cast<std::uint32_t>(j));
    if (r.is_zero())
      continue;
    ValidationReport v = validate(P, r);
    if (!v.reduced())
      return v.current;
  }
}

// d weighted points with pairwise distinct polynomial roots and nonzero
// polynomial weights, all of total degree <= deg.
inline std::vector<WeightedPoint> random_weighted_points(std::mt19937_64& rng, std::size_t n, std::size_t d,
                                                         unsigned deg) {
  VarList base = base_variables(n);
  std::vector<WeightedPoint> pts;
  while (pts.size() < d) {
    MPoly root = random_poly(rng, base, deg, 2);
    bool fresh = true;
    for (const auto& p : pts)
      fresh = fresh && p.root.num() != root;
    if (!fresh)
      continue;
    pts.push_back({RatFunc(root), RatFunc(random_nonzero_poly(rng, base, deg, 2))});
  }
  return pts;
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n, int range = 7) {
  std::vector<Rational> x;
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<int> num(-range * 4, range * 4);
    int v = num(rng);
    x.push_back(rational(v, 4) + rational(1, 7));
  }
  return x;
}

} // namespace residual::sampling

#endif
