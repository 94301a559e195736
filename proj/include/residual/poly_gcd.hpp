#ifndef RESIDUAL_POLY_GCD_HPP
#define RESIDUAL_POLY_GCD_HPP

#include <residual/mpoly.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace residual {

namespace detail {

// Dense univariate view over a polynomial coefficient ring: coeffs[k]
// multiplies var^k. Trailing zeros are trimmed.
struct UPoly {
  std::vector<MPoly> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  std::size_t degree() const { return coeffs.size() - 1; }
  const MPoly& lc() const { return coeffs.back(); }

  void trim() {
    while (!coeffs.empty() && coeffs.back().is_zero())
      coeffs.pop_back();
  }
};

inline UPoly to_upoly(const MPoly& p, std::size_t var) {
  UPoly u{p.coefficients_in(var)};
  u.trim();
  return u;
}

inline MPoly from_upoly(const UPoly& u, const MPoly& like, std::size_t var) {
  if (u.is_zero())
    return like.zero_like();
  return MPoly::from_coefficients(like.var_list(), var, u.coeffs);
}

// lc(b)^(deg a - deg b + 1) * a = q * b + r, returning r.
inline UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  if (b.is_zero())
    fail("exact-algebra", "pseudo-division by zero");
  if (a.is_zero() || a.degree() < b.degree())
    return a;
  const std::size_t db = b.degree();
  const MPoly& lcb = b.lc();
  int missing = static_cast<int>(a.degree() - db) + 1;
  while (!a.is_zero() && a.degree() >= db) {
    MPoly t = a.lc();
    std::size_t shift = a.degree() - db;
    for (auto& c : a.coeffs)
      c = c * lcb;
    for (std::size_t j = 0; j <= db; ++j)
      a.coeffs[shift + j] -= t * b.coeffs[j];
    a.trim();
    --missing;
  }
  if (missing > 0) {
    MPoly scale = lcb.pow(static_cast<unsigned>(missing));
    for (auto& c : a.coeffs)
      c *= scale;
  }
  return a;
}

inline UPoly divide_coeffs(const UPoly& a, const MPoly& d) {
  UPoly out;
  out.coeffs.reserve(a.coeffs.size());
  for (const auto& c : a.coeffs)
    out.coeffs.push_back(divide_or_fail(c, d));
  return out;
}

inline std::optional<std::size_t> main_variable(const MPoly& a, const MPoly& b, bool require_both) {
  for (std::size_t i = a.nvars(); i-- > 0;) {
    bool in_a = a.depends_on(i);
    bool in_b = b.depends_on(i);
    if (require_both ? (in_a && in_b) : (in_a || in_b))
      return i;
  }
  return std::nullopt;
}

} // namespace detail

MPoly gcd(const MPoly& a, const MPoly& b);

// gcd of the coefficients of p viewed as a polynomial in var.
inline MPoly content_in(const MPoly& p, std::size_t var) {
  MPoly g = p.zero_like();
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero())
      continue;
    g = gcd(g, c);
    if (g.is_one())
      break;
  }
  return g;
}

inline MPoly primitive_part_in(const MPoly& p, std::size_t var) {
  if (p.is_zero())
    return p;
  return divide_or_fail(p, content_in(p, var));
}

namespace detail {

// Subresultant PRS on polynomials primitive in var with deg a >= deg b >= 1.
inline MPoly subresultant_gcd(const MPoly& a, const MPoly& b, std::size_t var) {
  UPoly A = to_upoly(a, var);
  UPoly B = to_upoly(b, var);
  if (A.degree() < B.degree())
    std::swap(A, B);
  MPoly g = a.one_like();
  MPoly h = a.one_like();
  for (;;) {
    std::size_t delta = A.degree() - B.degree();
    UPoly R = pseudo_remainder(A, B);
    if (R.is_zero())
      break;
    if (R.degree() == 0)
      return a.one_like();
    A = std::move(B);
    B = divide_coeffs(R, g * h.pow(static_cast<unsigned>(delta)));
    g = A.lc();
    if (delta == 1)
      h = g;
    else if (delta > 1)
      h = divide_or_fail(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
  }
  return primitive_part_in(from_upoly(B, a, var), var);
}

} // namespace detail

// Greatest common divisor in Q[vars], normalized to coprime integer
// coefficients with a positive leading coefficient (gcd(0, 0) = 0).
inline MPoly gcd(const MPoly& a, const MPoly& b) {
  a.require_same_vars(b);
  if (a.is_zero())
    return b.primitive();
  if (b.is_zero())
    return a.primitive();
  if (a.is_constant() || b.is_constant())
    return a.one_like();
  if (a.size() >= b.size()) {
    if (divide_exact(a, b))
      return b.primitive();
  } else if (divide_exact(b, a)) {
    return a.primitive();
  }

  // A variable present in only one argument cannot occur in a common factor,
  // so fold the other argument into the coefficients with respect to it.
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    bool in_a = a.depends_on(i);
    if (in_a == b.depends_on(i))
      continue;
    const MPoly& wide = in_a ? a : b;
    MPoly g = in_a ? b : a;
    for (const auto& c : wide.coefficients_in(i)) {
      if (c.is_zero())
        continue;
      g = gcd(g, c);
      if (g.is_one())
        break;
    }
    return g.primitive();
  }

  auto shared = detail::main_variable(a, b, true);
  if (!shared) {
    // No variable in common: any common factor would have to be constant
    // in every variable of a or of b.
    return a.one_like();
  }
  std::size_t v = *shared;
  MPoly ca = content_in(a, v);
  MPoly cb = content_in(b, v);
  MPoly c = gcd(ca, cb);
  MPoly pa = divide_or_fail(a, ca);
  MPoly pb = divide_or_fail(b, cb);
  MPoly g = detail::subresultant_gcd(pa, pb, v);
  return (c * g).primitive();
}

inline MPoly lcm(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero())
    return a.zero_like();
  return (divide_or_fail(a, gcd(a, b)) * b).primitive();
}

inline std::uint32_t degree_y(const MPoly& p, std::size_t fiber) { return p.degree_in(fiber); }

// Leading coefficient of p as a polynomial in var (a polynomial free of var).
inline MPoly leading_coeff_in(const MPoly& p, std::size_t var) {
  if (p.is_zero())
    return p;
  return p.coefficients_in(var).back();
}

inline bool is_monic_in(const MPoly& p, std::size_t var) {
  return !p.is_zero() && leading_coeff_in(p, var).is_one();
}

struct DivMod {
  MPoly quotient;
  MPoly remainder;
};

// Division by a divisor monic in the fiber variable: a = q*b + r with
// deg_fiber(r) < deg_fiber(b).
inline DivMod poly_divmod_y(const MPoly& a, const MPoly& b, std::size_t fiber) {
  a.require_same_vars(b);
  if (b.is_zero() || b.degree_in(fiber) == 0)
    detail::fail("exact-algebra", "divisor has degree 0 in '" + b.vars().at(fiber) + "'");
  if (!is_monic_in(b, fiber))
    detail::fail("exact-algebra", "divisor is not monic in '" + b.vars().at(fiber) + "'");
  detail::UPoly r = detail::to_upoly(a, fiber);
  detail::UPoly bu = detail::to_upoly(b, fiber);
  const std::size_t db = bu.degree();
  if (r.is_zero() || r.degree() < db)
    return {a.zero_like(), a};
  detail::UPoly q{std::vector<MPoly>(r.degree() - db + 1, a.zero_like())};
  for (std::size_t i = r.degree() + 1; i-- > db;) {
    if (i >= r.coeffs.size() || r.coeffs[i].is_zero())
      continue;
    MPoly c = r.coeffs[i];
    q.coeffs[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j)
      r.coeffs[i - db + j] -= c * bu.coeffs[j];
  }
  r.trim();
  q.trim();
  return {detail::from_upoly(q, a, fiber), detail::from_upoly(r, a, fiber)};
}

// gcd over K[y], K the fraction field of the remaining variables. The result
// is monic in y when its leading y-coefficient is constant, otherwise
// primitive with a positive leading coefficient.
inline MPoly poly_gcd_y(const MPoly& a, const MPoly& b, std::size_t fiber) {
  a.require_same_vars(b);
  if (a.is_zero() && b.is_zero())
    detail::fail("exact-algebra", "gcd of two zero polynomials");
  MPoly g = primitive_part_in(gcd(a, b), fiber);
  if (g.degree_in(fiber) == 0)
    return a.one_like();
  MPoly lc = leading_coeff_in(g, fiber);
  if (lc.is_constant())
    return g * Rational(1 / lc.constant_value());
  return g.primitive();
}

} // namespace residual

#endif
