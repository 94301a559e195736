#ifndef RESIDUAL_CURRENT_HPP
#define RESIDUAL_CURRENT_HPP

#include <residual/poly_gcd.hpp>
#include <residual/ratfunc.hpp>
#include <residual/resultant.hpp>

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace residual {

/// A residual current of bidegree (N,1) with proper support over the base,
/// stored in the normal form  dbar[ r dx ^ dy / P ]:
///   - P is monic in the fiber variable y (the last variable), deg_y P = d >= 1,
///   - deg_y r < d,
///   - gcd_y(P, r) = 1, so P generates the annihilator of the current.
/// Instances are only produced by validate() and from_weighted_points().
class ResidualCurrent {
public:
  std::size_t base_dim() const { return P_.nvars() - 1; }
  std::size_t fiber() const { return P_.nvars() - 1; }
  const std::string& fiber_name() const { return P_.vars().back(); }
  std::size_t degree() const { return P_.degree_in(fiber()); }
  const MPoly& P() const { return P_; }
  const MPoly& r() const { return r_; }
  const VarList& var_list() const { return P_.var_list(); }
  const VarList& base_vars() const { return base_; }

  /// Coefficients a_1..a_d of P = y^d + a_1 y^(d-1) + ... + a_d, over the base
  /// variables.
  std::vector<MPoly> coefficients() const {
    auto c = P_.coefficients_in(fiber());
    std::vector<MPoly> out;
    for (std::size_t i = 1; i <= degree(); ++i)
      out.push_back(c[degree() - i].drop_variable(fiber(), base_));
    return out;
  }

  bool operator==(const ResidualCurrent& o) const { return P_ == o.P_ && r_ == o.r_; }
  bool operator!=(const ResidualCurrent& o) const { return !(*this == o); }

private:
  ResidualCurrent(MPoly P, MPoly r) : P_(std::move(P)), r_(std::move(r)) {
    std::vector<std::string> names = P_.vars();
    names.pop_back();
    base_ = make_vars(std::move(names));
  }

  friend struct ValidationReport validate(const MPoly& P, const MPoly& r);

  MPoly P_;
  MPoly r_;
  VarList base_;
};

/// Degenerate outcome of operations that can yield the zero current.
struct ZeroCurrent {
  bool operator==(const ZeroCurrent&) const = default;
};

using CurrentOrZero = std::variant<ZeroCurrent, ResidualCurrent>;

struct ValidationReport {
  ResidualCurrent current;
  bool remainder_taken = false; // r was replaced by r mod_y P
  MPoly removed_factor;         // common factor divided out of P and r (1 if none)

  bool reduced() const { return !removed_factor.is_one(); }
};

inline ValidationReport validate(const MPoly& P, const MPoly& r) {
  P.require_same_vars(r);
  if (P.nvars() < 2)
    detail::fail("current-model", "invariant 'n >= 1 base variables plus fiber' violated");
  const std::size_t y = P.nvars() - 1;
  if (P.degree_in(y) == 0)
    detail::fail("current-model", "invariant 'deg_y P >= 1' violated: P has y-degree 0");
  if (!is_monic_in(P, y))
    detail::fail("current-model", "invariant 'P monic in y' violated: P is not monic in " + P.vars()[y]);
  if (r.is_zero())
    detail::fail("current-model", "invariant 'r != 0' violated: zero current is degenerate");

  MPoly num = r;
  bool remainder_taken = false;
  if (num.degree_in(y) >= P.degree_in(y)) {
    num = poly_divmod_y(num, P, y).remainder;
    remainder_taken = true;
    if (num.is_zero())
      detail::fail("current-model", "invariant 'r != 0' violated: r is a multiple of P, the current is zero");
  }
  MPoly den = P;
  MPoly g = poly_gcd_y(den, num, y);
  if (!g.is_one()) {
    den = divide_or_fail(den, g, "current-model");
    num = divide_or_fail(num, g, "current-model");
  }
  return ValidationReport{ResidualCurrent(std::move(den), std::move(num)), remainder_taken, std::move(g)};
}

inline ResidualCurrent make_current(const MPoly& P, const MPoly& r) { return validate(P, r).current; }

/// A fiber point y = root(x) carrying the weight f(x); both polynomial in x.
struct WeightedPoint {
  RatFunc root;
  RatFunc weight;
};

/// Reduced current with pointwise residue weight(x) at each root(x):
/// P = prod (y - y_i) and r = sum f_i prod_{j != i} (y - y_j), which is the
/// Lagrange interpolant of f_i P'(y_i).
inline ResidualCurrent from_weighted_points(std::span<const WeightedPoint> points, const std::string& fiber = "y") {
  if (points.empty())
    detail::fail("current-model", "at least one weighted point is required");
  std::vector<std::string> names = points.front().root.vars();
  names.push_back(fiber);
  VarList vars = make_vars(std::move(names));
  const std::size_t y = vars->size() - 1;
  std::vector<MPoly> lin;
  for (const auto& pt : points) {
    if (!pt.root.is_polynomial() || !pt.weight.is_polynomial())
      detail::fail("current-model", "roots and weights must be polynomial in the base variables");
    if (pt.weight.is_zero())
      detail::fail("current-model", "zero weight");
    lin.push_back(MPoly::variable(vars, y) - pt.root.num().embed(vars));
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (lin[i] == lin[j])
        detail::fail("current-model", "coincident roots " + std::to_string(i) + " and " + std::to_string(j));

  MPoly P = MPoly::constant(vars, 1);
  for (const auto& l : lin)
    P *= l;
  MPoly r(vars);
  for (std::size_t i = 0; i < points.size(); ++i) {
    MPoly term = points[i].weight.num().embed(vars);
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != i)
        term *= lin[j];
    r += term;
  }
  return make_current(P, r);
}

/// Discriminant of P in y over the base variables; equal to the product of
/// (y_i - y_j)^2 over pairs of fiber roots, so it vanishes exactly where the
/// fiber has a multiple point.
inline MPoly support_discriminant(const ResidualCurrent& c) {
  return discriminant_in(c.P(), c.fiber()).drop_variable(c.fiber(), c.base_vars());
}

} // namespace residual

#endif
