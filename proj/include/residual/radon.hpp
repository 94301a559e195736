#ifndef RESIDUAL_RADON_HPP
#define RESIDUAL_RADON_HPP

#include <residual/current.hpp>
#include <residual/residue.hpp>
#include <residual/trace.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace residual {

// Coordinates (a, b) on the lines x_i = a_i y + b_i, i = 1..n. Lines meeting
// the codimension-two locus at infinity are outside the chart. Variables are
// ordered a_1..a_n, b_1..b_n; for n = 1 they are named "a" and "b".
class LineChart {
public:
  explicit LineChart(std::size_t n) : n_(n) {
    if (n == 0)
      detail::fail("radon-transform", "base dimension must be positive");
    std::vector<std::string> names;
    for (const char* prefix : {"a", "b"})
      for (std::size_t i = 1; i <= n; ++i)
        names.push_back(n == 1 ? std::string(prefix) : prefix + std::to_string(i));
    vars_ = make_vars(std::move(names));
  }

  std::size_t n() const { return n_; }
  const VarList& vars() const { return vars_; }
  std::size_t a_index(std::size_t i) const { return i - 1; }     // i is 1-based
  std::size_t b_index(std::size_t i) const { return n_ + i - 1; } // i is 1-based

  // Pencil coordinates: the a-variables alone.
  VarList a_vars() const {
    std::vector<std::string> names(vars_->begin(), vars_->begin() + static_cast<std::ptrdiff_t>(n_));
    return make_vars(std::move(names));
  }

  VarList with_fiber(const std::string& fiber) const {
    std::vector<std::string> names = *vars_;
    if (std::find(names.begin(), names.end(), fiber) != names.end())
      detail::fail("radon-transform", "fiber variable '" + fiber + "' collides with a chart variable");
    names.push_back(fiber);
    return make_vars(std::move(names));
  }

private:
  std::size_t n_;
  VarList vars_;
};

namespace detail {

// Residue sums of r y^k / P along a family of lines x_i = lines[i] (each a
// polynomial in the target variables, whose last variable is the fiber).
inline std::vector<RatFunc> line_residue_sums(const ResidualCurrent& c, const std::vector<MPoly>& lines,
                                              const VarList& target, std::size_t count) {
  std::vector<MPoly> images = lines;
  images.push_back(MPoly::variable(target, target->size() - 1));
  MPoly P = c.P().substitute(images, target);
  MPoly r = c.r().substitute(images, target);
  const std::size_t y = target->size() - 1;
  if (P.is_zero() || P.degree_in(y) == 0)
    fail("radon-transform", "substituted denominator has no poles along the line family (degenerate family)");
  MPoly lead = leading_coeff_in(P, y);
  if (lead.is_zero())
    fail("radon-transform", "leading y-coefficient vanishes identically: support is asymptotically vertical in this chart");
  return residue_sums_of_powers(RationalForm1D(r, P, y), count);
}

// d/dv f == d/dw g, tested without reduction.
inline bool same_partials(const RatFunc& f, std::size_t v, const RatFunc& g, std::size_t w) {
  UnreducedSum diff(f.var_list());
  diff.add_partial(f, v);
  diff.add_partial(g, w, true);
  return diff.is_zero();
}

// f(images) == g, compared by cross-multiplication without reducing f(images).
inline bool same_value(const RatFunc& f, std::span<const MPoly> images, const VarList& target, const RatFunc& g) {
  MPoly num = f.num().substitute(images, target);
  MPoly den = f.den().substitute(images, target);
  if (den.is_zero())
    fail("radon-transform", "restriction hits a pole of the transform identically");
  return num * g.den() == g.num() * den;
}

} // namespace detail

/// u_k(a, b) for k = 0..k_max: the residue sum in y of
/// r(a y + b, y) y^k / P(a y + b, y), after normalizing the substituted
/// denominator to be monic in y. Zeros of its leading coefficient c(a) remain
/// as poles of the u_k.
inline std::vector<RatFunc> radon(const ResidualCurrent& c, std::size_t k_max) {
  LineChart chart(c.base_dim());
  VarList target = chart.with_fiber(c.fiber_name());
  const std::size_t y = target->size() - 1;
  std::vector<MPoly> lines;
  for (std::size_t i = 1; i <= chart.n(); ++i)
    lines.push_back(MPoly::variable(target, chart.a_index(i)) * MPoly::variable(target, y) +
                    MPoly::variable(target, chart.b_index(i)));
  return detail::line_residue_sums(c, lines, target, k_max + 1);
}

/// R(alpha) = sum over I of u_{|I|} eps_I, where for a subset I of {1..n} the
/// basis n-form is eps_I = dc_1 ^ ... ^ dc_n with c_i = a_i for i in I and
/// c_i = b_i otherwise. This is the orientation produced by expanding
/// (y da_1 + db_1) ^ ... ^ (y da_n + db_n); for n = 1 it is u_1 da + u_0 db.
/// In the sorted basis da^I ^ db^{I^c} the coefficient picks up
/// sorted_sign(I).
class RadonForm {
public:
  RadonForm(std::size_t n, std::vector<RatFunc> components) : n_(n), components_(std::move(components)) {
    if (components_.size() != (std::size_t{1} << n))
      detail::fail("radon-transform", "need one component per subset");
  }

  std::size_t n() const { return n_; }
  std::size_t subset_count() const { return components_.size(); }
  const RatFunc& component(unsigned subset) const { return components_.at(subset); }
  const VarList& var_list() const { return components_.front().var_list(); }

  // Coordinate indices (a_1..a_n = 0..n-1, b_1..b_n = n..2n-1) of eps_I's
  // factors, in wedge order.
  std::vector<std::size_t> wedge_order(unsigned subset) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n_; ++i)
      idx.push_back((subset >> i) & 1U ? i : n_ + i);
    return idx;
  }

  int sorted_sign(unsigned subset) const {
    auto idx = wedge_order(subset);
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = i + 1; j < idx.size(); ++j)
        if (idx[i] > idx[j])
          sign = -sign;
    return sign;
  }

  // Coefficient on da^I ^ db^{I^c} (a-factors then b-factors, ascending).
  RatFunc sorted_coefficient(unsigned subset) const {
    return sorted_sign(subset) > 0 ? component(subset) : -component(subset);
  }

  // dR in the sorted basis of (n+1)-forms, keyed by the ascending coordinate
  // indices. Only nonzero coefficients are kept.
  std::map<std::vector<std::size_t>, RatFunc> exterior_derivative() const {
    std::map<std::vector<std::size_t>, RatFunc> out;
    const std::size_t dims = 2 * n_;
    for (unsigned subset = 0; subset < components_.size(); ++subset) {
      auto support = wedge_order(subset);
      std::sort(support.begin(), support.end());
      RatFunc coeff = sorted_coefficient(subset);
      if (coeff.is_zero())
        continue;
      for (std::size_t v = 0; v < dims; ++v) {
        if (std::find(support.begin(), support.end(), v) != support.end())
          continue;
        RatFunc partial = coeff.diff(v);
        if (partial.is_zero())
          continue;
        auto below = std::count_if(support.begin(), support.end(), [&](std::size_t s) { return s < v; });
        std::vector<std::size_t> key = support;
        key.insert(std::upper_bound(key.begin(), key.end(), v), v);
        RatFunc term = below % 2 == 0 ? partial : -partial;
        auto [it, inserted] = out.try_emplace(key, term);
        if (!inserted)
          it->second += term;
      }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
  }

  // Same test as exterior_derivative().empty(), without reducing anything.
  bool is_closed() const {
    std::map<std::vector<std::size_t>, UnreducedSum> sums;
    for (unsigned subset = 0; subset < components_.size(); ++subset) {
      auto support = wedge_order(subset);
      std::sort(support.begin(), support.end());
      const RatFunc& coeff = component(subset);
      for (std::size_t v = 0; v < 2 * n_; ++v) {
        if (std::find(support.begin(), support.end(), v) != support.end())
          continue;
        auto below = std::count_if(support.begin(), support.end(), [&](std::size_t s) { return s < v; });
        std::vector<std::size_t> key = support;
        key.insert(std::upper_bound(key.begin(), key.end(), v), v);
        bool negate = (below % 2 == 1) != (sorted_sign(subset) < 0);
        sums.try_emplace(key, var_list()).first->second.add_partial(coeff, v, negate);
      }
    }
    return std::all_of(sums.begin(), sums.end(), [](const auto& kv) { return kv.second.is_zero(); });
  }

private:
  std::size_t n_;
  std::vector<RatFunc> components_;
};

inline RadonForm assemble_radon_form(const std::vector<RatFunc>& u, std::size_t n) {
  if (n == 0)
    detail::fail("radon-transform", "base dimension must be positive");
  if (u.size() < n + 1)
    detail::fail("radon-transform", "need at least n+1 = " + std::to_string(n + 1) + " entries, have " +
                                        std::to_string(u.size()));
  std::vector<RatFunc> components;
  for (unsigned subset = 0; subset < (1U << n); ++subset)
    components.push_back(u[static_cast<std::size_t>(std::popcount(subset))]);
  return RadonForm(n, std::move(components));
}

struct ClosednessViolation {
  std::size_t i; // 1-based coordinate index
  std::size_t k;
  bool operator==(const ClosednessViolation&) const = default;
};

/// Pairs (i, k), k = 0..k_max, where d/db_i u_{k+n} != d/da_i u_{k+n-1}.
inline std::vector<ClosednessViolation> closedness_check(const std::vector<RatFunc>& u, std::size_t n,
                                                         std::size_t k_max) {
  LineChart chart(n);
  if (u.size() < k_max + n + 1)
    detail::fail("radon-transform", "closedness check through k = " + std::to_string(k_max) + " needs " +
                                        std::to_string(k_max + n + 1) + " entries");
  std::vector<ClosednessViolation> out;
  for (std::size_t k = 0; k <= k_max; ++k) {
    for (std::size_t i = 1; i <= n; ++i) {
      if (!detail::same_partials(u[k + n], chart.b_index(i), u[k + n - 1], chart.a_index(i)))
        out.push_back({i, k});
    }
  }
  return out;
}

/// Traces along the pencil of lines through the apex (x0, y0), in the
/// a-coordinates: u_k(a, x0 - a y0). Computed directly from the lines
/// x = a (y - y0) + x0 and checked against substitution into radon().
inline TraceSequence pencil_projection(const ResidualCurrent& c, const std::vector<Rational>& apex_x,
                                       const Rational& apex_y, std::size_t k_max) {
  const std::size_t n = c.base_dim();
  if (apex_x.size() != n)
    detail::fail("radon-transform", "apex needs " + std::to_string(n) + " base coordinates");
  std::vector<Rational> point = apex_x;
  point.push_back(apex_y);
  if (c.P().evaluate(point) == 0)
    detail::fail("radon-transform", "apex lies on the support (P(x0, y0) = 0)");

  LineChart chart(n);
  VarList pencil = chart.a_vars();
  std::vector<std::string> names = *pencil;
  names.push_back(c.fiber_name());
  VarList target = make_vars(std::move(names));
  const std::size_t y = target->size() - 1;
  std::vector<MPoly> lines;
  for (std::size_t i = 0; i < n; ++i)
    lines.push_back(MPoly::variable(target, i) * (MPoly::variable(target, y) - MPoly::constant(target, apex_y)) +
                    MPoly::constant(target, apex_x[i]));
  std::vector<RatFunc> direct = detail::line_residue_sums(c, lines, target, k_max + 1);

  std::vector<RatFunc> full = radon(c, k_max);
  std::vector<MPoly> images;
  for (std::size_t i = 0; i < n; ++i)
    images.push_back(MPoly::variable(pencil, i));
  for (std::size_t i = 0; i < n; ++i)
    images.push_back(MPoly::constant(pencil, apex_x[i]) - MPoly::variable(pencil, i) * apex_y);
  for (std::size_t k = 0; k <= k_max; ++k)
    if (!detail::same_value(full[k], images, pencil, direct[k]))
      detail::fail("radon-transform", "pencil traces disagree with the restricted transform at k = " + std::to_string(k));
  return TraceSequence(std::move(direct));
}

/// True iff u_0..u_{k_probe+n} all vanish identically. By injectivity of the
/// trace map this only happens for the zero current.
inline bool is_radon_zero(const CurrentOrZero& c, std::size_t k_probe) {
  if (std::holds_alternative<ZeroCurrent>(c))
    return true;
  const auto& current = std::get<ResidualCurrent>(c);
  auto u = radon(current, k_probe + current.base_dim());
  return std::all_of(u.begin(), u.end(), [](const RatFunc& f) { return f.is_zero(); });
}

} // namespace residual

#endif
