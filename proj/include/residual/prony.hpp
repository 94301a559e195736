#ifndef RESIDUAL_PRONY_HPP
#define RESIDUAL_PRONY_HPP

#include <residual/current.hpp>
#include <residual/matrix.hpp>
#include <residual/parallel.hpp>
#include <residual/trace.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace residual {

// Annihilating recurrence u_{k+d} + a_1 u_{k+d-1} + ... + a_d u_k = 0 of the
// smallest order consistent with every available entry.
struct DegreeFit {
  std::size_t degree = 0;
  std::vector<RatFunc> coefficients; // a_1..a_d
};

namespace detail {

inline bool weighted_sum_vanishes(const std::vector<MPoly>& w, const std::vector<const RatFunc*>& f) {
  UnreducedSum sum(w.front().var_list());
  for (std::size_t j = 0; j < w.size(); ++j)
    sum.add(w[j] * f[j]->num(), f[j]->den());
  return sum.is_zero();
}

// Solves H_d c = -(u_d..u_{2d-1}) fraction-free (c_j = s_j / det) and checks
// det u_{k+d} + sum_j s_j u_{k+j} = 0 on the whole sequence before forming
// any rational function. c_j multiplies u_{k+j}, so a_i = c_{d-i}.
inline std::optional<std::vector<RatFunc>> fit_recurrence(const TraceSequence& t, std::size_t d) {
  FracMatrix h = hankel(t, d);
  std::vector<RatFunc> rhs;
  for (std::size_t k = d; k < 2 * d; ++k)
    rhs.push_back(-t[k]);
  auto sol = try_solve_scaled(h, rhs);
  if (!sol)
    return std::nullopt;
  std::vector<MPoly> w = sol->scaled;
  w.push_back(sol->det);
  for (std::size_t k = 0; k + d < t.size(); ++k) {
    std::vector<const RatFunc*> window;
    for (std::size_t j = 0; j <= d; ++j)
      window.push_back(&t[k + j]);
    if (!weighted_sum_vanishes(w, window))
      return std::nullopt;
  }
  std::vector<RatFunc> a;
  for (std::size_t i = 1; i <= d; ++i)
    a.emplace_back(sol->scaled[d - i], sol->det);
  return a;
}

} // namespace detail

inline DegreeFit fit_degree(const TraceSequence& t, std::size_t d_max) {
  if (d_max == 0)
    detail::fail("prony-reconstruct", "d_max must be positive");
  if (t.size() < 2 * d_max)
    detail::fail("prony-reconstruct", "need at least 2*d_max = " + std::to_string(2 * d_max) + " trace entries, have " +
                                          std::to_string(t.size()));
  if (t.is_zero())
    return {};
  for (std::size_t d = 1; d <= d_max; ++d)
    if (auto a = detail::fit_recurrence(t, d))
      return {d, std::move(*a)};
  detail::fail("prony-reconstruct", "no consistent degree d <= " + std::to_string(d_max) +
                                        ": sequence is not the trace of a current of degree <= d_max");
}

// Smallest d with det H_d != 0 whose recurrence annihilates all entries; 0
// for the all-zero sequence.
inline std::size_t detect_degree(const TraceSequence& t, std::size_t d_max) { return fit_degree(t, d_max).degree; }

struct ReconstructionReport {
  std::size_t degree = 0;
  // Present when the reconstruction lands in the polynomial normal form.
  // Absent for the zero sequence and when coefficients are meromorphic.
  std::optional<ResidualCurrent> current;
  std::vector<RatFunc> coefficients; // a_1..a_d
  std::vector<RatFunc> numerator;    // coefficients of y^(d-1), ..., y^0 in r
  bool meromorphic_coefficients = false;
  std::size_t residual_violations = 0;

  bool is_zero() const { return degree == 0; }

  CurrentOrZero result() const {
    if (is_zero())
      return ZeroCurrent{};
    if (!current)
      detail::fail("prony-reconstruct", "reconstruction has meromorphic coefficients; no polynomial normal form");
    return *current;
  }
};

// Inverts the trace map: fits the minimal recurrence, takes
// P = y^d + a_1 y^(d-1) + ... + a_d and
// r = y^(d-1) u_0 + y^(d-2) (u_1 + a_1 u_0) + ... + (u_{d-1} + a_1 u_{d-2} + ... + a_{d-1} u_0),
// then confirms the traces of (P, r) reproduce the input.
inline ReconstructionReport reconstruct(const TraceSequence& t, std::size_t d_max, const std::string& fiber = "y") {
  DegreeFit fit = fit_degree(t, d_max);
  ReconstructionReport report;
  report.degree = fit.degree;
  if (fit.degree == 0)
    return report;
  const std::size_t d = fit.degree;
  report.coefficients = fit.coefficients;
  for (std::size_t j = 0; j < d; ++j) {
    RatFunc s = t[j];
    for (std::size_t i = 1; i <= j; ++i)
      s += fit.coefficients[i - 1] * t[j - i];
    report.numerator.push_back(std::move(s));
  }

  auto polynomial = [](const RatFunc& f) { return f.is_polynomial(); };
  bool normal_form = std::all_of(report.coefficients.begin(), report.coefficients.end(), polynomial) &&
                     std::all_of(report.numerator.begin(), report.numerator.end(), polynomial);
  if (!normal_form) {
    report.meromorphic_coefficients = true;
    report.residual_violations = recurrence_check(t, report.coefficients).size();
    return report;
  }

  std::vector<std::string> names = t.base_vars()->empty() ? std::vector<std::string>{} : *t.base_vars();
  if (std::find(names.begin(), names.end(), fiber) != names.end())
    detail::fail("prony-reconstruct", "fiber variable '" + fiber + "' collides with a base variable");
  names.push_back(fiber);
  VarList vars = make_vars(std::move(names));
  const std::size_t y = vars->size() - 1;
  MPoly P = MPoly::variable(vars, y, static_cast<std::uint32_t>(d));
  MPoly r(vars);
  for (std::size_t i = 1; i <= d; ++i)
    P += report.coefficients[i - 1].num().embed(vars) * MPoly::variable(vars, y, static_cast<std::uint32_t>(d - i));
  for (std::size_t j = 0; j < d; ++j)
    r += report.numerator[j].num().embed(vars) * MPoly::variable(vars, y, static_cast<std::uint32_t>(d - 1 - j));

  ValidationReport checked = validate(P, r);
  if (checked.reduced() || checked.remainder_taken)
    detail::fail("prony-reconstruct", "reconstructed pair fails validation (gcd_y(P, r) != 1)");
  TraceSequence again = traces(checked.current, t.size());
  for (std::size_t k = 0; k < t.size(); ++k)
    if (again[k] != t[k])
      ++report.residual_violations;
  if (report.residual_violations != 0)
    detail::fail("prony-reconstruct", "reconstructed current does not reproduce " +
                                          std::to_string(report.residual_violations) + " trace entries");
  report.current = std::move(checked.current);
  return report;
}

/// Taylor coefficients c_0..c_{L-1} of a one-variable function at base_point.
struct SeriesSample {
  Rational base_point;
  std::vector<Rational> coefficients;
};

struct NotRational {
  std::string reason;
};

using RationalVerdict = std::variant<RatFunc, NotRational>;

/// Bounded-degree rational reconstruction from series data (Pade type).
///
/// Looks for q of degree <= max_den_deg with q(0) != 0 such that q * f has no
/// terms of degree max_num_deg+1 .. L-1, reads p off the low-order terms and
/// verifies the series of p/q against every supplied coefficient. When
/// L >= max_num_deg + max_den_deg + 1 any two such p/q agree, so a verified
/// answer is the unique one. The result is expressed in `var` (the base point
/// is undone by substituting t = var - base_point).
inline RationalVerdict detect_rational(const SeriesSample& s, std::size_t max_num_deg, std::size_t max_den_deg,
                                       const std::string& var = "x") {
  const auto& c = s.coefficients;
  const std::size_t L = c.size();
  const std::size_t m = max_num_deg;
  const std::size_t n = max_den_deg;
  if (L == 0)
    detail::fail("prony-reconstruct", "series sample needs at least one coefficient");
  if (L < m + n + 2)
    detail::fail("prony-reconstruct", "series of length " + std::to_string(L) + " is too short for degree bounds (" +
                                          std::to_string(m) + ", " + std::to_string(n) + "); need " +
                                          std::to_string(m + n + 2));
  auto coeff = [&](std::ptrdiff_t k) { return k < 0 ? Rational(0) : c[static_cast<std::size_t>(k)]; };

  std::vector<std::vector<Rational>> eqs;
  for (std::size_t k = m + 1; k < L; ++k) {
    std::vector<Rational> row(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
      row[j] = coeff(static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(j));
    eqs.push_back(std::move(row));
  }
  auto basis = rational_nullspace(std::move(eqs), n + 1);
  if (basis.empty())
    return NotRational{"no denominator of degree <= " + std::to_string(n) + " annihilates the series tail"};
  auto chosen = std::find_if(basis.begin(), basis.end(), [](const auto& v) { return v[0] != 0; });
  if (chosen == basis.end())
    detail::fail("prony-reconstruct", "degenerate Pade system: every admissible denominator vanishes at the base point");
  const std::vector<Rational>& q = *chosen;

  std::vector<Rational> p(m + 1);
  for (std::size_t k = 0; k <= m; ++k)
    for (std::size_t j = 0; j <= std::min(k, n); ++j)
      p[k] += q[j] * coeff(static_cast<std::ptrdiff_t>(k - j));

  // Full-length verification of the series of p/q.
  std::vector<Rational> f(L);
  for (std::size_t k = 0; k < L; ++k) {
    Rational acc = k <= m ? p[k] : Rational(0);
    for (std::size_t j = 1; j <= std::min(k, n); ++j)
      acc -= q[j] * f[k - j];
    f[k] = acc / q[0];
    if (f[k] != c[k])
      return NotRational{"series of the candidate differs from the sample at index " + std::to_string(k)};
  }

  VarList vars = make_vars({var});
  MPoly shifted = MPoly::variable(vars, 0) - MPoly::constant(vars, s.base_point);
  MPoly num(vars);
  MPoly den(vars);
  MPoly power = MPoly::constant(vars, 1);
  for (std::size_t k = 0; k <= std::max(m, n); ++k) {
    if (k <= m)
      num += power * p[k];
    if (k <= n)
      den += power * q[k];
    power *= shifted;
  }
  return RatFunc(std::move(num), std::move(den));
}

// Raised when a sampled trace fails the rationality test; names the index.
class ContinuationError : public Error {
public:
  ContinuationError(std::size_t k, const std::string& what)
      : Error("prony-reconstruct", "trace u_" + std::to_string(k) + " (k=" + std::to_string(k) + "): " + what), k_(k) {}

  std::size_t k() const noexcept { return k_; }

private:
  std::size_t k_;
};

struct DegreeBounds {
  std::size_t num = 0;
  std::size_t den = 0;
};

/// Recovers each u_k as a rational function from its series, then inverts
/// the trace map on the recovered functions. The result is the continuation
/// of the current whose traces were sampled.
inline ReconstructionReport continue_current(const std::vector<SeriesSample>& series, std::size_t d_max,
                                             DegreeBounds bounds, const std::string& var = "x",
                                             const std::string& fiber = "y") {
  if (d_max == 0)
    detail::fail("prony-reconstruct", "d_max must be positive");
  if (series.size() < 2 * d_max)
    detail::fail("prony-reconstruct", "need at least 2*d_max = " + std::to_string(2 * d_max) + " trace series, have " +
                                          std::to_string(series.size()));
  for (const auto& s : series)
    if (s.base_point != series.front().base_point)
      detail::fail("prony-reconstruct", "all trace series must share one base point");

  std::vector<std::optional<RatFunc>> recovered(series.size());
  std::vector<std::string> failures(series.size());
  parallel_for(series.size(), [&](std::size_t k) {
    try {
      auto verdict = detect_rational(series[k], bounds.num, bounds.den, var);
      if (auto* f = std::get_if<RatFunc>(&verdict))
        recovered[k] = std::move(*f);
      else
        failures[k] = std::get<NotRational>(verdict).reason;
    } catch (const Error& e) {
      failures[k] = e.what();
    }
  });
  for (std::size_t k = 0; k < series.size(); ++k)
    if (!recovered[k])
      throw ContinuationError(k, "not rational within degree bounds (" + std::to_string(bounds.num) + ", " +
                                     std::to_string(bounds.den) + "): " + failures[k]);

  std::vector<RatFunc> u;
  u.reserve(series.size());
  for (auto& f : recovered)
    u.push_back(std::move(*f));
  return reconstruct(TraceSequence(std::move(u)), d_max, fiber);
}

/// Taylor coefficients of f at x0 up to (but excluding) degree `length`.
/// f must be regular at x0.
inline SeriesSample taylor_sample(const RatFunc& f, const Rational& x0, std::size_t length) {
  if (f.var_list()->size() != 1)
    detail::fail("prony-reconstruct", "series sampling needs a one-variable function");
  const VarList& vars = f.var_list();
  MPoly shift = MPoly::variable(vars, 0) + MPoly::constant(vars, x0);
  std::vector<MPoly> image{shift};
  MPoly num = f.num().substitute(image, vars);
  MPoly den = f.den().substitute(image, vars);
  auto coeffs = [&](const MPoly& p) {
    std::vector<Rational> out(length);
    for (const auto& t : p.terms())
      if (t.exps[0] < length)
        out[t.exps[0]] = t.coeff;
    return out;
  };
  auto a = coeffs(num);
  auto b = coeffs(den);
  if (b.empty() || b[0] == 0)
    detail::fail("prony-reconstruct", "function has a pole at the base point");
  SeriesSample s{x0, std::vector<Rational>(length)};
  for (std::size_t k = 0; k < length; ++k) {
    Rational acc = a[k];
    for (std::size_t j = 1; j <= k; ++j)
      acc -= b[j] * s.coefficients[k - j];
    s.coefficients[k] = acc / b[0];
  }
  return s;
}

} // namespace residual

#endif
