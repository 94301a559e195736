#ifndef RESIDUAL_RESIDUE_HPP
#define RESIDUAL_RESIDUE_HPP

#include <residual/parallel.hpp>
#include <residual/poly_gcd.hpp>
#include <residual/ratfunc.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace residual {

using Complex = std::complex<double>;

// The 1-form (num/den) dy on the y-line; all other variables are parameters.
class RationalForm1D {
public:
  RationalForm1D(MPoly num, MPoly den, std::size_t fiber)
      : num_(std::move(num)), den_(std::move(den)), fiber_(fiber) {
    num_.require_same_vars(den_);
    if (fiber_ >= num_.nvars())
      detail::fail("residue-core", "fiber variable index out of range");
    if (den_.is_zero())
      detail::fail("residue-core", "denominator is identically zero");
    std::vector<std::string> params = num_.vars();
    params.erase(params.begin() + static_cast<std::ptrdiff_t>(fiber_));
    params_ = make_vars(std::move(params));
  }

  // Fiber variable is the last one.
  RationalForm1D(const MPoly& num, const MPoly& den) : RationalForm1D(num, den, num.nvars() == 0 ? 0 : num.nvars() - 1) {}

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  std::size_t fiber() const { return fiber_; }
  const VarList& parameters() const { return params_; }

private:
  MPoly num_;
  MPoly den_;
  std::size_t fiber_;
  VarList params_;
};

// Sum of the residues at all finite poles, computed as minus the residue at
// infinity: the coefficient of y^(d-1) in num mod den after making den monic.
// Parameters stay symbolic; den need not be square-free.
inline RatFunc residue_sum(const RationalForm1D& form) {
  const std::size_t y = form.fiber();
  detail::UPoly den = detail::to_upoly(form.den(), y);
  const std::size_t d = den.degree();
  if (d == 0)
    return RatFunc(form.parameters());
  detail::UPoly num = detail::to_upoly(form.num(), y);
  unsigned scale_power = (num.is_zero() || num.degree() < d) ? 0U : static_cast<unsigned>(num.degree() - d + 1);
  detail::UPoly rem = detail::pseudo_remainder(std::move(num), den);
  if (rem.coeffs.size() < d)
    return RatFunc(form.parameters());
  MPoly top = rem.coeffs[d - 1].drop_variable(y, form.parameters());
  MPoly lead = den.lc().pow(scale_power + 1).drop_variable(y, form.parameters());
  return RatFunc(std::move(top), std::move(lead));
}

// residue_sum(num * y^k / den) for k = 0..count-1, advancing the remainder
// one power of y at a time instead of dividing from scratch. With c the
// leading y-coefficient of den, the invariant is c^e num y^k = R_k mod den.
inline std::vector<RatFunc> residue_sums_of_powers(const RationalForm1D& form, std::size_t count) {
  const std::size_t y = form.fiber();
  const VarList& params = form.parameters();
  detail::UPoly den = detail::to_upoly(form.den(), y);
  const std::size_t d = den.degree();
  if (d == 0)
    return std::vector<RatFunc>(count, RatFunc(params));
  const MPoly& lead = den.lc();
  const bool unit_lead = lead.is_constant();
  detail::UPoly num = detail::to_upoly(form.num(), y);
  unsigned power = (num.is_zero() || num.degree() < d) ? 0U : static_cast<unsigned>(num.degree() - d + 1);
  detail::UPoly rem = detail::pseudo_remainder(std::move(num), den);
  if (unit_lead && power > 0) {
    Rational s = 1 / lead.constant_value();
    for (auto& c : rem.coeffs)
      c = c * Rational(pow_rational(s, power));
    power = 0;
  }
  rem.coeffs.resize(d, form.num().zero_like());

  std::vector<MPoly> tops;
  std::vector<unsigned> powers;
  tops.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    tops.push_back(rem.coeffs[d - 1]);
    powers.push_back(power);
    if (k + 1 == count)
      break;
    MPoly top = rem.coeffs[d - 1];
    for (std::size_t j = d - 1; j > 0; --j)
      rem.coeffs[j] = rem.coeffs[j - 1];
    rem.coeffs[0] = form.num().zero_like();
    if (unit_lead) {
      if (!top.is_zero()) {
        MPoly t = top * Rational(1 / lead.constant_value());
        for (std::size_t j = 0; j < d; ++j)
          rem.coeffs[j] -= t * den.coeffs[j];
      }
    } else {
      for (std::size_t j = 0; j < d; ++j)
        rem.coeffs[j] = rem.coeffs[j] * lead - top * den.coeffs[j];
      ++power;
    }
  }

  // Reducing each u_k is independent; the gcd work dominates for non-unit
  // leading coefficients.
  std::vector<RatFunc> out(tops.size(), RatFunc(params));
  const MPoly lead_base = lead.drop_variable(y, params);
  parallel_for(tops.size(), [&](std::size_t k) {
    MPoly num_k = tops[k].drop_variable(y, params);
    if (unit_lead)
      out[k] = RatFunc(num_k * Rational(1 / lead.constant_value()));
    else
      out[k] = RatFunc::over_power(std::move(num_k), lead_base, powers[k] + 1);
  });
  return out;
}

struct PoleResidue {
  Complex pole;
  Complex residue;
};

namespace detail {

inline Complex to_complex(const Rational& q) { return {q.get_d(), 0.0}; }

inline Complex evaluate_complex(const MPoly& p, std::span<const Complex> point) {
  return p.evaluate<Complex>(point, to_complex);
}

inline Complex evaluate_complex(const RatFunc& f, std::span<const Complex> point) {
  return evaluate_complex(f.num(), point) / evaluate_complex(f.den(), point);
}

// Coefficients (in increasing powers of y) of the specialization of p at the
// given parameter values.
inline std::vector<Complex> specialize(const MPoly& p, std::size_t fiber, std::span<const Complex> params) {
  if (params.size() + 1 != p.nvars())
    fail("residue-core", "expected " + std::to_string(p.nvars() - 1) + " parameter values, got " + std::to_string(params.size()));
  std::vector<Complex> point(p.nvars());
  for (std::size_t i = 0, k = 0; i < p.nvars(); ++i)
    point[i] = i == fiber ? Complex(1.0) : params[k++];
  std::vector<Complex> out;
  for (const auto& c : p.coefficients_in(fiber))
    out.push_back(evaluate_complex(c, point));
  return out;
}

inline Complex horner(std::span<const Complex> coeffs, Complex y) {
  Complex acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;)
    acc = acc * y + coeffs[i];
  return acc;
}

inline std::vector<Complex> derivative(std::span<const Complex> coeffs) {
  std::vector<Complex> out;
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    out.push_back(coeffs[i] * static_cast<double>(i));
  return out;
}

inline void trim_numeric(std::vector<Complex>& coeffs) {
  double big = 0.0;
  for (auto c : coeffs)
    big = std::max(big, std::abs(c));
  while (!coeffs.empty() && std::abs(coeffs.back()) <= 1e-14 * big)
    coeffs.pop_back();
}

// Roots via eigenvalues of the companion matrix of the monic normalization.
inline std::vector<Complex> companion_roots(std::vector<Complex> coeffs) {
  trim_numeric(coeffs);
  if (coeffs.size() < 2)
    return {};
  const auto n = static_cast<Eigen::Index>(coeffs.size() - 1);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i)
    companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i)
    companion(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    fail("residue-core", "companion eigenvalue iteration did not converge");
  std::vector<Complex> roots(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

inline double cauchy_bound(std::vector<Complex> coeffs) {
  trim_numeric(coeffs);
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i)
    m = std::max(m, std::abs(coeffs[i] / coeffs.back()));
  return 1.0 + m;
}

} // namespace detail

// Numeric poles and residues at one specialization of the parameters. Poles
// must be simple.
inline std::vector<PoleResidue> pointwise_residues(const RationalForm1D& form, std::span<const Complex> params) {
  auto den = detail::specialize(form.den(), form.fiber(), params);
  auto num = detail::specialize(form.num(), form.fiber(), params);
  detail::trim_numeric(den);
  if (den.empty())
    detail::fail("residue-core", "denominator vanishes at this specialization");
  auto dden = detail::derivative(den);
  double scale = 0.0;
  for (auto c : den)
    scale += std::abs(c / den.back());
  scale = std::max(1.0, scale);
  std::vector<PoleResidue> out;
  for (Complex root : detail::companion_roots(den)) {
    Complex slope = detail::horner(dden, root);
    if (std::abs(slope / den.back()) < 1e-9 * scale)
      detail::fail("residue-core", "repeated root detected near y = (" + std::to_string(root.real()) + ", " +
                                       std::to_string(root.imag()) + "); use residue_sum or perturb");
    out.push_back({root, detail::horner(num, root) / slope});
  }
  return out;
}

struct ContourSpec {
  Complex center = 0.0;
  double radius = 1.0;
  int points = 256;
};

// Circle centred at 0 with radius 1.25 times the largest pole modulus. The
// Cauchy bound would also enclose every pole, but it can overshoot by a large
// factor, and the integrand of y^k grows like radius^k, so a loose circle
// costs digits to cancellation. The trapezoidal error decays like 0.8^points.
inline ContourSpec default_contour(const RationalForm1D& form, std::span<const Complex> params, int points = 256) {
  auto den = detail::specialize(form.den(), form.fiber(), params);
  double reach = 0.0;
  for (Complex root : detail::companion_roots(den))
    reach = std::max(reach, std::abs(root));
  double radius = reach > 0.0 ? 1.25 * reach : 1.0;
  return {0.0, std::max(radius, 1e-3 * detail::cauchy_bound(den)), points};
}

// (1 / 2 pi i) times the integral of the form over the circle, by the
// trapezoidal rule.
inline Complex contour_oracle(const RationalForm1D& form, std::span<const Complex> params, const ContourSpec& spec) {
  if (!(spec.radius > 0.0))
    detail::fail("residue-core", "contour radius must be positive");
  if (spec.points < 16)
    detail::fail("residue-core", "contour needs at least 16 quadrature points");
  auto den = detail::specialize(form.den(), form.fiber(), params);
  auto num = detail::specialize(form.num(), form.fiber(), params);
  for (Complex root : detail::companion_roots(den)) {
    double dist = std::abs(root - spec.center);
    if (std::abs(dist - spec.radius) < 1e-6)
      detail::fail("residue-core", "pole within 1e-6 of the contour");
    if (dist > spec.radius)
      detail::fail("residue-core", "poles outside contour");
  }
  Complex sum = 0.0;
  for (int j = 0; j < spec.points; ++j) {
    double theta = 2.0 * std::numbers::pi * j / spec.points;
    Complex offset = std::polar(spec.radius, theta);
    Complex yv = spec.center + offset;
    Complex value = detail::horner(num, yv) / detail::horner(den, yv) * offset;
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
      detail::fail("residue-core", "non-finite quadrature value");
    sum += value;
  }
  return sum / static_cast<double>(spec.points);
}

// One row of the oracle report: exact residue sum specialized numerically
// against the contour quadrature.
struct OracleRecord {
  std::vector<Complex> x;
  Complex exact;
  Complex numeric;
  double abs_error = 0.0;
};

inline OracleRecord oracle_compare(const RationalForm1D& form, const RatFunc& exact_sum, std::span<const Complex> params,
                                   const ContourSpec& spec) {
  OracleRecord rec;
  rec.x.assign(params.begin(), params.end());
  rec.exact = detail::evaluate_complex(exact_sum, params);
  rec.numeric = contour_oracle(form, params, spec);
  rec.abs_error = std::abs(rec.exact - rec.numeric);
  return rec;
}

} // namespace residual

#endif
