#ifndef RESIDUAL_TRACE_HPP
#define RESIDUAL_TRACE_HPP

#include <residual/current.hpp>
#include <residual/matrix.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace residual {

// Moments u_0..u_m of a current under the fiber projection, as rational
// functions of the base variables.
class TraceSequence {
public:
  TraceSequence(std::vector<RatFunc> entries, std::optional<std::size_t> source_degree = std::nullopt)
      : entries_(std::move(entries)), source_degree_(source_degree) {
    if (entries_.empty())
      detail::fail("trace-engine", "trace sequence needs at least one entry");
    for (const auto& u : entries_)
      if (!same_vars(u.var_list(), entries_.front().var_list()))
        detail::fail("trace-engine", "trace entries use different variable lists");
  }

  std::size_t size() const { return entries_.size(); }
  const RatFunc& operator[](std::size_t k) const { return entries_.at(k); }
  const std::vector<RatFunc>& entries() const { return entries_; }
  const VarList& base_vars() const { return entries_.front().var_list(); }
  std::optional<std::size_t> source_degree() const { return source_degree_; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const RatFunc& u) { return u.is_zero(); });
  }

  bool operator==(const TraceSequence& o) const { return entries_ == o.entries_; }

private:
  std::vector<RatFunc> entries_;
  std::optional<std::size_t> source_degree_;
};

// u_k is the coefficient of y^(d-1) in r y^k mod_y P, i.e. the residue sum of
// r y^k dy / P over the fiber. The remainder is advanced one power of y at a
// time using y^d = -(a_1 y^(d-1) + ... + a_d).
inline TraceSequence traces(const ResidualCurrent& c, std::size_t count) {
  if (count == 0)
    detail::fail("trace-engine", "trace count must be at least 1");
  const std::size_t y = c.fiber();
  const std::size_t d = c.degree();
  const VarList& base = c.base_vars();
  std::vector<MPoly> a = c.coefficients();
  std::vector<MPoly> rem(d, MPoly(base));
  auto rc = c.r().coefficients_in(y);
  for (std::size_t j = 0; j < rc.size(); ++j)
    rem[j] = rc[j].drop_variable(y, base);

  std::vector<RatFunc> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.emplace_back(rem[d - 1]);
    if (k + 1 == count)
      break;
    MPoly top = rem[d - 1];
    for (std::size_t j = d - 1; j > 0; --j)
      rem[j] = rem[j - 1];
    rem[0] = MPoly(base);
    if (!top.is_zero())
      for (std::size_t j = 0; j < d; ++j)
        rem[j] -= top * a[d - 1 - j]; // a[d-1-j] = a_{d-j} multiplies y^j in P
  }
  return TraceSequence(std::move(out), d);
}

// Indices k for which u_{k+d} + a_1 u_{k+d-1} + ... + a_d u_k does not vanish.
inline std::vector<std::size_t> recurrence_check(const TraceSequence& t, const std::vector<RatFunc>& a) {
  const std::size_t d = a.size();
  if (t.size() < d + 1)
    detail::fail("trace-engine", "sequence shorter than d+1 = " + std::to_string(d + 1));
  std::vector<std::size_t> violations;
  for (std::size_t k = 0; k + d < t.size(); ++k) {
    RatFunc s = t[k + d];
    for (std::size_t i = 1; i <= d; ++i)
      if (!a[i - 1].is_zero())
        s += a[i - 1] * t[k + d - i];
    if (!s.is_zero())
      violations.push_back(k);
  }
  return violations;
}

// P is monic in its last variable and its other variables are the base.
inline std::vector<std::size_t> recurrence_check(const TraceSequence& t, const MPoly& P) {
  if (P.nvars() < 1)
    detail::fail("trace-engine", "P has no fiber variable");
  const std::size_t y = P.nvars() - 1;
  if (!is_monic_in(P, y))
    detail::fail("trace-engine", "P is not monic in the fiber variable");
  auto c = P.coefficients_in(y);
  const std::size_t d = c.size() - 1;
  std::vector<RatFunc> a;
  for (std::size_t i = 1; i <= d; ++i)
    a.emplace_back(c[d - i].drop_variable(y).embed(t.base_vars()));
  return recurrence_check(t, a);
}

// Symmetric moment matrix H_d with entry (i, j) = u_{i+j}, 0 <= i, j < d.
inline FracMatrix hankel(const TraceSequence& t, std::size_t d) {
  if (d == 0)
    detail::fail("trace-engine", "Hankel size must be positive");
  if (t.size() < 2 * d - 1)
    detail::fail("trace-engine", "need " + std::to_string(2 * d - 1) + " trace entries for a " + std::to_string(d) +
                                     "x" + std::to_string(d) + " Hankel matrix, have " + std::to_string(t.size()));
  std::vector<RatFunc> entries;
  entries.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      entries.push_back(t[i + j]);
  return FracMatrix(d, d, std::move(entries));
}

// The anti-ordered variant M with entry (i, j) = u_{d-1+i-j}. It is H_d with
// columns reversed, so det M = (-1)^(d(d-1)/2) det H_d.
inline FracMatrix reversed_hankel(const TraceSequence& t, std::size_t d) {
  FracMatrix h = hankel(t, d);
  std::vector<RatFunc> entries;
  entries.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      entries.push_back(h(i, d - 1 - j));
  return FracMatrix(d, d, std::move(entries));
}

inline int reversal_sign(std::size_t d) { return ((d * (d - 1) / 2) % 2 == 0) ? 1 : -1; }

} // namespace residual

#endif
