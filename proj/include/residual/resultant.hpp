#ifndef RESIDUAL_RESULTANT_HPP
#define RESIDUAL_RESULTANT_HPP

#include <residual/matrix.hpp>
#include <residual/poly_gcd.hpp>

#include <vector>

namespace residual {

// Res_var(a, b) as the determinant of the Sylvester matrix, computed by
// fraction-free elimination. The result does not depend on var but is
// returned over the same variable list.
inline MPoly resultant_in(const MPoly& a, const MPoly& b, std::size_t var) {
  a.require_same_vars(b);
  if (a.is_zero() || b.is_zero())
    return a.zero_like();
  auto ac = a.coefficients_in(var);
  auto bc = b.coefficients_in(var);
  const std::size_t m = ac.size() - 1;
  const std::size_t n = bc.size() - 1;
  const std::size_t size = m + n;
  if (size == 0)
    return a.one_like();
  std::vector<MPoly> grid(size * size, a.zero_like());
  // Rows hold coefficients from the highest power down.
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t k = 0; k <= m; ++k)
      grid[row * size + row + k] = ac[m - k];
  for (std::size_t row = 0; row < m; ++row)
    for (std::size_t k = 0; k <= n; ++k)
      grid[(n + row) * size + row + k] = bc[n - k];
  int sign = bareiss_eliminate(grid, size, size, detail::poly_is_zero, detail::poly_exact_div);
  if (sign == 0)
    return a.zero_like();
  return sign > 0 ? grid.back() : -grid.back();
}

// Discriminant of p in var, sign convention (-1)^(d(d-1)/2) Res(p, p') / lc(p),
// so that it equals the product of (y_i - y_j)^2 over root pairs when p is
// monic.
inline MPoly discriminant_in(const MPoly& p, std::size_t var) {
  const std::uint32_t d = p.degree_in(var);
  if (d == 0)
    detail::fail("exact-algebra", "discriminant of a polynomial of degree 0");
  MPoly res = resultant_in(p, p.diff(var), var);
  MPoly disc = divide_or_fail(res, leading_coeff_in(p, var));
  return ((d * (d - 1) / 2) % 2 == 0) ? disc : -disc;
}

} // namespace residual

#endif
