#ifndef RESIDUAL_MATRIX_HPP
#define RESIDUAL_MATRIX_HPP

#include <residual/ratfunc.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace residual {

// Row-major matrix of rational functions sharing one variable list.
class FracMatrix {
public:
  FracMatrix(std::size_t rows, std::size_t cols, VarList vars)
      : rows_(rows), cols_(cols), entries_(rows * cols, RatFunc(std::move(vars))) {
    if (rows == 0 || cols == 0)
      detail::fail("exact-algebra", "matrix dimensions must be positive");
  }

  FracMatrix(std::size_t rows, std::size_t cols, std::vector<RatFunc> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0)
      detail::fail("exact-algebra", "matrix dimensions must be positive");
    if (entries_.size() != rows * cols)
      detail::fail("exact-algebra", "entry count does not match rows*cols");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const VarList& var_list() const { return entries_.front().var_list(); }

  const RatFunc& operator()(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }
  RatFunc& operator()(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }

  std::vector<RatFunc> multiply(const std::vector<RatFunc>& v) const {
    if (v.size() != cols_)
      detail::fail("exact-algebra", "vector length does not match matrix columns");
    std::vector<RatFunc> out(rows_, RatFunc(var_list()));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool operator==(const FracMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RatFunc> entries_;
};

// Fraction-free Gaussian elimination over an integral domain. `exact_div`
// performs divisions known to be exact. Works in place on an n x m grid
// (m >= n); returns the sign of the row permutation, or 0 when a pivot
// column is entirely zero (rank deficient in the leading n columns).
template <typename Ring, typename IsZero, typename ExactDiv>
int bareiss_eliminate(std::vector<Ring>& grid, std::size_t n, std::size_t m, IsZero is_zero, ExactDiv exact_div) {
  auto at = [&](std::size_t i, std::size_t j) -> Ring& { return grid[i * m + j]; };
  int sign = 1;
  std::optional<Ring> prev;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && is_zero(at(pivot, k)))
      ++pivot;
    if (pivot == n)
      return 0;
    if (pivot != k) {
      for (std::size_t j = 0; j < m; ++j)
        std::swap(at(k, j), at(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        Ring v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        at(i, j) = prev ? exact_div(v, *prev) : v;
      }
      at(i, k) = at(i, k) - at(i, k);
    }
    prev = at(k, k);
  }
  return sign;
}

namespace detail {

struct PolySystem {
  std::vector<MPoly> grid;  // n x m, polynomial entries
  MPoly row_scale;          // product of the per-row denominators cleared
};

// Multiplies every row by the lcm of its denominators.
inline PolySystem clear_denominators(const FracMatrix& a, const std::vector<RatFunc>* rhs) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols() + (rhs ? 1 : 0);
  PolySystem sys{std::vector<MPoly>(), MPoly::constant(a.var_list(), 1)};
  sys.grid.reserve(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    MPoly l = MPoly::constant(a.var_list(), 1);
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_polynomial())
        l = lcm(l, a(i, j).den());
    if (rhs && !(*rhs)[i].is_polynomial())
      l = lcm(l, (*rhs)[i].den());
    auto scaled = [&](const RatFunc& f) { return divide_or_fail(l, f.den()) * f.num(); };
    for (std::size_t j = 0; j < a.cols(); ++j)
      sys.grid.push_back(scaled(a(i, j)));
    if (rhs)
      sys.grid.push_back(scaled((*rhs)[i]));
    sys.row_scale *= l;
  }
  return sys;
}

inline auto poly_is_zero = [](const MPoly& p) { return p.is_zero(); };
inline auto poly_exact_div = [](const MPoly& a, const MPoly& b) { return divide_or_fail(a, b); };

} // namespace detail

inline RatFunc determinant(const FracMatrix& m) {
  if (!m.is_square())
    detail::fail("exact-algebra", "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  auto sys = detail::clear_denominators(m, nullptr);
  int sign = bareiss_eliminate(sys.grid, n, n, detail::poly_is_zero, detail::poly_exact_div);
  if (sign == 0)
    return RatFunc(m.var_list());
  MPoly det = sys.grid[n * n - 1];
  if (sign < 0)
    det = -det;
  return RatFunc(std::move(det), std::move(sys.row_scale));
}

// Fraction-free solution: x_i = scaled[i] / det, both polynomial. det is the
// determinant after row denominators were cleared, so it may differ from
// det(m) by that row scale.
struct ScaledSolution {
  std::vector<MPoly> scaled;
  MPoly det;
};

inline std::optional<ScaledSolution> try_solve_scaled(const FracMatrix& m, const std::vector<RatFunc>& rhs) {
  if (!m.is_square())
    detail::fail("exact-algebra", "linear system matrix is not square");
  if (rhs.size() != m.rows())
    detail::fail("exact-algebra", "right-hand side length does not match matrix");
  const std::size_t n = m.rows();
  const std::size_t w = n + 1;
  auto sys = detail::clear_denominators(m, &rhs);
  if (bareiss_eliminate(sys.grid, n, w, detail::poly_is_zero, detail::poly_exact_div) == 0)
    return std::nullopt;
  auto at = [&](std::size_t i, std::size_t j) -> const MPoly& { return sys.grid[i * w + j]; };
  const MPoly det = at(n - 1, n - 1);

  // Fraction-free back substitution: scaled[i] = det * x[i] is a polynomial
  // (Cramer numerator), so each division below is exact.
  std::vector<MPoly> scaled(n, det.zero_like());
  for (std::size_t i = n; i-- > 0;) {
    MPoly acc = det * at(i, n);
    for (std::size_t j = i + 1; j < n; ++j)
      acc -= at(i, j) * scaled[j];
    scaled[i] = divide_or_fail(acc, at(i, i));
  }
  return ScaledSolution{std::move(scaled), det};
}

// Unique solution of m * x = rhs, or nullopt when det(m) vanishes
// identically.
inline std::optional<std::vector<RatFunc>> try_solve_linear(const FracMatrix& m, const std::vector<RatFunc>& rhs) {
  auto sol = try_solve_scaled(m, rhs);
  if (!sol)
    return std::nullopt;
  std::vector<RatFunc> x;
  x.reserve(sol->scaled.size());
  for (auto& s : sol->scaled)
    x.emplace_back(std::move(s), sol->det);
  return x;
}

inline std::vector<RatFunc> solve_linear(const FracMatrix& m, const std::vector<RatFunc>& rhs) {
  auto x = try_solve_linear(m, rhs);
  if (!x)
    detail::fail("exact-algebra", "singular matrix (determinant vanishes identically)");
  return std::move(*x);
}

// Basis of the right nullspace of a dense rational matrix (rows x cols),
// from its reduced row echelon form. One basis vector per free column, with
// that column set to 1.
inline std::vector<std::vector<Rational>> rational_nullspace(std::vector<std::vector<Rational>> rows, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0)
      ++p;
    if (p == rows.size())
      continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r])
      v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0)
        continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        rows[i][j] -= f * rows[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end())
      continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
      v[pivot_cols[i]] = -rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace residual

#endif
