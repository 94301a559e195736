#ifndef RESIDUAL_TESTS_TEST_SUPPORT_HPP
#define RESIDUAL_TESTS_TEST_SUPPORT_HPP

// Random instance generators and independent oracles used only by tests.

#include <residual/matrix.hpp>
#include <residual/mpoly.hpp>
#include <residual/ratfunc.hpp>
#include <residual/sampling.hpp>

#include <complex>
#include <ostream>
#include <random>
#include <vector>

namespace residual {

inline void PrintTo(const MPoly& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const RatFunc& f, std::ostream* os) { *os << f.to_string(); }

} // namespace residual

namespace residual::testing {

using sampling::random_coeff;
using sampling::random_nonzero_poly;
using sampling::random_poly;

// Laplace expansion along the first row; independent of Bareiss elimination.
inline RatFunc cofactor_determinant(const FracMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1)
    return m(0, 0);
  RatFunc acc(m.var_list());
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<RatFunc> minor;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != col)
          minor.push_back(m(i, j));
    RatFunc term = m(0, col) * cofactor_determinant(FracMatrix(n - 1, n - 1, std::move(minor)));
    acc = (col % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

inline std::complex<double> to_complex(const Rational& q) { return {q.get_d(), 0.0}; }

} // namespace residual::testing

#endif
