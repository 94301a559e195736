#ifndef RESIDUAL_RATIONAL_HPP
#define RESIDUAL_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace residual {

// Exact rationals. mpq_class keeps numerator and denominator coprime with a
// positive denominator after canonicalize(), which every helper here does.
using Rational = mpq_class;
using Integer = mpz_class;

namespace detail {

inline bool is_digits(std::string_view s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (c < '0' || c > '9')
      return false;
  return true;
}

} // namespace detail

// Parses "-3/2", "7", "0". Returns nullopt on anything else (including a zero
// denominator). Non-reduced input such as "6/4" is accepted and reduced.
inline std::optional<Rational> parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-')
    body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!detail::is_digits(num))
    return std::nullopt;
  if (slash != std::string_view::npos && !detail::is_digits(den))
    return std::nullopt;
  Rational q;
  q.get_num() = Integer(std::string(num), 10);
  q.get_den() = den.empty() ? Integer(1) : Integer(std::string(den), 10);
  if (q.get_den() == 0)
    return std::nullopt;
  if (text.front() == '-')
    q.get_num() = -q.get_num();
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline Rational rational(long num, long den = 1) {
  Rational q{Integer(num), Integer(den)};
  q.canonicalize();
  return q;
}

inline Rational pow_rational(const Rational& q, unsigned k) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), k);
  out.canonicalize();
  return out;
}

inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace residual

#endif
