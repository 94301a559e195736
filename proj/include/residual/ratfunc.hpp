#ifndef RESIDUAL_RATFUNC_HPP
#define RESIDUAL_RATFUNC_HPP

#include <residual/mpoly.hpp>
#include <residual/poly_gcd.hpp>

#include <string>
#include <utility>
#include <vector>

namespace residual {

// Element of Q(vars), kept as num/den with gcd(num, den) = 1 and den
// integer-primitive with a positive grlex-leading coefficient. Under that
// normal form, equal functions are structurally equal.
class RatFunc {
public:
  RatFunc() : num_(), den_(num_.one_like()) {}
  explicit RatFunc(VarList vars) : num_(std::move(vars)), den_(num_.one_like()) {}
  RatFunc(MPoly num) : num_(std::move(num)), den_(num_.one_like()) {} // NOLINT: polynomials embed implicitly

  RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    num_.require_same_vars(den_);
    normalize();
  }

  static RatFunc constant(VarList vars, const Rational& c) { return RatFunc(MPoly::constant(std::move(vars), c)); }

  // num / base^power, using that every common factor divides base. Much
  // cheaper than a full gcd when base is small and the power large.
  static RatFunc over_power(MPoly num, const MPoly& base, unsigned power) {
    MPoly den = base.pow(power);
    if (num.is_zero() || base.is_constant())
      return RatFunc(std::move(num), std::move(den));
    for (;;) {
      MPoly h = gcd(num, gcd(den, base));
      if (h.is_constant())
        break;
      num = divide_or_fail(num, h);
      den = divide_or_fail(den, h);
    }
    return from_coprime(std::move(num), std::move(den));
  }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  const std::vector<std::string>& vars() const { return num_.vars(); }
  const VarList& var_list() const { return num_.var_list(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc operator-() const { return from_normalized(-num_, den_); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_)
      return a.den_.is_one() ? RatFunc(a.num_ + b.num_) : RatFunc(a.num_ + b.num_, a.den_);
    if (a.is_polynomial())
      return from_normalized(a.num_ * b.den_ + b.num_, b.den_);
    if (b.is_polynomial())
      return from_normalized(a.num_ + b.num_ * a.den_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero())
      return RatFunc(a.num_.zero_like());
    if (a.is_polynomial() && b.is_polynomial())
      return RatFunc(a.num_ * b.num_);
    // Cross-cancel before multiplying to keep operands small.
    MPoly g1 = gcd(a.num_, b.den_);
    MPoly g2 = gcd(b.num_, a.den_);
    MPoly num = divide_or_fail(a.num_, g1) * divide_or_fail(b.num_, g2);
    MPoly den = divide_or_fail(a.den_, g2) * divide_or_fail(b.den_, g1);
    return from_coprime(std::move(num), std::move(den));
  }

  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc inverse() const {
    if (is_zero())
      detail::fail("exact-algebra", "inverse of zero rational function");
    return from_coprime(den_, num_);
  }

  RatFunc pow(unsigned k) const { return from_normalized(num_.pow(k), den_.pow(k)); }

  // Quotient rule, reduced.
  RatFunc diff(std::size_t var) const {
    if (is_polynomial())
      return RatFunc(num_.diff(var));
    return RatFunc(num_.diff(var) * den_ - num_ * den_.diff(var), den_ * den_);
  }

  RatFunc diff(std::string_view name) const { return diff(num_.index_of(name)); }

  RatFunc embed(const VarList& target) const { return from_normalized(num_.embed(target), den_.embed(target)); }

  RatFunc substitute(std::span<const MPoly> images, const VarList& target) const {
    MPoly d = den_.substitute(images, target);
    if (d.is_zero())
      detail::fail("exact-algebra", "substitution makes the denominator vanish");
    return RatFunc(num_.substitute(images, target), std::move(d));
  }

  Rational evaluate(std::span<const Rational> point) const {
    Rational d = den_.evaluate(point);
    if (d == 0)
      detail::fail("exact-algebra", "evaluation at a pole");
    return num_.evaluate(point) / d;
  }

  std::string to_string() const {
    if (is_polynomial())
      return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

private:
  struct Normalized {};
  RatFunc(MPoly num, MPoly den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}

  // num and den already coprime, den already canonical.
  static RatFunc from_normalized(MPoly num, MPoly den) { return RatFunc(std::move(num), std::move(den), Normalized{}); }

  // num and den coprime; only the unit normalization of den remains.
  static RatFunc from_coprime(MPoly num, MPoly den) {
    RatFunc f(std::move(num), std::move(den), Normalized{});
    f.normalize_unit();
    return f;
  }

  void normalize() {
    if (den_.is_zero())
      detail::fail("exact-algebra", "rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = num_.one_like();
      return;
    }
    if (!den_.is_constant()) {
      if (auto q = divide_exact(num_, den_)) {
        num_ = std::move(*q);
        den_ = num_.one_like();
        return;
      }
      MPoly g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = divide_or_fail(num_, g);
        den_ = divide_or_fail(den_, g);
      }
    }
    normalize_unit();
  }

  void normalize_unit() {
    if (den_.is_zero())
      detail::fail("exact-algebra", "rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = num_.one_like();
      return;
    }
    Rational s = den_.is_constant() ? Rational(1 / den_.constant_value()) : den_.primitive_scale();
    if (s != 1) {
      num_ = num_ * s;
      den_ = den_ * s;
    }
  }

  MPoly num_;
  MPoly den_;
};

// Sum of fractions kept over a product denominator. Only good for zero
// tests: nothing is ever reduced, so no gcd is computed.
class UnreducedSum {
public:
  explicit UnreducedSum(const VarList& vars) : num_(vars), den_(MPoly::constant(vars, 1)) {}

  void add(const MPoly& num, const MPoly& den) {
    if (num.is_zero())
      return;
    if (den == den_) {
      num_ += num;
    } else if (num_.is_zero()) {
      num_ = num;
      den_ = den;
    } else if (auto q = divide_exact(den, den_)) {
      num_ = num_ * *q + num;
      den_ = den;
    } else if (auto q = divide_exact(den_, den)) {
      num_ += num * *q;
    } else {
      num_ = num_ * den + num * den_;
      den_ *= den;
    }
  }

  void add(const RatFunc& f) { add(f.num(), f.den()); }

  // d f / d var, unreduced: (f_v F - f F_v) / F^2.
  void add_partial(const RatFunc& f, std::size_t var, bool negate = false) {
    if (f.den().degree_in(var) == 0) {
      MPoly n = f.num().diff(var);
      add(negate ? -n : n, f.den());
      return;
    }
    MPoly n = f.num().diff(var) * f.den() - f.num() * f.den().diff(var);
    add(negate ? -n : n, f.den() * f.den());
  }

  bool is_zero() const { return num_.is_zero(); }

private:
  MPoly num_;
  MPoly den_;
};

} // namespace residual

#endif
