#ifndef RESIDUAL_MPOLY_HPP
#define RESIDUAL_MPOLY_HPP

#include <residual/error.hpp>
#include <residual/rational.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace residual {

using Exponents = std::vector<std::uint32_t>;
using VarList = std::shared_ptr<const std::vector<std::string>>;

inline VarList make_vars(std::vector<std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        detail::fail("exact-algebra", "duplicate variable name '" + names[i] + "'");
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

inline std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

// Graded lexicographic order, earlier variables heavier. Terms are stored
// largest first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    auto da = total_degree(a);
    auto db = total_degree(b);
    if (da != db)
      return da > db;
    return a > b;
  }
};

inline bool same_vars(const VarList& a, const VarList& b) {
  return a == b || *a == *b;
}

// Sparse multivariate polynomial over Q in canonical form: terms sorted by
// GrlexGreater, no zero coefficients, no repeated exponent vectors.
class MPoly {
public:
  struct Term {
    Exponents exps;
    Rational coeff;

    bool operator==(const Term& o) const { return exps == o.exps && coeff == o.coeff; }
  };

  MPoly() : vars_(make_vars({})) {}
  explicit MPoly(VarList vars) : vars_(std::move(vars)) {}
  explicit MPoly(std::vector<std::string> vars) : vars_(make_vars(std::move(vars))) {}

  MPoly(VarList vars, std::vector<Term> terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
    canonicalize();
  }

  static MPoly constant(VarList vars, const Rational& c) {
    MPoly p(std::move(vars));
    if (c != 0)
      p.terms_.push_back({Exponents(p.nvars(), 0), c});
    return p;
  }

  static MPoly monomial(VarList vars, Exponents exps, const Rational& c = 1) {
    if (exps.size() != vars->size())
      detail::fail("exact-algebra", "exponent vector length does not match variable count");
    MPoly p(std::move(vars));
    if (c != 0)
      p.terms_.push_back({std::move(exps), c});
    return p;
  }

  static MPoly variable(VarList vars, std::size_t index, std::uint32_t power = 1) {
    Exponents e(vars->size(), 0);
    e.at(index) = power;
    return monomial(std::move(vars), std::move(e));
  }

  static MPoly variable(VarList vars, std::string_view name, std::uint32_t power = 1) {
    MPoly probe(vars);
    return variable(std::move(vars), probe.index_of(name), power);
  }

  const std::vector<std::string>& vars() const { return *vars_; }
  const VarList& var_list() const { return vars_; }
  std::size_t nvars() const { return vars_->size(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && residual::total_degree(terms_[0].exps) == 0); }
  bool is_one() const { return is_constant() && !is_zero() && terms_[0].coeff == 1; }

  Rational constant_value() const {
    if (!is_constant())
      detail::fail("exact-algebra", "polynomial is not constant");
    return is_zero() ? Rational(0) : terms_[0].coeff;
  }

  const Term& leading_term() const {
    if (is_zero())
      detail::fail("exact-algebra", "leading term of zero polynomial");
    return terms_.front();
  }
  const Rational& leading_coeff() const { return leading_term().coeff; }

  std::optional<std::size_t> find_var(std::string_view name) const {
    auto it = std::find(vars_->begin(), vars_->end(), name);
    if (it == vars_->end())
      return std::nullopt;
    return static_cast<std::size_t>(it - vars_->begin());
  }

  std::size_t index_of(std::string_view name) const {
    if (auto i = find_var(name))
      return *i;
    detail::fail("exact-algebra", "unknown variable '" + std::string(name) + "'");
  }

  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_)
      d = std::max(d, t.exps.at(var));
    return d;
  }

  std::uint32_t total_degree() const { return is_zero() ? 0 : residual::total_degree(terms_.front().exps); }

  bool depends_on(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.exps[var] != 0; });
  }

  MPoly zero_like() const { return MPoly(vars_); }
  MPoly constant_like(const Rational& c) const { return constant(vars_, c); }
  MPoly one_like() const { return constant(vars_, 1); }

  bool operator==(const MPoly& o) const { return same_vars(vars_, o.vars_) && terms_ == o.terms_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_)
      t.coeff = -t.coeff;
    return r;
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) { return a.merge(b, false); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return a.merge(b, true); }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.require_same_vars(b);
    if (a.is_zero() || b.is_zero())
      return a.zero_like();
    if (b.terms_.size() == 1)
      return a.mul_term(b.terms_[0]);
    if (a.terms_.size() == 1)
      return b.mul_term(a.terms_[0]);
    std::map<Exponents, Rational, GrlexGreater> acc;
    Exponents e(a.nvars());
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i)
          e[i] = s.exps[i] + t.exps[i];
        auto [it, inserted] = acc.try_emplace(e, s.coeff * t.coeff);
        if (!inserted)
          it->second += s.coeff * t.coeff;
      }
    }
    MPoly r(a.vars_);
    r.terms_.reserve(acc.size());
    for (auto& [exps, c] : acc)
      if (c != 0)
        r.terms_.push_back({exps, std::move(c)});
    return r;
  }

  friend MPoly operator*(const MPoly& a, const Rational& c) {
    if (c == 0)
      return a.zero_like();
    MPoly r = a;
    for (auto& t : r.terms_)
      t.coeff *= c;
    return r;
  }
  friend MPoly operator*(const Rational& c, const MPoly& a) { return a * c; }

  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly pow(unsigned k) const {
    MPoly result = one_like();
    MPoly base = *this;
    while (k) {
      if (k & 1U)
        result *= base;
      k >>= 1U;
      if (k)
        base *= base;
    }
    return result;
  }

  MPoly mul_term(const Term& t) const {
    MPoly r(vars_);
    if (t.coeff == 0)
      return r;
    r.terms_.reserve(terms_.size());
    for (const auto& s : terms_) {
      Exponents e = s.exps;
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] += t.exps[i];
      r.terms_.push_back({std::move(e), s.coeff * t.coeff});
    }
    return r;
  }

  MPoly diff(std::size_t var) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (t.exps.at(var) == 0)
        continue;
      Term d{t.exps, t.coeff * t.exps[var]};
      --d.exps[var];
      out.push_back(std::move(d));
    }
    return MPoly(vars_, std::move(out));
  }

  MPoly diff(std::string_view name) const { return diff(index_of(name)); }

  // Coefficients of var^0, var^1, ... as polynomials over the same variable
  // list (with var absent).
  std::vector<MPoly> coefficients_in(std::size_t var) const {
    std::vector<MPoly> out(is_zero() ? 0 : degree_in(var) + 1, zero_like());
    for (const auto& t : terms_) {
      Term s = t;
      s.exps[var] = 0;
      out[t.exps[var]].terms_.push_back(std::move(s));
    }
    // Zeroing one exponent keeps grlex order among terms that share the
    // same power of var, so each slot is already sorted.
    return out;
  }

  static MPoly from_coefficients(VarList vars, std::size_t var, std::span<const MPoly> coeffs) {
    std::vector<Term> out;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      for (const auto& t : coeffs[k].terms_) {
        Term s = t;
        s.exps.at(var) += static_cast<std::uint32_t>(k);
        out.push_back(std::move(s));
      }
    return MPoly(std::move(vars), std::move(out));
  }

  // Re-expresses the polynomial over `target`, matching variables by name.
  MPoly embed(const VarList& target) const {
    if (same_vars(vars_, target))
      return MPoly(target, terms_);
    std::vector<std::optional<std::size_t>> map(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
      auto it = std::find(target->begin(), target->end(), (*vars_)[i]);
      if (it != target->end())
        map[i] = static_cast<std::size_t>(it - target->begin());
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Exponents e(target->size(), 0);
      for (std::size_t i = 0; i < nvars(); ++i) {
        if (t.exps[i] == 0)
          continue;
        if (!map[i])
          detail::fail("exact-algebra", "variable '" + (*vars_)[i] + "' missing from target variable list");
        e[*map[i]] = t.exps[i];
      }
      out.push_back({std::move(e), t.coeff});
    }
    return MPoly(target, std::move(out));
  }

  // Substitutes images[i] for variable i; all images share one variable list.
  MPoly substitute(std::span<const MPoly> images, const VarList& target) const {
    if (images.size() != nvars())
      detail::fail("exact-algebra", "substitution needs one image per variable");
    std::vector<std::vector<MPoly>> powers(nvars());
    auto power = [&](std::size_t var, std::uint32_t k) -> const MPoly& {
      auto& cache = powers[var];
      if (cache.empty())
        cache.push_back(MPoly::constant(target, 1));
      while (cache.size() <= k)
        cache.push_back(cache.back() * images[var].embed(target));
      return cache[k];
    };
    MPoly result(target);
    for (const auto& t : terms_) {
      MPoly m = MPoly::constant(target, t.coeff);
      for (std::size_t i = 0; i < nvars(); ++i)
        if (t.exps[i])
          m *= power(i, t.exps[i]);
      result += m;
    }
    return result;
  }

  // Evaluates with a scalar type that accepts conversion from double
  // (double, std::complex<double>) or Rational.
  template <typename Scalar, typename Convert>
  Scalar evaluate(std::span<const Scalar> point, Convert convert) const {
    if (point.size() != nvars())
      detail::fail("exact-algebra", "evaluation point has wrong dimension");
    Scalar sum = convert(Rational(0));
    for (const auto& t : terms_) {
      Scalar m = convert(t.coeff);
      for (std::size_t i = 0; i < nvars(); ++i)
        for (std::uint32_t k = 0; k < t.exps[i]; ++k)
          m *= point[i];
      sum += m;
    }
    return sum;
  }

  Rational evaluate(std::span<const Rational> point) const {
    return evaluate<Rational>(point, [](const Rational& q) { return q; });
  }

  // Removes a variable the polynomial does not depend on.
  MPoly drop_variable(std::size_t var) const {
    std::vector<std::string> names = *vars_;
    names.erase(names.begin() + static_cast<std::ptrdiff_t>(var));
    return drop_variable(var, make_vars(std::move(names)));
  }

  MPoly drop_variable(std::size_t var, const VarList& target) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (t.exps.at(var) != 0)
        detail::fail("exact-algebra", "cannot drop variable '" + (*vars_)[var] + "': polynomial depends on it");
      Exponents e = t.exps;
      e.erase(e.begin() + static_cast<std::ptrdiff_t>(var));
      out.push_back({std::move(e), t.coeff});
    }
    return MPoly(target, std::move(out));
  }

  // Scale factor s such that s * p has coprime integer coefficients and a
  // positive leading coefficient.
  Rational primitive_scale() const {
    if (is_zero())
      return 1;
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    for (const auto& t : terms_) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    Rational s{den_lcm, num_gcd};
    s.canonicalize();
    if (leading_coeff() < 0)
      s = -s;
    return s;
  }

  MPoly primitive() const { return *this * primitive_scale(); }

  MPoly monic() const { return is_zero() ? *this : *this * Rational(1 / leading_coeff()); }

  std::string to_string() const;

  void require_same_vars(const MPoly& o) const {
    if (!same_vars(vars_, o.vars_))
      detail::fail("exact-algebra", "variable-list mismatch");
  }

private:
  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return GrlexGreater{}(a.exps, b.exps); });
  }

  void canonicalize() {
    for (const auto& t : terms_)
      if (t.exps.size() != nvars())
        detail::fail("exact-algebra", "exponent vector length does not match variable count");
    sort_terms();
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().exps == t.exps)
        out.back().coeff += t.coeff;
      else
        out.push_back(std::move(t));
      if (out.back().coeff == 0)
        out.pop_back();
    }
    terms_ = std::move(out);
  }

  MPoly merge(const MPoly& b, bool subtract) const {
    require_same_vars(b);
    MPoly r(vars_);
    r.terms_.reserve(terms_.size() + b.terms_.size());
    auto i = terms_.begin();
    auto j = b.terms_.begin();
    GrlexGreater greater;
    while (i != terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != terms_.end() && greater(i->exps, j->exps))) {
        r.terms_.push_back(*i++);
      } else if (i == terms_.end() || greater(j->exps, i->exps)) {
        r.terms_.push_back({j->exps, subtract ? Rational(-j->coeff) : j->coeff});
        ++j;
      } else {
        Rational c = subtract ? Rational(i->coeff - j->coeff) : Rational(i->coeff + j->coeff);
        if (c != 0)
          r.terms_.push_back({i->exps, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  VarList vars_;
  std::vector<Term> terms_;
};

// Exact quotient a / b when b divides a in Q[vars]; nullopt otherwise.
inline std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
  a.require_same_vars(b);
  if (b.is_zero())
    detail::fail("exact-algebra", "division by zero polynomial");
  if (a.is_zero())
    return a;
  for (std::size_t i = 0; i < a.nvars(); ++i)
    if (a.degree_in(i) < b.degree_in(i))
      return std::nullopt;
  if (b.is_constant())
    return a * Rational(1 / b.constant_value());

  const auto& lead = b.leading_term();
  std::map<Exponents, Rational, GrlexGreater> rem;
  for (const auto& t : a.terms())
    rem.emplace(t.exps, t.coeff);
  std::vector<MPoly::Term> quotient;
  Exponents qe(a.nvars());
  while (!rem.empty()) {
    auto top = rem.begin();
    for (std::size_t i = 0; i < qe.size(); ++i) {
      if (top->first[i] < lead.exps[i])
        return std::nullopt;
      qe[i] = top->first[i] - lead.exps[i];
    }
    if (total_degree(qe) + b.total_degree() > a.total_degree())
      return std::nullopt;
    Rational qc = top->second / lead.coeff;
    for (const auto& t : b.terms()) {
      Exponents e = t.exps;
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] += qe[i];
      auto [it, inserted] = rem.try_emplace(std::move(e), -qc * t.coeff);
      if (!inserted) {
        it->second -= qc * t.coeff;
        if (it->second == 0)
          rem.erase(it);
      }
    }
    quotient.push_back({qe, std::move(qc)});
  }
  return MPoly(a.var_list(), std::move(quotient));
}

inline MPoly divide_or_fail(const MPoly& a, const MPoly& b, const char* module = "exact-algebra") {
  auto q = divide_exact(a, b);
  if (!q)
    detail::fail(module, "inexact polynomial division");
  return std::move(*q);
}

inline std::string MPoly::to_string() const {
  if (is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational mag = abs(t.coeff);
    bool neg = t.coeff < 0;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (t.exps[i] == 0)
        continue;
      if (!mono.empty())
        mono += "*";
      mono += (*vars_)[i];
      if (t.exps[i] > 1)
        mono += "^" + std::to_string(t.exps[i]);
    }
    if (mono.empty())
      out += residual::to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += residual::to_string(mag) + "*" + mono;
  }
  return out;
}

namespace detail {

// Recursive-descent reader for "3/2*x^2*y - (y + 1)^3"-style input. Division
// is allowed by numeric constants only.
class PolyParser {
public:
  PolyParser(std::string_view text, VarList vars) : text_(text), vars_(std::move(vars)) {}

  MPoly parse() {
    MPoly p = expr();
    skip_space();
    if (pos_ != text_.size())
      error("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

private:
  [[noreturn]] void error(const std::string& what) const {
    fail("exact-algebra", "cannot parse polynomial \"" + std::string(text_) + "\" at " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool starts_primary() {
    skip_space();
    if (pos_ >= text_.size())
      return false;
    char c = text_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  MPoly expr() {
    MPoly acc(vars_);
    bool first = true;
    for (;;) {
      bool neg = false;
      if (accept('-'))
        neg = true;
      else if (!accept('+') && !first)
        return acc;
      MPoly t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
    }
  }

  MPoly term() {
    MPoly acc = power();
    for (;;) {
      if (accept('*')) {
        acc *= power();
      } else if (accept('/')) {
        Integer d = integer();
        if (d == 0)
          error("division by zero");
        acc = acc * Rational(Integer(1), d);
      } else if (starts_primary()) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  MPoly power() {
    MPoly base = primary();
    if (accept('^')) {
      Integer e = integer();
      if (!e.fits_uint_p())
        error("exponent out of range");
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_)
      error("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  MPoly primary() {
    skip_space();
    if (accept('(')) {
      MPoly inner = expr();
      if (!accept(')'))
        error("expected ')'");
      return inner;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      return MPoly::constant(vars_, Rational(integer()));
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_)
      error("expected term");
    std::string name(text_.substr(start, pos_ - start));
    auto it = std::find(vars_->begin(), vars_->end(), name);
    if (it == vars_->end())
      error("unknown variable '" + name + "'");
    return MPoly::variable(vars_, static_cast<std::size_t>(it - vars_->begin()));
  }

  std::string_view text_;
  VarList vars_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline MPoly parse_poly(std::string_view text, const VarList& vars) {
  return detail::PolyParser(text, vars).parse();
}

inline MPoly parse_poly(std::string_view text, std::vector<std::string> vars) {
  return parse_poly(text, make_vars(std::move(vars)));
}

} // namespace residual

#endif
