#ifndef RESIDUAL_JSON_IO_HPP
#define RESIDUAL_JSON_IO_HPP

// JSON encodings. Output is canonical: keys sorted (nlohmann's default object
// is an ordered map), terms in graded-lex order, rationals as strings.
//
//   poly     {"vars":["x","y"],"terms":[{"coeff":"-3/2","exps":[1,2]}, ...]}
//   ratfunc  {"num":<poly>,"den":<poly>}
//   current  {"n":1,"P":<poly>,"r":<poly>}       (last variable is the fiber)
//   zero     {"n":1,"zero":true}
//   trace    {"u":[<ratfunc>, ...]}
//   series   {"series":[{"x0":"1","coeffs":["1","0", ...]}, ...]}

#include <residual/current.hpp>
#include <residual/prony.hpp>
#include <residual/radon.hpp>
#include <residual/trace.hpp>

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace residual::json {

using Json = nlohmann::json;

inline Json encode(const Rational& q) { return to_string(q); }

inline Json encode(const MPoly& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms())
    terms.push_back({{"coeff", to_string(t.coeff)}, {"exps", t.exps}});
  return {{"vars", p.vars()}, {"terms", std::move(terms)}};
}

inline Json encode(const RatFunc& f) { return {{"num", encode(f.num())}, {"den", encode(f.den())}}; }

inline Json encode(const ResidualCurrent& c) {
  return {{"n", c.base_dim()}, {"P", encode(c.P())}, {"r", encode(c.r())}};
}

inline Json encode_zero(std::size_t n) { return {{"n", n}, {"zero", true}}; }

inline Json encode(const std::vector<RatFunc>& fs) {
  Json out = Json::array();
  for (const auto& f : fs)
    out.push_back(encode(f));
  return out;
}

inline Json encode(const TraceSequence& t) { return {{"u", encode(t.entries())}}; }

inline Json encode(const ReconstructionReport& r) {
  Json out{{"degree", r.degree},
           {"meromorphic_coefficients", r.meromorphic_coefficients},
           {"residual_violations", r.residual_violations},
           {"coefficients", encode(r.coefficients)},
           {"numerator", encode(r.numerator)}};
  return out;
}

inline Json encode(const std::vector<ClosednessViolation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs)
    out.push_back({{"i", v.i}, {"k", v.k}});
  return out;
}

namespace detail {

inline const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object())
    throw SchemaError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    throw SchemaError(key, "missing in " + where);
  return *it;
}

inline Rational rational_field(const Json& v, const std::string& field) {
  if (v.is_number_integer())
    return Rational(v.dump());
  if (!v.is_string())
    throw SchemaError(field, "expected a rational as a string such as \"-3/2\"");
  auto q = parse_rational(v.get<std::string>());
  if (!q)
    throw SchemaError(field, "malformed rational \"" + v.get<std::string>() + "\"");
  return *q;
}

} // namespace detail

inline MPoly decode_poly(const Json& j, const std::string& where = "poly") {
  const Json& vars = detail::member(j, "vars", where);
  if (!vars.is_array())
    throw SchemaError("vars", "expected an array of variable names");
  std::vector<std::string> names;
  for (const auto& v : vars) {
    if (!v.is_string() || v.get<std::string>().empty())
      throw SchemaError("vars", "variable names must be non-empty strings");
    names.push_back(v.get<std::string>());
  }
  VarList list;
  try {
    list = make_vars(std::move(names));
  } catch (const Error& e) {
    throw SchemaError("vars", e.what());
  }

  const Json& terms = detail::member(j, "terms", where);
  if (!terms.is_array())
    throw SchemaError("terms", "expected an array of {\"coeff\", \"exps\"} objects");
  std::vector<MPoly::Term> out;
  for (const auto& t : terms) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("exps"))
      throw SchemaError("terms", "each term needs \"coeff\" and \"exps\"");
    const Json& exps = t["exps"];
    if (!exps.is_array() || exps.size() != list->size())
      throw SchemaError("terms", "\"exps\" must list one exponent per variable (" + std::to_string(list->size()) + ")");
    Exponents e;
    for (const auto& x : exps) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::int64_t>() > 0xFFFF)
        throw SchemaError("terms", "exponents must be integers in [0, 65535]");
      e.push_back(x.get<std::uint32_t>());
    }
    out.push_back({std::move(e), detail::rational_field(t["coeff"], "terms")});
  }
  return MPoly(list, std::move(out));
}

inline RatFunc decode_ratfunc(const Json& j, const std::string& where = "ratfunc") {
  MPoly num = decode_poly(detail::member(j, "num", where), "num");
  MPoly den = decode_poly(detail::member(j, "den", where), "den");
  if (!same_vars(num.var_list(), den.var_list()))
    throw SchemaError("den", "numerator and denominator use different variables");
  if (den.is_zero())
    throw SchemaError("den", "zero denominator");
  return RatFunc(std::move(num), std::move(den));
}

// The pair as written; validate() is applied by the caller so that domain
// errors (exit status 1) stay distinct from schema errors (exit status 2).
struct CurrentDocument {
  std::size_t n = 0;
  MPoly P;
  MPoly r;
};

inline CurrentDocument decode_current_document(const Json& j) {
  const Json& n = detail::member(j, "n", "current");
  if (!n.is_number_integer() || n.get<std::int64_t>() <= 0)
    throw SchemaError("n", "expected a positive integer");
  CurrentDocument doc{n.get<std::size_t>(), decode_poly(detail::member(j, "P", "current"), "P"),
                      decode_poly(detail::member(j, "r", "current"), "r")};
  if (doc.P.nvars() != doc.n + 1)
    throw SchemaError("P", "expected n + 1 = " + std::to_string(doc.n + 1) + " variables (base then fiber), got " +
                               std::to_string(doc.P.nvars()));
  if (!same_vars(doc.P.var_list(), doc.r.var_list()))
    throw SchemaError("r", "must use the same variables as P");
  return doc;
}

inline ResidualCurrent decode_current(const Json& j) {
  auto doc = decode_current_document(j);
  return make_current(doc.P, doc.r);
}

inline TraceSequence decode_trace(const Json& j) {
  const Json& u = detail::member(j, "u", "trace");
  if (!u.is_array() || u.empty())
    throw SchemaError("u", "expected a non-empty array of rational functions");
  std::vector<RatFunc> entries;
  for (const auto& e : u)
    entries.push_back(decode_ratfunc(e, "u"));
  for (const auto& e : entries)
    if (!same_vars(e.var_list(), entries.front().var_list()))
      throw SchemaError("u", "all entries must use the same variables");
  return TraceSequence(std::move(entries));
}

inline std::vector<SeriesSample> decode_series(const Json& j) {
  const Json& s = detail::member(j, "series", "series document");
  if (!s.is_array() || s.empty())
    throw SchemaError("series", "expected a non-empty array of {\"x0\", \"coeffs\"} objects");
  std::vector<SeriesSample> out;
  for (const auto& item : s) {
    SeriesSample sample{detail::rational_field(detail::member(item, "x0", "series"), "x0"), {}};
    const Json& coeffs = detail::member(item, "coeffs", "series");
    if (!coeffs.is_array() || coeffs.empty())
      throw SchemaError("coeffs", "expected a non-empty array of rationals");
    for (const auto& c : coeffs)
      sample.coefficients.push_back(detail::rational_field(c, "coeffs"));
    out.push_back(std::move(sample));
  }
  return out;
}

inline Json encode(const SeriesSample& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coefficients)
    coeffs.push_back(to_string(c));
  return {{"x0", to_string(s.base_point)}, {"coeffs", std::move(coeffs)}};
}

inline Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("document", std::string("invalid JSON: ") + e.what());
  }
}

} // namespace residual::json

#endif
