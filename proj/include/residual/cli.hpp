#ifndef RESIDUAL_CLI_HPP
#define RESIDUAL_CLI_HPP

#include <residual/json_io.hpp>
#include <residual/prony.hpp>
#include <residual/radon.hpp>
#include <residual/residue.hpp>
#include <residual/resultant.hpp>
#include <residual/sampling.hpp>
#include <residual/trace.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace residual::cli {

enum class Command { trace, reconstruct, radon, continue_, verify };

inline std::optional<Command> parse_command(const std::string& name) {
  if (name == "trace")
    return Command::trace;
  if (name == "reconstruct")
    return Command::reconstruct;
  if (name == "radon")
    return Command::radon;
  if (name == "continue")
    return Command::continue_;
  if (name == "verify")
    return Command::verify;
  return std::nullopt;
}

struct CommandConfig {
  Command command = Command::trace;
  std::string input;  // empty: read the supplied input stream
  std::string output; // empty: write the supplied output stream
  std::string report; // reconstruct/continue: report file (default: error stream)
  std::optional<std::size_t> count;
  std::optional<std::size_t> dmax;
  std::optional<std::size_t> kmax;
  bool check_closedness = false;
  std::optional<std::size_t> num_deg;
  std::optional<std::size_t> den_deg;
  double tolerance = 1e-8;
  std::uint64_t seed = 20240101;
  std::size_t instances = 20;
  std::size_t points = 20;
  std::string var = "x";
  std::string fiber = "y";
};

class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& what) : std::runtime_error("usage: " + what) {}
};

enum ExitStatus { exit_ok = 0, exit_domain = 1, exit_usage = 2 };

inline void check_config(const CommandConfig& c) {
  if (!(c.tolerance > 0) || !std::isfinite(c.tolerance))
    throw UsageError("--tolerance must be a positive number");
  auto positive = [](const std::optional<std::size_t>& v, const char* flag) {
    if (v && *v == 0)
      throw UsageError(std::string(flag) + " must be at least 1");
  };
  positive(c.count, "--count");
  positive(c.dmax, "--dmax");
  if (c.instances == 0)
    throw UsageError("--instances must be at least 1");
  if (c.points == 0)
    throw UsageError("--points must be at least 1");
  if (c.command == Command::continue_ && (!c.num_deg || !c.den_deg))
    throw UsageError("continue needs --num-deg and --den-deg");
}

namespace detail {

inline std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json::Json complex_json(Complex z) { return json::Json::array({z.real(), z.imag()}); }

// Result of one named check. `detail` is free-form JSON.
struct CheckResult {
  std::string name;
  bool passed = true;
  json::Json detail = json::Json::object();
};

struct VerifyOutcome {
  std::vector<CheckResult> checks;
  std::vector<OracleRecord> oracle;
  double max_relative_error = 0;
};

// det H_d = (-1)^(d(d-1)/2) Res_y(P, r): the Hankel determinant of the weights
// r(y_i)/P'(y_i), rewritten through prod P'(y_i) = (-1)^(d(d-1)/2) disc P.
inline MPoly expected_hankel_determinant(const ResidualCurrent& c) {
  MPoly res = resultant_in(c.P(), c.r(), c.fiber()).drop_variable(c.fiber(), c.base_vars());
  return reversal_sign(c.degree()) > 0 ? res : -res;
}

inline VerifyOutcome verify_current(const ResidualCurrent& c, std::mt19937_64& rng, double tolerance,
                                    std::size_t points) {
  VerifyOutcome out;
  const std::size_t d = c.degree();
  const std::size_t n = c.base_dim();
  auto run = [&](const std::string& name, auto body) {
    CheckResult r{name};
    try {
      body(r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail["error"] = e.what();
    }
    out.checks.push_back(std::move(r));
  };

  TraceSequence t = traces(c, 3 * d + 1);
  run("roundtrip", [&](CheckResult& r) {
    auto rep = reconstruct(TraceSequence(std::vector<RatFunc>(t.entries().begin(), t.entries().begin() + 2 * d + 2)),
                           d + 1, c.fiber_name());
    r.passed = rep.current && *rep.current == c;
  });
  run("recurrence", [&](CheckResult& r) {
    auto v = recurrence_check(t, c.P());
    r.passed = v.empty();
    r.detail["violations"] = v;
  });
  run("determinant", [&](CheckResult& r) {
    RatFunc det = determinant(hankel(t, d));
    RatFunc expected(expected_hankel_determinant(c));
    RatFunc reversed = determinant(reversed_hankel(t, d));
    r.passed = det == expected && reversed == (reversal_sign(d) > 0 ? det : -det);
  });
  run("closedness", [&](CheckResult& r) {
    auto u = radon(c, 2 * d + n);
    auto v = closedness_check(u, n, 2 * d);
    r.passed = v.empty();
    r.detail["violations"] = json::encode(v);
  });
  run("pencil", [&](CheckResult& r) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      auto x0 = sampling::random_point(rng, n);
      Rational y0 = sampling::random_point(rng, 1)[0];
      std::vector<Rational> pt = x0;
      pt.push_back(y0);
      if (c.P().evaluate(pt) == 0)
        continue;
      pencil_projection(c, x0, y0, 2 * d);
      r.detail["apex"] = json::Json::array();
      for (const auto& q : pt)
        r.detail["apex"].push_back(to_string(q));
      return;
    }
    r.passed = false;
    r.detail["error"] = "no apex off the support found";
  });
  run("numeric-oracle", [&](CheckResult& r) {
    std::size_t used = 0;
    std::size_t skipped = 0;
    while (used < points && skipped < 20 * points) {
      auto x = sampling::random_point(rng, n);
      std::vector<Complex> xc;
      for (const auto& q : x)
        xc.push_back(Complex(q.get_d()));
      bool ok = true;
      std::vector<OracleRecord> records;
      for (std::size_t k = 0; k < t.size() && ok; ++k) {
        MPoly num = c.r() * MPoly::variable(c.var_list(), c.fiber(), static_cast<std::uint32_t>(k));
        RationalForm1D form(num, c.P());
        try {
          records.push_back(oracle_compare(form, t[k], xc, default_contour(form, xc)));
        } catch (const Error&) {
          ok = false; // pole too close to the contour at this specialization
        }
      }
      if (!ok) {
        ++skipped;
        continue;
      }
      ++used;
      for (auto& rec : records) {
        double rel = rec.abs_error / std::max(1.0, std::abs(rec.exact));
        out.max_relative_error = std::max(out.max_relative_error, rel);
        if (rel > tolerance)
          r.passed = false;
        out.oracle.push_back(std::move(rec));
      }
    }
    if (used < points)
      r.passed = false;
    r.detail["specializations"] = used;
    r.detail["skipped"] = skipped;
    r.detail["max_relative_error"] = out.max_relative_error;
  });
  return out;
}

inline json::Json oracle_json(const std::vector<OracleRecord>& records) {
  json::Json out = json::Json::array();
  for (const auto& rec : records) {
    json::Json x = json::Json::array();
    for (auto z : rec.x)
      x.push_back(complex_json(z));
    out.push_back({{"x", std::move(x)},
                   {"exact", complex_json(rec.exact)},
                   {"numeric", complex_json(rec.numeric)},
                   {"abs_error", rec.abs_error}});
  }
  return out;
}

inline json::Json checks_json(const std::vector<CheckResult>& checks) {
  json::Json out = json::Json::array();
  for (const auto& c : checks)
    out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

} // namespace detail

class Runner {
public:
  Runner(const CommandConfig& config, std::istream& in, std::ostream& out, std::ostream& err)
      : config_(config), in_(in), out_(out), err_(err) {}

  int run() {
    try {
      check_config(config_);
      json::Json result = dispatch();
      emit(result);
      return status_;
    } catch (const UsageError& e) {
      err_ << "error: " << e.what() << '\n';
      return exit_usage;
    } catch (const SchemaError& e) {
      err_ << "error: " << e.what() << '\n';
      return exit_usage;
    } catch (const json::Json::exception& e) {
      err_ << "error: schema: " << e.what() << '\n';
      return exit_usage;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      return exit_domain;
    }
  }

private:
  json::Json input_document() {
    if (config_.input.empty())
      return json::parse_document(detail::read_all(in_));
    std::ifstream f(config_.input);
    if (!f)
      throw UsageError("cannot open input file '" + config_.input + "'");
    return json::parse_document(detail::read_all(f));
  }

  void emit(const json::Json& doc) {
    std::string text = doc.dump() + "\n";
    if (config_.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(config_.output);
    if (!f)
      throw UsageError("cannot open output file '" + config_.output + "'");
    f << text;
  }

  void emit_report(const json::Json& report) {
    std::string text = report.dump() + "\n";
    if (config_.report.empty()) {
      err_ << text;
      return;
    }
    std::ofstream f(config_.report);
    if (!f)
      throw UsageError("cannot open report file '" + config_.report + "'");
    f << text;
  }

  json::Json dispatch() {
    switch (config_.command) {
    case Command::trace:
      return trace();
    case Command::reconstruct:
      return reconstruct_cmd();
    case Command::radon:
      return radon_cmd();
    case Command::continue_:
      return continue_cmd();
    case Command::verify:
      return verify();
    }
    throw UsageError("unknown command");
  }

  json::Json trace() {
    ResidualCurrent c = json::decode_current(input_document());
    std::size_t count = config_.count.value_or(2 * c.degree() + 2);
    return json::encode(traces(c, count));
  }

  // Current on stdout (or the raw report when no normal form exists), the
  // report on the error stream or --report file.
  json::Json finish_reconstruction(const ReconstructionReport& rep, std::size_t n) {
    emit_report(json::encode(rep));
    if (rep.is_zero())
      return json::encode_zero(n);
    if (!rep.current)
      return json::encode(rep);
    return json::encode(*rep.current);
  }

  json::Json reconstruct_cmd() {
    TraceSequence t = json::decode_trace(input_document());
    std::size_t dmax = config_.dmax.value_or(t.size() / 2);
    if (dmax == 0)
      throw UsageError("trace sequence too short to reconstruct (need at least 2 entries)");
    return finish_reconstruction(reconstruct(t, dmax, config_.fiber), t.base_vars()->size());
  }

  json::Json radon_cmd() {
    ResidualCurrent c = json::decode_current(input_document());
    const std::size_t n = c.base_dim();
    std::size_t kmax = config_.kmax.value_or(2 * c.degree() + n);
    auto u = radon(c, kmax);
    json::Json out{{"u_ab", json::encode(u)}};
    if (config_.check_closedness) {
      if (kmax < n)
        throw UsageError("--check-closedness needs --kmax >= n");
      auto v = closedness_check(u, n, kmax - n);
      out["closedness_violations"] = json::encode(v);
      if (!v.empty())
        status_ = exit_domain;
    }
    return out;
  }

  json::Json continue_cmd() {
    auto series = json::decode_series(input_document());
    std::size_t dmax = config_.dmax.value_or(series.size() / 2);
    if (dmax == 0)
      throw UsageError("need at least 2 trace series");
    auto rep = continue_current(series, dmax, {*config_.num_deg, *config_.den_deg}, config_.var, config_.fiber);
    return finish_reconstruction(rep, 1);
  }

  json::Json verify() {
    std::mt19937_64 rng(config_.seed);
    json::Json out{{"seed", config_.seed}, {"tolerance", config_.tolerance}};
    bool all = true;
    if (!config_.input.empty()) {
      ResidualCurrent c = json::decode_current(input_document());
      auto v = detail::verify_current(c, rng, config_.tolerance, config_.points);
      for (const auto& ch : v.checks) {
        all = all && ch.passed;
        err_ << (ch.passed ? "PASS " : "FAIL ") << ch.name << '\n';
      }
      out["checks"] = detail::checks_json(v.checks);
      out["oracle"] = detail::oracle_json(v.oracle);
    } else {
      // Seeded random family: n = 1 with d <= 4, n = 2 with d <= 2.
      std::map<std::string, std::size_t> passed;
      std::vector<std::string> order;
      double worst = 0;
      json::Json failures = json::Json::array();
      for (std::size_t i = 0; i < config_.instances; ++i) {
        std::size_t n = 1 + i % 2;
        std::size_t d = 1 + (i / 2) % (n == 1 ? 4 : 2);
        auto c = sampling::random_current(rng, n, d, 2);
        auto v = detail::verify_current(c, rng, config_.tolerance, config_.points);
        worst = std::max(worst, v.max_relative_error);
        for (const auto& ch : v.checks) {
          if (!passed.count(ch.name))
            order.push_back(ch.name);
          passed[ch.name] += ch.passed ? 1 : 0;
          if (!ch.passed)
            failures.push_back({{"instance", i}, {"check", ch.name}, {"current", json::encode(c)}, {"detail", ch.detail}});
        }
      }
      json::Json checks = json::Json::array();
      for (const auto& name : order) {
        bool ok = passed[name] == config_.instances;
        all = all && ok;
        checks.push_back({{"name", name}, {"passed", ok}, {"instances_passed", passed[name]}});
        err_ << (ok ? "PASS " : "FAIL ") << name << " (" << passed[name] << "/" << config_.instances << ")\n";
      }
      out["instances"] = config_.instances;
      out["checks"] = std::move(checks);
      out["failures"] = std::move(failures);
      out["max_relative_error"] = worst;
    }
    out["passed"] = all;
    if (!all)
      status_ = exit_domain;
    return out;
  }

  const CommandConfig& config_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  int status_ = exit_ok;
};

inline int run(const CommandConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  return Runner(config, in, out, err).run();
}

inline const char* schema_help() {
  return R"(JSON documents (keys may appear in any order; output keys are sorted):
  poly     {"vars":["x","y"],"terms":[{"coeff":"-3/2","exps":[1,2]}]}
           one exponent per variable; coefficients are rationals written as
           strings ("3", "-3/2") or plain integers
  ratfunc  {"num":<poly>,"den":<poly>}
  current  {"n":1,"P":<poly>,"r":<poly>}
           P and r share the variables x_1..x_n followed by the fiber
           variable; P must be monic in the fiber variable and r nonzero
  zero     {"n":1,"zero":true}            (the zero current)
  trace    {"u":[<ratfunc>,...]}          (u_0, u_1, ...)
  series   {"series":[{"x0":"1","coeffs":["1","0",...]},...]}
           Taylor coefficients of u_0, u_1, ... at the common point x0

Exit status: 0 success, 1 domain error or failed check, 2 usage or schema
error. RESIDUAL_TRACE_THREADS caps internal parallelism (0 = automatic).)";
}

} // namespace residual::cli

#endif
