#include <residual/cli.hpp>

#include <CLI11.hpp>

#include <iostream>

using residual::cli::Command;
using residual::cli::CommandConfig;

namespace {

void add_io(CLI::App* sub, CommandConfig& cfg) {
  sub->add_option("-i,--input", cfg.input, "Input JSON file (default: stdin)");
  sub->add_option("-o,--output", cfg.output, "Output JSON file (default: stdout)");
}

void add_count(CLI::App* sub, std::optional<std::size_t>& target, const char* flag, const char* help) {
  sub->add_option_function<std::size_t>(flag, [&target](const std::size_t& v) { target = v; }, help);
}

} // namespace

int main(int argc, char** argv) {
  CommandConfig cfg;
  CLI::App app{"Traces, inversion and Abel-Radon transforms of residual currents r dx^dy / P."};
  app.footer(residual::cli::schema_help());
  app.require_subcommand(1);

  auto* trace = app.add_subcommand("trace", "current -> {\"u\":[u_0..u_m]}");
  add_io(trace, cfg);
  add_count(trace, cfg.count, "--count", "Number of entries m+1 (default 2d+2)");

  auto* reconstruct = app.add_subcommand("reconstruct", "trace -> current; report to stderr or --report");
  add_io(reconstruct, cfg);
  add_count(reconstruct, cfg.dmax, "--dmax", "Largest degree tried (default: half the sequence length)");
  reconstruct->add_option("--report", cfg.report, "Write the reconstruction report here instead of stderr");
  reconstruct->add_option("--fiber", cfg.fiber, "Name of the fiber variable (default y)");

  auto* radon = app.add_subcommand("radon", "current -> {\"u_ab\":[...]} on the lines x_i = a_i y + b_i");
  add_io(radon, cfg);
  add_count(radon, cfg.kmax, "--kmax", "Largest k (default 2d+n)");
  radon->add_flag("--check-closedness", cfg.check_closedness,
                  "Check d/db_i u_{k+n} = d/da_i u_{k+n-1} for k <= kmax-n (exit 1 on violations)");

  auto* cont = app.add_subcommand("continue", "series of u_k at x0 -> current");
  add_io(cont, cfg);
  add_count(cont, cfg.num_deg, "--num-deg", "Numerator degree bound for each u_k");
  add_count(cont, cfg.den_deg, "--den-deg", "Denominator degree bound for each u_k");
  add_count(cont, cfg.dmax, "--dmax", "Largest degree tried (default: half the number of series)");
  cont->add_option("--report", cfg.report, "Write the reconstruction report here instead of stderr");
  cont->add_option("--var", cfg.var, "Name of the base variable (default x)");
  cont->add_option("--fiber", cfg.fiber, "Name of the fiber variable (default y)");

  auto* verify = app.add_subcommand(
      "verify", "Run roundtrip, recurrence, determinant, closedness, pencil and numeric-oracle checks");
  add_io(verify, cfg);
  verify->add_option("--seed", cfg.seed, "Seed for random instances and specializations");
  verify->add_option("--instances", cfg.instances, "Random currents checked when no --input is given");
  verify->add_option("--points", cfg.points, "Numeric specializations per current");
  verify->add_option("--tolerance", cfg.tolerance, "Relative tolerance of the numeric oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : residual::cli::exit_usage;
  }

  for (auto* sub : app.get_subcommands())
    cfg.command = *residual::cli::parse_command(sub->get_name());
  return residual::cli::run(cfg, std::cin, std::cout, std::cerr);
}
