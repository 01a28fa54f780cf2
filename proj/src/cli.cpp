#include "phi4/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "phi4/banach.hpp"
#include "phi4/dynamics.hpp"
#include "phi4/errors.hpp"
#include "phi4/serialize.hpp"
#include "phi4/solver.hpp"
#include "phi4/verify.hpp"

namespace phi4 {

namespace {

struct RunConfig {
  double lambda = 0.01;
  std::vector<double> lambdas;
  int n = 41;
  double tol = 1e-12;
  double residual_tol = 1e-10;
  int max_iter = 3000;
  bool allow_excursions = false;
  std::string closure = "envelope_min";
  std::string start = "fundamental";
  std::uint64_t seed = 20240101;
  std::string format;
  std::string output;
  std::string exec = "parallel";
  bool emit_constants = false;
  int trials = 100;
  int n_lo = 7;
  int n_hi = 4001;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

SolveOptions solve_options(const RunConfig& c) {
  require(c.n >= 11 && c.n % 2 == 1, "n must be odd and at least 11");
  require(c.tol > 0.0, "tol must be positive");
  require(c.residual_tol > 0.0, "residual-tol must be positive");
  require(c.max_iter > 0, "max-iter must be positive");
  SolveOptions o;
  o.truncation = c.n;
  o.tol = c.tol;
  o.residual_tol = c.residual_tol;
  o.max_iter = c.max_iter;
  o.check_membership = !c.allow_excursions;
  try {
    o.closure = parse_closure(c.closure);
  } catch (const DomainError& e) {
    throw UsageError(std::string("closure: ") + e.what());
  }
  try {
    o.start = parse_start(c.start);
  } catch (const DomainError& e) {
    throw UsageError(std::string("start: ") + e.what());
  }
  return o;
}

Coupling coupling(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive");
  return Coupling(lambda);
}

Exec exec_mode(const RunConfig& c) {
  try {
    return parse_exec(c.exec);
  } catch (const DomainError& e) {
    throw UsageError(std::string("exec: ") + e.what());
  }
}

std::string format_or(const RunConfig& c, const std::string& fallback,
                      std::initializer_list<const char*> allowed) {
  const std::string f = c.format.empty() ? fallback : c.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw UsageError("format '" + f + "' not supported by this command");
}

// Writes to the output path via a temporary file and rename, or to out.
void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path target(c.output);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("output: cannot open " + c.output);
    f << text;
    if (!f) throw UsageError("output: write failed for " + c.output);
  }
  std::filesystem::rename(tmp, target);
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int cmd_solve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto f = format_or(c, "json", {"json", "csv", "table"});
  const Coupling l = coupling(c.lambda);
  const SolveOptions o = solve_options(c);
  if (!l.certified())
    err << fmt::format("warning: lambda {} is outside (0, {}]\n", c.lambda,
                       kCertifiedLambdaMax);
  const SolveResult r = solve(l, o);
  if (f == "json") {
    emit(c, out, dump(solve_to_json(r)));
  } else if (f == "csv") {
    emit(c, out, sequence_to_csv(r.fixed_point, extract_delta(r.fixed_point)));
  } else {
    const auto d = extract_delta(r.fixed_point);
    std::string t = fmt::format(
        "lambda {}  N {}  closure {}  start {}\n"
        "converged {}  iterations {}  final distance {:.3e}  residual {:.3e}\n",
        c.lambda, o.truncation, to_string(r.report.closure),
        to_string(r.report.start), r.report.converged, r.report.iterations,
        r.report.final_distance, r.report.residual_max);
    if (r.report.excursions > 0)
      t += fmt::format("excursions {}\n", r.report.excursions);
    t += fmt::format("{:>5} {:>24} {:>24}\n", "n", "H^{n+1}", "delta_n");
    for (int n = 1; n <= o.truncation; n += 2)
      t += fmt::format("{:>5} {:>24.16e} {:>24.16e}\n", n,
                       r.fixed_point[n].to_double(), d[n]);
    emit(c, out, t);
  }
  if (!r.report.converged) {
    err << "not converged: " << r.report.message << "\n";
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto f = format_or(c, "table", {"json", "table"});
  const Coupling l = coupling(c.lambda);
  SuiteOptions so;
  so.solve = solve_options(c);
  so.seed = c.seed;
  require(c.trials > 0, "trials must be positive");
  so.contraction_trials = c.trials;
  so.exec = exec_mode(c);
  const auto checks = run_verification(l, so);
  int pass = 0, fail = 0, skipped = 0;
  for (const auto& x : checks) {
    if (x.status == "pass") ++pass;
    if (x.status == "fail") ++fail;
    if (x.status == "skipped") ++skipped;
  }
  const ContractionConstants cc = contraction_constants(l);
  if (f == "json") {
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["lambda"] = c.lambda;
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    j["checks"] = checks_to_json(checks);
    j["summary"] = {{"pass", pass}, {"fail", fail}, {"skipped", skipped}};
    if (c.emit_constants) j["constants"] = constants_to_json(cc);
    emit(c, out, dump(j));
  } else {
    std::string t;
    for (const auto& x : checks) {
      const std::string th =
          x.threshold > 0.0 ? fmt::format("lambda <= {}", x.threshold) : "any lambda";
      std::string st = x.status;
      for (char& ch : st) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      t += fmt::format("{:<8} {:<26} [{}] {}\n", st, x.name, th, x.detail);
    }
    t += fmt::format("summary: {} pass, {} fail, {} skipped\n", pass, fail, skipped);
    if (c.emit_constants) {
      t += fmt::format("constants at lambda {}\n", cc.lambda);
      t += fmt::format("  M1 {:.6f}  H0^2 {:.6f}\n", cc.m1, cc.h0_sq);
      t += fmt::format("  k1 {:.6f}  k1(0) {:.6f}\n", cc.k1, cc.k1_0);
      t += fmt::format("  k3 {:.6f}  k3(0) {:.6f}\n", cc.k3, cc.k3_0);
      t += fmt::format("  k5 {:.6f}  k5(0) {:.6f}  sum {:.6f}\n", cc.k5, cc.k5_0,
                       cc.k5 + cc.k5_0);
      t += fmt::format("  k_{} {:.6f}  k_{}(0) {:.6f}\n", cc.n_max, cc.kn.back(),
                       cc.n_max, cc.kn_0.back());
      t += fmt::format("  limit 1/11 + k1/6: k {:.6f}  k(0) {:.6f}\n",
                       cc.k_limit_stated, cc.k0_limit_stated);
      t += fmt::format("  limit of recursion: k {:.6f}  k(0) {:.6f}\n",
                       cc.k_limit_recursion, cc.k0_limit_recursion);
      t += fmt::format("  sup over lambda in (0, {}]: k {:.3f}  k(0) {:.3f}  sum {:.4f}\n",
                       cc.grid_max, cc.k_sup, cc.k0_sup, cc.k_sup + cc.k0_sup);
    }
    emit(c, out, t);
  }
  return fail == 0 ? kExitOk : kExitFailed;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto f = format_or(c, "csv", {"json", "csv"});
  require(!c.lambdas.empty(), "lambdas must be a nonempty list");
  for (double x : c.lambdas) coupling(x);
  const SolveOptions o = solve_options(c);
  const auto rows = sweep(c.lambdas, o, exec_mode(c));
  if (f == "csv") {
    emit(c, out, sweep_to_csv(rows));
  } else {
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json e = report_to_json(r.report);
      e["status"] = r.status;
      e["H2"] = r.h2;
      e["H4"] = r.h4;
      e["delta3"] = r.delta3;
      e["delta5"] = r.delta5;
      e["delta7"] = r.delta7;
      if (!r.error.empty()) e["error"] = r.error;
      arr.push_back(std::move(e));
    }
    j["rows"] = std::move(arr);
    emit(c, out, dump(j));
  }
  for (const auto& r : rows)
    if (r.status == "error" || r.status == "not_converged") return kExitFailed;
  return kExitOk;
}

int cmd_envelopes(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto f = format_or(c, "json", {"json", "csv"});
  const Coupling l = coupling(c.lambda);
  require(c.n >= 3 && c.n % 2 == 1, "n must be odd and at least 3");
  const EnvelopeSet env = build_envelopes(l, c.n);
  emit(c, out, f == "json" ? dump(envelopes_to_json(env)) : envelopes_to_csv(env));
  return kExitOk;
}

int cmd_constants(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto f = format_or(c, "json", {"json"});
  (void)f;
  const Coupling l = coupling(c.lambda);
  emit(c, out, dump(constants_to_json(contraction_constants(l))));
  return kExitOk;
}

int cmd_export(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto f = format_or(c, "csv", {"csv"});
  (void)f;
  const Coupling l = coupling(c.lambda);
  require(c.n_lo >= 7 && c.n_lo % 2 == 1, "n-lo must be odd and at least 7");
  require(c.n_hi > c.n_lo && c.n_hi % 2 == 1, "n-hi must be odd and above n-lo");
  emit(c, out, figures_to_csv(appendix_inequality_functions(l, c.n_lo, c.n_hi)));
  return kExitOk;
}

void add_solve_flags(CLI::App* s, RunConfig& c) {
  s->add_option("--n", c.n, "Odd truncation N");
  s->add_option("--tol", c.tol, "Distance tolerance");
  s->add_option("--residual-tol", c.residual_tol, "Residual tolerance");
  s->add_option("--max-iter", c.max_iter, "Iteration limit");
  s->add_option("--closure", c.closure,
                "strict, zero_tail, envelope_min, envelope_max or bracket");
  s->add_option("--start", c.start, "fundamental, delta_max or delta_min");
  s->add_flag("--allow-excursions", c.allow_excursions,
              "Count iterates leaving the admissible set instead of failing");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  RunConfig c;
  CLI::App app{"Fixed point of the zero-dimensional phi^4 equations of motion"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", c.seed, "Random seed (PHI4_SEED overrides)");
  app.add_option("--format", c.format, "json, csv or table");
  app.add_option("--output", c.output, "Output file (default stdout)");

  auto* solve_cmd = app.add_subcommand("solve", "Iterate M* to the fixed point");
  solve_cmd->add_option("--lambda", c.lambda, "Coupling")->required();
  add_solve_flags(solve_cmd, c);

  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite");
  verify_cmd->add_option("--lambda", c.lambda, "Coupling")->required();
  verify_cmd->add_flag("--emit-constants", c.emit_constants,
                       "Print the contraction constants");
  verify_cmd->add_option("--trials", c.trials, "Contraction trials");
  verify_cmd->add_option("--exec", c.exec, "serial or parallel");
  add_solve_flags(verify_cmd, c);

  auto* sweep_cmd = app.add_subcommand("sweep", "Solve over a grid of couplings");
  sweep_cmd->add_option("--lambdas", c.lambdas, "Comma separated couplings")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--exec", c.exec, "serial or parallel");
  add_solve_flags(sweep_cmd, c);

  auto* env_cmd = app.add_subcommand("envelopes", "Envelope and fundamental sequences");
  env_cmd->add_option("--lambda", c.lambda, "Coupling")->required();
  env_cmd->add_option("--n", c.n, "Odd truncation N");

  auto* const_cmd = app.add_subcommand("constants", "Contraction constants");
  const_cmd->add_option("--lambda", c.lambda, "Coupling")->required();

  auto* export_cmd = app.add_subcommand("export", "Tables of f_L and f_B");
  export_cmd->add_option("--lambda", c.lambda, "Coupling")->default_val(0.05);
  export_cmd->add_option("--n-lo", c.n_lo, "First odd n");
  export_cmd->add_option("--n-hi", c.n_hi, "Last odd n");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (const char* s = std::getenv("PHI4_SEED")) {
    try {
      c.seed = std::stoull(s);
    } catch (const std::exception&) {
      err << "PHI4_SEED must be an unsigned integer\n";
      return kExitUsage;
    }
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(c, out, err);
    if (verify_cmd->parsed()) return cmd_verify(c, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(c, out, err);
    if (env_cmd->parsed()) return cmd_envelopes(c, out, err);
    if (const_cmd->parsed()) return cmd_constants(c, out, err);
    if (export_cmd->parsed()) return cmd_export(c, out, err);
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const StabilityError& e) {
    err << "stability failure: " << e.what() << "\n";
    return kExitFailed;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitFailed;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "output: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace phi4
