#include "gaplab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "gaplab/error.hpp"
#include "gaplab/gap_core.hpp"
#include "gaplab/parse.hpp"
#include "gaplab/serialize.hpp"
#include "gaplab/sweep.hpp"
#include "gaplab/theorem_suite.hpp"

namespace gaplab::cli {
namespace {

struct RunConfig {
  std::string mode = "approx";
  unsigned bits = kDefaultPrecisionBits;
  std::string tolerance{kDefaultTolerance};
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string output_path;

  Mode number_mode() const { return mode == "exact" ? Mode::exact : Mode::approx; }

  ToleranceContext context() const {
    if (number_mode() == Mode::exact) return ToleranceContext::exact();
    return ToleranceContext::approx(bits, tolerance);
  }
};

// Usage problems that surface after CLI11 has accepted the arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned default_bits() {
  if (const char* env = std::getenv("GAPLAB_DEFAULT_BITS")) {
    try {
      const unsigned long bits = std::stoul(env);
      if (bits >= kMinPrecisionBits) return static_cast<unsigned>(bits);
    } catch (const std::exception&) {
    }
  }
  return kDefaultPrecisionBits;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool with_format = true) {
  sub->add_option("--mode", cfg.mode, "Arithmetic: exact or approx")
      ->check(CLI::IsMember({"exact", "approx"}))
      ->capture_default_str();
  sub->add_option("--bits", cfg.bits, "Mantissa bits for approx arithmetic")
      ->check(CLI::Range(kMinPrecisionBits, 1u << 20))
      ->capture_default_str();
  sub->add_option("--tol", cfg.tolerance, "Equality tolerance for approx arithmetic")
      ->capture_default_str();
  if (with_format) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  }
  sub->add_option("--out", cfg.output_path, "Write output to this file instead of stdout");
}

Scalar scalar_arg(const std::optional<std::string>& text, const char* flag, const RunConfig& cfg) {
  if (!text) throw UsageError(std::string(flag) + " is required");
  return parse_scalar(*text, cfg.number_mode(), cfg.bits);
}

std::size_t count_arg(const std::optional<std::size_t>& value, const char* flag) {
  if (!value) throw UsageError(std::string(flag) + " is required");
  return *value;
}

PeriodicFunction resolve_function(const std::string& spec, const RunConfig& cfg) {
  if (spec.empty()) throw UsageError("--fn is required");
  PeriodicFunction fn = [&]() -> PeriodicFunction {
    if (spec.front() == '@') {
      std::ifstream in(spec.substr(1));
      if (!in) throw Error(ErrorKind::parse_error, "cannot open " + spec.substr(1));
      Json doc;
      try {
        in >> doc;
      } catch (const Json::exception& e) {
        throw Error(ErrorKind::parse_error, spec.substr(1) + ": " + e.what());
      }
      return pl_from_json(doc);
    }
    try {
      return builtin(spec, cfg.bits);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::invalid_argument) throw Error(ErrorKind::parse_error, e.what());
      throw;
    }
  }();
  if (cfg.number_mode() == Mode::exact && std::holds_alternative<AnalyticPeriodic>(fn)) {
    throw Error(ErrorKind::invalid_argument, spec + " cannot be evaluated in exact mode");
  }
  return fn;
}

const PiecewiseLinear& require_pl(const PeriodicFunction& fn, const std::string& spec) {
  if (const auto* pl = std::get_if<PiecewiseLinear>(&fn)) return *pl;
  throw Error(ErrorKind::invalid_argument, spec + " is not piecewise-linear");
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw Error(ErrorKind::invalid_argument, "cannot write " + cfg.output_path);
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string verification_csv(const VerificationReport& r) {
  std::ostringstream s;
  s << "statement,observed,lower,upper,pass\n"
    << r.statement << ',' << r.observed << ','
    << (r.lower_bound ? std::to_string(*r.lower_bound) : "") << ','
    << (r.upper_bound ? std::to_string(*r.upper_bound) : "") << ','
    << (r.pass ? "true" : "false") << '\n';
  return s.str();
}

std::string sweep_output(const SweepResult& result, const SweepOptions& o, const RunConfig& cfg) {
  if (cfg.format == "csv") {
    std::ostringstream s;
    s << "draw,observed,lower,upper,pass,parameters\n";
    for (const SweepRow& row : result.rows) {
      const auto& r = row.report;
      s << row.draw << ',' << r.observed << ','
        << (r.lower_bound ? std::to_string(*r.lower_bound) : "") << ','
        << (r.upper_bound ? std::to_string(*r.upper_bound) : "") << ','
        << (r.pass ? "true" : "false") << ',';
      for (std::size_t i = 0; i < r.parameters.size(); ++i) {
        s << (i ? ";" : "") << r.parameters[i].name << '=' << r.parameters[i].value.to_string();
      }
      s << '\n';
    }
    s << "summary," << result.max_observed << ",,," << result.pass_rate()
      << ",failures=" << result.failures << '\n';
    return s.str();
  }
  Json rows = Json::array();
  for (const SweepRow& row : result.rows) {
    Json params = Json::object();
    for (const Parameter& p : row.report.parameters) params[p.name] = to_json(p.value);
    Json entry{{"draw", row.draw},
               {"observed", row.report.observed},
               {"pass", row.report.pass},
               {"parameters", std::move(params)}};
    // Full witness only where a bound broke.
    if (!row.report.pass) entry["report"] = to_json(row.report);
    rows.push_back(std::move(entry));
  }
  return dump(Json{{"statement", result.statement},
                   {"seed", o.seed},
                   {"draws", o.draws},
                   {"rows", std::move(rows)},
                   {"summary",
                    {{"max_observed", result.max_observed},
                     {"pass_rate", result.pass_rate()},
                     {"failures", result.failures}}}});
}

int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::parse_error ? kExitUsage : kExitPrecondition;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gap-length sets of periodic functions along arithmetic progressions", "gaplab"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.bits = default_bits();

  std::string fn_spec;
  std::optional<std::string> alpha_text, beta_text, x_text, slope_text, intercept_text, kappa_text;
  std::optional<std::size_t> big_n, small_n;

  auto* gaps = app.add_subcommand("gaps", "Gap report for f(d*alpha + beta), d = 1..N");
  gaps->add_option("--fn", fn_spec, "Builtin name or @file.json")->required();
  gaps->add_option("--alpha", alpha_text)->required();
  gaps->add_option("--beta", beta_text);
  gaps->add_option("--N", big_n)->required()->check(CLI::PositiveNumber);
  add_common(gaps, cfg);

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a function at a point");
  eval_cmd->add_option("--fn", fn_spec)->required();
  eval_cmd->add_option("--x", x_text)->required();
  add_common(eval_cmd, cfg, false);

  std::vector<std::string> verify_ids = {
      statement::three_gap,       statement::affine,        statement::general,
      statement::tightened,       statement::two_piece_shift, statement::triangle,
      statement::five_distance,   statement::main_construction, statement::c2_construction};
  std::string statement_id;
  auto* verify = app.add_subcommand("verify", "Check one stated bound on one instance");
  verify->add_option("statement", statement_id, "Statement id")
      ->required()
      ->check(CLI::IsMember(verify_ids));
  verify->add_option("--fn", fn_spec);
  verify->add_option("--alpha", alpha_text);
  verify->add_option("--beta", beta_text);
  verify->add_option("--N", big_n)->check(CLI::PositiveNumber);
  verify->add_option("--n", small_n)->check(CLI::PositiveNumber);
  verify->add_option("--m", slope_text, "Slope for the affine statement");
  verify->add_option("--c", intercept_text, "Intercept for the affine statement");
  verify->add_option("--kappa", kappa_text, "Breakpoint for two_piece_shift");
  add_common(verify, cfg);

  SweepOptions sweep_opts;
  std::size_t threads = 1;
  auto* sweep = app.add_subcommand("sweep", "Run a verifier over seeded random draws");
  sweep->add_option("statement", sweep_opts.statement)
      ->required()
      ->check(CLI::IsMember(sweepable_statements()));
  sweep->add_option("--draws", sweep_opts.draws)->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--max-pieces", sweep_opts.max_pieces)
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  sweep->add_option("--max-N", sweep_opts.max_count)
      ->check(CLI::Range(2, 10'000'000))
      ->capture_default_str();
  sweep->add_option("--seed", cfg.seed)->capture_default_str();
  sweep->add_option("--threads", threads)->check(CLI::Range(1, 256))->capture_default_str();
  add_common(sweep, cfg);

  std::string construct_kind;
  auto* construct = app.add_subcommand("construct", "Build an instance with many gap lengths");
  construct->add_option("kind", construct_kind)->required()->check(CLI::IsMember({"main", "c2"}));
  construct->add_option("--n", small_n)->required()->check(CLI::PositiveNumber);
  construct->add_option("--fn", fn_spec, "Analytic builtin for c2 (default cosine)");
  add_common(construct, cfg, false);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*gaps) {
      const ToleranceContext ctx = cfg.context();
      const PeriodicFunction fn = resolve_function(fn_spec, cfg);
      const Scalar alpha = scalar_arg(alpha_text, "--alpha", cfg);
      const Scalar beta = beta_text ? scalar_arg(beta_text, "--beta", cfg) : Scalar(0L);
      GapReport report = gap_report(fn, alpha, beta, *big_n, ctx);
      if (std::holds_alternative<PiecewiseLinear>(fn)) report = classify_gaps(std::move(report), fn);
      emit(cfg.format == "csv" ? to_csv(report) : dump(to_json(report)), cfg, out);
      return kExitPass;
    }

    if (*eval_cmd) {
      const PeriodicFunction fn = resolve_function(fn_spec, cfg);
      const Scalar x = scalar_arg(x_text, "--x", cfg);
      emit(dump(Json{{"x", to_json(x)}, {"value", to_json(eval(fn, x))}}), cfg, out);
      return kExitPass;
    }

    if (*verify) {
      const ToleranceContext ctx = cfg.context();
      const std::string& id = statement_id;
      VerificationReport report;
      if (id == statement::three_gap) {
        report = verify_three_gap(scalar_arg(alpha_text, "--alpha", cfg), count_arg(big_n, "--N"), ctx);
      } else if (id == statement::affine) {
        report = verify_affine(scalar_arg(slope_text, "--m", cfg),
                               scalar_arg(intercept_text, "--c", cfg),
                               scalar_arg(alpha_text, "--alpha", cfg),
                               beta_text ? scalar_arg(beta_text, "--beta", cfg) : Scalar(0L),
                               count_arg(big_n, "--N"), ctx);
      } else if (id == statement::general || id == statement::tightened) {
        const PeriodicFunction fn = resolve_function(fn_spec, cfg);
        const PiecewiseLinear& f = require_pl(fn, fn_spec);
        const Scalar alpha = scalar_arg(alpha_text, "--alpha", cfg);
        report = id == statement::general
                     ? verify_general_bound(f, alpha, count_arg(big_n, "--N"), ctx)
                     : verify_tightened_bound(f, alpha, count_arg(big_n, "--N"), ctx);
      } else if (id == statement::two_piece_shift) {
        report = verify_two_piece_shift(scalar_arg(kappa_text, "--kappa", cfg),
                                        scalar_arg(beta_text, "--beta", cfg),
                                        scalar_arg(alpha_text, "--alpha", cfg),
                                        count_arg(big_n, "--N"), ctx);
      } else if (id == statement::triangle) {
        report = verify_triangle_bounds(scalar_arg(alpha_text, "--alpha", cfg),
                                        count_arg(big_n, "--N"), ctx);
      } else if (id == statement::five_distance) {
        report = verify_five_distance(scalar_arg(alpha_text, "--alpha", cfg),
                                      scalar_arg(beta_text, "--beta", cfg),
                                      count_arg(big_n, "--N"), ctx);
      } else if (id == statement::main_construction) {
        report = verify_unbounded_construction(construct_unbounded_pl(count_arg(small_n, "--n")),
                                               ToleranceContext::exact());
      } else {
        const std::string spec = fn_spec.empty() ? "cosine" : fn_spec;
        RunConfig approx_cfg = cfg;
        approx_cfg.mode = "approx";
        const PeriodicFunction fn = resolve_function(spec, approx_cfg);
        const auto* analytic = std::get_if<AnalyticPeriodic>(&fn);
        if (analytic == nullptr) throw Error(ErrorKind::invalid_argument, spec + " is not analytic");
        report = construct_c2_witness(*analytic, count_arg(small_n, "--n"),
                                      approx_cfg.context()).second;
      }
      emit(cfg.format == "csv" ? verification_csv(report) : dump(to_json(report)), cfg, out);
      return report.pass ? kExitPass : kExitViolation;
    }

    if (*sweep) {
      sweep_opts.seed = cfg.seed;
      sweep_opts.threads = threads;
      sweep_opts.ctx = cfg.number_mode() == Mode::exact ? ToleranceContext::approx(cfg.bits, cfg.tolerance)
                                                        : cfg.context();
      const SweepResult result = run_sweep(sweep_opts);
      emit(sweep_output(result, sweep_opts, cfg), cfg, out);
      return result.failures == 0 ? kExitPass : kExitViolation;
    }

    if (*construct) {
      if (construct_kind == "main") {
        const UnboundedConstruction c = construct_unbounded_pl(*small_n);
        const VerificationReport report = verify_unbounded_construction(c, ToleranceContext::exact());
        emit(dump(Json{{"kind", "main"},
                       {"function", to_json(c.function)},
                       {"epsilon", to_json(c.epsilon)},
                       {"alpha", to_json(c.alpha)},
                       {"N", c.count},
                       {"n", c.n},
                       {"report", to_json(report)}}),
             cfg, out);
        return report.pass ? kExitPass : kExitViolation;
      }
      const std::string spec = fn_spec.empty() ? "cosine" : fn_spec;
      RunConfig approx_cfg = cfg;
      approx_cfg.mode = "approx";
      const PeriodicFunction fn = resolve_function(spec, approx_cfg);
      const auto* analytic = std::get_if<AnalyticPeriodic>(&fn);
      if (analytic == nullptr) throw Error(ErrorKind::invalid_argument, spec + " is not analytic");
      const auto [witness, report] = construct_c2_witness(*analytic, *small_n, approx_cfg.context());
      emit(dump(Json{{"kind", "c2"},
                     {"function", analytic->name},
                     {"witness", to_json(witness)},
                     {"report", to_json(report)}}),
           cfg, out);
      return report.pass ? kExitPass : kExitViolation;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace gaplab::cli
