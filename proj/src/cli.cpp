#include "logcvx/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "logcvx/bohr_mollerup.hpp"
#include "logcvx/checks.hpp"
#include "logcvx/convexity.hpp"
#include "logcvx/errors.hpp"
#include "logcvx/representer.hpp"
#include "logcvx/special.hpp"

namespace logcvx {

namespace {

struct Config {
  std::string representer;
  std::string function;
  std::optional<double> x;
  std::vector<std::string> range;
  double tol = 1e-8;
  long max_n = kDefaultMaxN;
  std::string output = "json";
  std::string out_path;
  std::uint64_t seed = 0;
  std::string only;
};

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range {
  double a;
  double b;
  int n;
};

Range parse_range(const std::vector<std::string>& parts) {
  if (parts.size() != 3) throw ConfigError("--range takes <a> <b> <n>");
  try {
    std::size_t used = 0;
    Range r{std::stod(parts[0], &used), 0.0, 0};
    if (used != parts[0].size()) throw ConfigError("bad --range start");
    r.b = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw ConfigError("bad --range end");
    r.n = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw ConfigError("bad --range count");
    if (r.n < 2) throw ConfigError("--range needs n >= 2");
    if (!(r.a < r.b)) throw ConfigError("--range needs a < b");
    return r;
  } catch (const std::logic_error&) {
    throw ConfigError("--range values must be numbers");
  }
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// What is being evaluated: a representer's Artin function or fib_real.
struct Target {
  std::optional<Representer> g;
  std::optional<RealFunction> f;
};

Target make_target(const Config& c) {
  if (!c.representer.empty() && !c.function.empty())
    throw ConfigError("give either --representer or --function, not both");
  if (!c.function.empty()) {
    if (c.function == "fib" || c.function == "fibonacci") return {std::nullopt, fibonacci_function()};
    if (c.function == "gamma") return {builtin::identity(), std::nullopt};
    throw ConfigError("unknown --function '" + c.function + "' (expected fib or gamma)");
  }
  if (c.representer.empty()) throw ConfigError("--representer or --function is required");
  try {
    return {representer_from_spec(c.representer), std::nullopt};
  } catch (const ParseError&) {
    throw;
  } catch (const UnboundParameter&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid representer: ") + e.what());
  }
}

void check_common(const Config& c) {
  if (!(c.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (c.max_n < 4) throw ConfigError("--max-n must be at least 4");
  if (c.output != "json" && c.output != "csv") throw ConfigError("--output must be json or csv");
}

int cmd_eval(const Config& c, std::ostream& out) {
  if (!c.x) throw ConfigError("eval needs --x");
  const Target t = make_target(c);
  const double x = *c.x;
  nlohmann::json j;
  if (t.f) {
    const double v = t.f->value(x);
    j = {{"x", x}, {"value", v}, {"n_used", 0}, {"lower", v}, {"upper", v}, {"rel_gap", 0.0},
         {"converged", true}};
  } else {
    const ExtendResult r = extend_detailed(*t.g, x, c.tol, c.max_n);
    j = {{"x", x},
         {"value", r.value},
         {"n_used", r.base.n},
         {"lower", r.lower},
         {"upper", r.upper},
         {"rel_gap", r.base.rel_gap},
         {"converged", r.base.converged}};
  }
  if (c.output == "csv") {
    out << "x,value,n_used,lower,upper,rel_gap,converged\n"
        << num(x) << ',' << num(j["value"].get<double>()) << ',' << j["n_used"].get<long>() << ','
        << num(j["lower"].get<double>()) << ',' << num(j["upper"].get<double>()) << ','
        << num(j["rel_gap"].get<double>()) << ',' << (j["converged"].get<bool>() ? "true" : "false")
        << '\n';
  } else {
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

struct Row {
  double x;
  std::optional<double> f, log_f, d2_log, q_det;
};

Row report_row(const Target& t, const Config& c, double x) {
  Row row{x, {}, {}, {}, {}};
  if (t.f && t.f->has_exact_derivatives()) {
    try {
      const double v = t.f->value(x);
      row.f = v;
      const double d1 = t.f->derivative(x, 1);
      const double d2 = t.f->derivative(x, 2);
      row.q_det = v * d2 - d1 * d1;
      if (v > 0.0) {
        row.log_f = std::log(v);
        row.d2_log = *row.q_det / (v * v);
      }
    } catch (const std::exception&) {
    }
    return row;
  }

  auto eval = [&](double at) -> std::optional<double> {
    try {
      return t.f ? t.f->value(at) : extend(*t.g, at, c.tol, c.max_n);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  const double h = default_step(x, 2);
  row.f = eval(x);
  if (!row.f) return row;
  const double v = *row.f;
  if (v > 0.0) row.log_f = std::log(v);
  const auto fm = eval(x - h);
  const auto fp = eval(x + h);
  if (!fm || !fp) return row;
  const double d1 = (*fp - *fm) / (2.0 * h);
  const double d2 = (*fp - 2.0 * v + *fm) / (h * h);
  row.q_det = v * d2 - d1 * d1;
  if (v > 0.0 && *fm > 0.0 && *fp > 0.0)
    row.d2_log = (std::log(*fp) - 2.0 * std::log(v) + std::log(*fm)) / (h * h);
  return row;
}

int cmd_report(const Config& c, std::ostream& out) {
  if (c.range.empty()) throw ConfigError("report needs --range <a> <b> <n>");
  const Range r = parse_range(c.range);
  const Target t = make_target(c);

  std::vector<Row> rows;
  bool complete = true;
  for (double x : uniform_points(r.a, r.b, r.n)) {
    rows.push_back(report_row(t, c, x));
    const Row& row = rows.back();
    complete = complete && row.f && row.log_f && row.d2_log && row.q_det;
  }

  if (c.output == "csv") {
    auto cell = [](const std::optional<double>& v) { return v ? num(*v) : std::string("NA"); };
    out << "x,f,log_f,d2_log,q_det\n";
    for (const Row& row : rows)
      out << num(row.x) << ',' << cell(row.f) << ',' << cell(row.log_f) << ',' << cell(row.d2_log) << ','
          << cell(row.q_det) << '\n';
  } else {
    ConvexityReport report;
    report.interval = {r.a, r.b};
    report.grid_n = r.n;
    auto j_rows = nlohmann::json::array();
    auto cell = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); };
    for (const Row& row : rows) {
      if (row.q_det) report.q_values.push_back({row.x, *row.q_det});
      if (row.d2_log) report.d2log_values.push_back({row.x, *row.d2_log});
      j_rows.push_back({{"x", row.x},
                        {"f", cell(row.f)},
                        {"log_f", cell(row.log_f)},
                        {"d2_log", cell(row.d2_log)},
                        {"q_det", cell(row.q_det)}});
    }
    finalize_report(report, complete);
    nlohmann::json j = to_json(report);
    j["rows"] = j_rows;
    out << j.dump(2) << '\n';
  }
  return complete ? kExitOk : kExitPartial;
}

int cmd_paper_checks(const Config& c, std::ostream& out) {
  CheckOptions opts;
  opts.tol = c.tol;
  opts.seed = c.seed;
  if (!c.only.empty()) {
    const auto tags = check_tags();
    if (std::find(tags.begin(), tags.end(), c.only) == tags.end())
      throw ConfigError("unknown --only tag '" + c.only + "'");
    opts.only = c.only;
  }
  const auto outcomes = run_checks(opts);
  const nlohmann::json j = to_json(outcomes);
  out << j.dump(2) << '\n';
  return j["all_passed"].get<bool>() ? kExitOk : kExitCheckFailed;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--representer", c.representer,
                  "identity, fibonacci, power:c=<v>, const:<v> or an expression in x");
  sub->add_option("--function", c.function, "fib or gamma");
  sub->add_option("--x", c.x, "evaluation point");
  sub->add_option("--range", c.range, "grid <a> <b> <n>")->expected(3)->allow_extra_args(false);
  sub->add_option("--tol", c.tol, "tolerance")->capture_default_str();
  sub->add_option("--max-n", c.max_n, "largest truncation index")->capture_default_str();
  sub->add_option("--output", c.output, "json or csv")->capture_default_str();
  sub->add_option("--out", c.out_path, "write results to this file");
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--only", c.only, "run only the criterion with this tag");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Log-convex solutions of f(x+1) = g(x) f(x) and log-convexity diagnostics", "logcvx"};
  app.require_subcommand(1);
  Config c;
  CLI::App* eval = app.add_subcommand("eval", "evaluate the log-convex solution at --x");
  CLI::App* report = app.add_subcommand("report", "tabulate f, log f, (log f)'' and q over --range");
  CLI::App* checks = app.add_subcommand("paper-checks", "run the reproduction criteria");
  for (CLI::App* sub : {eval, report, checks}) add_common(sub, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    check_common(c);
    if (eval->parsed())
      code = cmd_eval(c, buffer);
    else if (report->parsed())
      code = cmd_report(c, buffer);
    else
      code = cmd_paper_checks(c, buffer);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnboundParameter& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DivergenceError& e) {
    err << "DivergenceError: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitPartial;
  }

  if (c.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << c.out_path << '\n';
      return kExitConfig;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace logcvx
