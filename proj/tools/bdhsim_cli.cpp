// Command-line harness for the bdhsim shared library. Subcommands generate
// simulation CSVs and run the survival/KS/tail-slope statistics on them.
// Exit codes: 0 success, 2 invalid config, 3 insufficient data, 4 I/O error.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bdhsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitInsufficient = 3;
constexpr int kExitIo = 4;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void throw_status(bdh_status status) {
  int code = kExitInvalid;
  if (status == BDH_ERR_INSUFFICIENT) code = kExitInsufficient;
  if (status == BDH_ERR_IO) code = kExitIo;
  throw CliError{code, bdh_last_error()};
}

void check(bdh_status status) {
  if (status != BDH_OK) throw_status(status);
}

std::pair<double, double> parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CliError{kExitInvalid, "--window expects lo,hi"};
  try {
    const double lo = std::stod(text.substr(0, comma));
    const double hi = std::stod(text.substr(comma + 1));
    return {lo, hi};
  } catch (const std::exception&) {
    throw CliError{kExitInvalid, "--window expects numeric lo,hi"};
  }
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      values.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw CliError{kExitInvalid, "expected a comma-separated integer list"};
    }
  }
  if (values.empty())
    throw CliError{kExitInvalid, "expected a comma-separated integer list"};
  return values;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

const char* outcome_name(int32_t outcome) {
  switch (outcome) {
    case BDH_OUTCOME_DIRECT:
      return "direct";
    case BDH_OUTCOME_TAIL:
      return "tail";
    case BDH_OUTCOME_CENSORED:
      return "censored";
    default:
      return "unknown";
  }
}

// ---- CSV input -----------------------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw CliError{kExitInvalid, "input CSV has no column named '" + name + "'"};
  }
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitIo, "cannot open " + path};
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  if (first) throw CliError{kExitInsufficient, path + " is empty"};
  return table;
}

struct ColumnData {
  std::vector<double> values;   // requested column, censored rows dropped
  std::size_t censored_dropped = 0;
};

ColumnData read_column(const std::string& path, const std::string& column) {
  const CsvTable table = read_csv(path);
  const std::size_t value_col = table.column(column);
  std::optional<std::size_t> outcome_col;
  for (std::size_t i = 0; i < table.header.size(); ++i)
    if (table.header[i] == "outcome") outcome_col = i;

  ColumnData data;
  data.values.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    if (row.size() <= value_col)
      throw CliError{kExitIo, path + " has a short row"};
    if (outcome_col && row.size() > *outcome_col &&
        row[*outcome_col] == "censored") {
      ++data.censored_dropped;
      continue;
    }
    try {
      data.values.push_back(std::stod(row[value_col]));
    } catch (const std::exception&) {
      throw CliError{kExitIo, path + " has a non-numeric value in " + column};
    }
  }
  if (data.values.empty())
    throw CliError{kExitInsufficient, path + " has no usable rows"};
  return data;
}

std::vector<double> restrict_open(const std::vector<double>& values, double lo,
                                  double hi) {
  std::vector<double> out;
  for (const double v : values)
    if (v > lo && v < hi) out.push_back(v);
  return out;
}

// ---- simulate ------------------------------------------------------------

struct SimulateOptions {
  std::string mode = "hybrid";
  double p = 0.005;
  double lambda = 1.0;
  std::uint64_t step_cap = 1'000'000;
  std::uint64_t repeats = 1'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out_path;
};

int cmd_simulate(const SimulateOptions& opt) {
  const auto start = std::chrono::steady_clock::now();

  std::vector<bdh_sim_record> records(opt.repeats);
  if (opt.mode == "hybrid") {
    if (opt.lambda != 1.0)
      throw CliError{kExitInvalid,
                     "hybrid mode supports the critical case (lambda = 1) only"};
    check(bdh_run_hybrid(opt.p, opt.repeats, opt.seed, opt.threads,
                         records.data()));
  } else if (opt.mode == "direct") {
    check(bdh_run_direct(opt.lambda, opt.step_cap, opt.repeats, opt.seed,
                         opt.threads, records.data()));
  } else {
    throw CliError{kExitInvalid, "--mode must be direct or hybrid"};
  }

  std::FILE* out = std::fopen(opt.out_path.c_str(), "wb");
  if (out == nullptr) throw CliError{kExitIo, "cannot open " + opt.out_path};
  std::uint64_t counts[3] = {0, 0, 0};
  std::fputs("repeat_index,h,x,return_time,steps,final_state,outcome\n", out);
  for (std::uint64_t i = 0; i < opt.repeats; ++i) {
    const auto& rec = records[i];
    if (rec.outcome >= 0 && rec.outcome < 3) ++counts[rec.outcome];
    std::fprintf(out, "%" PRIu64 ",%.17g,%.17g,%.17g,%" PRIu64 ",%" PRIu64 ",%s\n",
                 i, rec.h, rec.x, rec.return_time, rec.steps, rec.final_state,
                 outcome_name(rec.outcome));
  }
  if (std::fclose(out) != 0)
    throw CliError{kExitIo, "write failed for " + opt.out_path};

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  const std::string manifest_path = opt.out_path + ".manifest";
  std::ofstream manifest(manifest_path);
  if (!manifest) throw CliError{kExitIo, "cannot open " + manifest_path};
  manifest << "command=simulate\n"
           << "version=" << bdh_version() << "\n"
           << "mode=" << opt.mode << "\n";
  if (opt.mode == "hybrid")
    manifest << "p=" << format_double(opt.p) << "\n"
             << "t_min=" << format_double(1.0 / opt.p) << "\n";
  manifest << "lambda=" << format_double(opt.lambda) << "\n"
           << "step_cap=" << opt.step_cap << "\n"
           << "repeats=" << opt.repeats << "\n"
           << "seed=" << opt.seed << "\n"
           << "threads=" << opt.threads << "\n"
           << "count_direct=" << counts[0] << "\n"
           << "count_tail=" << counts[1] << "\n"
           << "count_censored=" << counts[2] << "\n"
           << "duration_seconds=" << format_double(seconds) << "\n";
  if (!manifest.flush())
    throw CliError{kExitIo, "write failed for " + manifest_path};

  std::cout << "wrote " << opt.repeats << " records to " << opt.out_path
            << " (direct=" << counts[0] << " tail=" << counts[1]
            << " censored=" << counts[2] << ")\n";
  return kExitOk;
}

// ---- survival ------------------------------------------------------------

struct SurvivalOptions {
  std::vector<std::string> inputs;
  std::string window = "10,10000";
  std::size_t grid = 50;
  std::string column = "h";
  std::string out_path;  // empty = stdout
};

int cmd_survival(const SurvivalOptions& opt) {
  const auto [lo, hi] = parse_window(opt.window);
  if (!(lo > 0.0) || !(hi > lo))
    throw CliError{kExitInvalid, "survival window requires 0 < lo < hi"};
  if (opt.grid < 2) throw CliError{kExitInvalid, "--grid must be >= 2"};

  struct Curve {
    std::string label;
    bdh_ecdf* ecdf;
  };
  std::vector<Curve> curves;
  for (const auto& path : opt.inputs) {
    const ColumnData data = read_column(path, opt.column);
    bdh_ecdf* ecdf = nullptr;
    check(bdh_ecdf_new(data.values.data(), data.values.size(), &ecdf));
    // Dropped censored rows make the estimate conditional on completion.
    const std::string label =
        (data.censored_dropped > 0 ? "logS_conditional:" : "logS:") + path;
    curves.push_back(Curve{label, ecdf});
  }

  std::ostringstream body;
  body << "t";
  for (const auto& curve : curves) body << "," << curve.label;
  body << "\n";
  const double log_step = std::log(hi / lo) / static_cast<double>(opt.grid - 1);
  for (std::size_t g = 0; g < opt.grid; ++g) {
    const double t = g == opt.grid - 1
                         ? hi
                         : lo * std::exp(log_step * static_cast<double>(g));
    body << format_double(t);
    for (const auto& curve : curves) {
      double f = 0.0;
      check(bdh_ecdf_eval(curve.ecdf, t, &f));
      body << "," << format_double(std::log(1.0 - f));
    }
    body << "\n";
  }
  for (auto& curve : curves) bdh_ecdf_free(curve.ecdf);

  if (opt.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(opt.out_path);
    if (!out) throw CliError{kExitIo, "cannot open " + opt.out_path};
    out << body.str();
    if (!out.flush()) throw CliError{kExitIo, "write failed for " + opt.out_path};
  }
  return kExitOk;
}

// ---- ks ------------------------------------------------------------------

struct KsOptions {
  std::string a_path;
  std::string b_path;
  std::string window;
  std::string column = "h";
};

int cmd_ks(const KsOptions& opt) {
  std::vector<double> a = read_column(opt.a_path, opt.column).values;
  std::vector<double> b = read_column(opt.b_path, opt.column).values;
  if (!opt.window.empty()) {
    const auto [lo, hi] = parse_window(opt.window);
    a = restrict_open(a, lo, hi);
    b = restrict_open(b, lo, hi);
    std::cout << "interval=(" << format_double(lo) << ","
              << format_double(hi) << ")\n";
  }
  if (a.empty() || b.empty())
    throw CliError{kExitInsufficient,
                   "no samples left inside the requested interval"};

  double d = 0.0, p = 0.0, ne = 0.0;
  check(bdh_ks_two_sample(a.data(), a.size(), b.data(), b.size(), &d, &p, &ne));
  std::cout << "n_a=" << a.size() << "\n"
            << "n_b=" << b.size() << "\n"
            << "n_effective=" << format_double(ne) << "\n"
            << "D=" << format_double(d) << "\n"
            << "p_value=" << format_double(p) << "\n";
  return kExitOk;
}

// ---- tailfit ---------------------------------------------------------------

struct TailfitOptions {
  std::string in_path;
  std::string window = "10,10000";
  std::size_t grid = 50;
  std::string column = "h";
};

int cmd_tailfit(const TailfitOptions& opt) {
  const auto [lo, hi] = parse_window(opt.window);
  const ColumnData data = read_column(opt.in_path, opt.column);
  double slope = 0.0, intercept = 0.0;
  uint32_t n_points = 0;
  check(bdh_fit_tail_slope(data.values.data(), data.values.size(), lo, hi,
                           static_cast<uint32_t>(opt.grid), &slope, &intercept,
                           &n_points));
  std::cout << "window=(" << format_double(lo) << "," << format_double(hi)
            << ")\n"
            << "n_points=" << n_points << "\n"
            << "slope=" << format_double(slope) << "\n"
            << "intercept=" << format_double(intercept) << "\n";
  return kExitOk;
}

// ---- hitting-times ---------------------------------------------------------

struct HittingOptions {
  std::string ceilings = "100,1000,10000";
  std::string out_path;  // empty = stdout
};

int cmd_hitting_times(const HittingOptions& opt) {
  const auto ceilings = parse_u64_list(opt.ceilings);
  std::ostringstream body;
  body << "N,h2,h2_minus_harmonic\n";
  for (const std::uint64_t ceiling : ceilings) {
    double h2 = 0.0;
    check(bdh_hitting_time_from_two(ceiling, &h2));
    long double harmonic = 0.0L;
    for (std::uint64_t k = ceiling; k >= 2; --k)
      harmonic += 1.0L / static_cast<long double>(k);
    body << ceiling << "," << format_double(h2) << ","
         << format_double(static_cast<double>(h2 - harmonic)) << "\n";
  }
  if (opt.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(opt.out_path);
    if (!out) throw CliError{kExitIo, "cannot open " + opt.out_path};
    out << body.str();
    if (!out.flush()) throw CliError{kExitIo, "write failed for " + opt.out_path};
  }
  return kExitOk;
}

// ---- dominating ------------------------------------------------------------

struct DominatingOptions {
  double lambda = 1.0;
  double delta = 0.5;
  double horizon = 100.0;
  std::uint64_t reps = 2000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

int cmd_dominating(const DominatingOptions& opt) {
  double p_hat = 0.0, std_err = 0.0;
  check(bdh_estimate_persistence(opt.lambda, opt.delta, opt.horizon, opt.reps,
                                 opt.seed, opt.threads, &p_hat, &std_err));
  std::cout << "lambda=" << format_double(opt.lambda) << "\n"
            << "delta=" << format_double(opt.delta) << "\n"
            << "horizon=" << format_double(opt.horizon) << "\n"
            << "reps=" << opt.reps << "\n"
            << "p_hat=" << format_double(p_hat) << "\n"
            << "std_err=" << format_double(std_err) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birth-death return-time simulation harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("bdhsim ") + bdh_version());

  SimulateOptions sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Run return-time simulations and write a CSV of records");
  simulate->add_option("--mode", sim.mode, "direct or hybrid")
      ->check(CLI::IsMember({"direct", "hybrid"}));
  simulate->add_option("--p", sim.p, "tail probability (hybrid mode)");
  simulate->add_option("--lambda", sim.lambda, "per-capita birth rate");
  simulate->add_option("--step-cap", sim.step_cap,
                       "direct-mode step budget per repeat");
  simulate->add_option("--repeats", sim.repeats, "number of repeats");
  simulate->add_option("--seed", sim.seed, "random seed")->required();
  simulate->add_option("--threads", sim.threads, "worker threads (0 = auto)");
  simulate->add_option("--out", sim.out_path, "output CSV path")->required();

  SurvivalOptions surv;
  auto* survival = app.add_subcommand(
      "survival", "Tabulate log survival curves from simulation CSVs");
  survival->add_option("--in", surv.inputs, "input CSV (repeatable)")
      ->required();
  survival->add_option("--window", surv.window, "evaluation range lo,hi");
  survival->add_option("--grid", surv.grid, "number of log-spaced points");
  survival->add_option("--column", surv.column, "column to analyze");
  survival->add_option("--out", surv.out_path, "output CSV (default stdout)");

  KsOptions ks;
  auto* ks_cmd = app.add_subcommand(
      "ks", "Two-sample Kolmogorov-Smirnov test between two CSVs");
  ks_cmd->add_option("--a", ks.a_path, "first input CSV")->required();
  ks_cmd->add_option("--b", ks.b_path, "second input CSV")->required();
  ks_cmd->add_option("--window", ks.window,
                     "restrict both samples to the open interval lo,hi");
  ks_cmd->add_option("--column", ks.column, "column to compare");

  TailfitOptions tail;
  auto* tailfit = app.add_subcommand(
      "tailfit", "OLS slope of log survival vs log t over a window");
  tailfit->add_option("--in", tail.in_path, "input CSV")->required();
  tailfit->add_option("--window", tail.window, "fit window lo,hi");
  tailfit->add_option("--grid", tail.grid, "number of log-spaced points");
  tailfit->add_option("--column", tail.column, "column to fit");

  HittingOptions hit;
  auto* hitting = app.add_subcommand(
      "hitting-times", "Exact truncated expected hitting times from state 2");
  hitting->add_option("--ceilings", hit.ceilings,
                      "comma-separated truncation ceilings");
  hitting->add_option("--out", hit.out_path, "output CSV (default stdout)");

  DominatingOptions dom;
  auto* dominating = app.add_subcommand(
      "dominating", "Estimate dominating-type persistence probability");
  dominating->add_option("--lambda", dom.lambda, "per-capita birth rate");
  dominating->add_option("--delta", dom.delta, "early query fraction in (0,1]");
  dominating->add_option("--horizon", dom.horizon, "end time t");
  dominating->add_option("--reps", dom.reps, "number of repeats");
  dominating->add_option("--seed", dom.seed, "random seed")->required();
  dominating->add_option("--threads", dom.threads, "worker threads (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (survival->parsed()) return cmd_survival(surv);
    if (ks_cmd->parsed()) return cmd_ks(ks);
    if (tailfit->parsed()) return cmd_tailfit(tail);
    if (hitting->parsed()) return cmd_hitting_times(hit);
    if (dominating->parsed()) return cmd_dominating(dom);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
