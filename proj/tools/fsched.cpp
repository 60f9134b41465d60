// fsched: schedule robustness experiments from the command line.
//
//   fsched generate --config cfg.json --out run/
//   fsched solve    --config cfg.json --out run/
//   fsched evaluate --config cfg.json --solution run/solution.json --out run/
//   fsched benchmark --config cfg.json --sweep all --out bench/
//   fsched report   --summary a/summary.csv --summary b/summary.csv --out table.csv

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include "fsched/benders.hpp"
#include "fsched/csv.hpp"
#include "fsched/evaluation.hpp"
#include "fsched/mdm.hpp"
#include "fsched/run_config.hpp"
#include "fsched/schedule_io.hpp"

namespace fs = std::filesystem;
using namespace fsched;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kSolver = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags that override config-file values.
struct Overrides {
  std::optional<std::string> config, schedule, distribution, strategy, cut_mode, column_strategy;
  std::optional<double> mean, sd, budget_fraction, epsilon;
  std::optional<int> scenarios, column_count, workers, max_iter, test_count;
  std::optional<std::int64_t> reschedule_limit;
  std::optional<std::uint64_t> seed, test_seed, enumeration_limit;
  std::optional<bool> caching, dominance;
  bool no_timing = false;
  std::string out;
};

void add_common(CLI::App* cmd, Overrides& o, bool needs_out = true) {
  cmd->add_option("--config", o.config, "run configuration JSON");
  cmd->add_option("--schedule", o.schedule, "schedule JSON (overrides the config)");
  cmd->add_option("--distribution", o.distribution, "exponential | lognormal | truncated-normal | gamma");
  cmd->add_option("--mean", o.mean, "delay mean, minutes");
  cmd->add_option("--sd", o.sd, "delay standard deviation, minutes");
  cmd->add_option("--strategy", o.strategy, "hub | rush");
  cmd->add_option("--scenarios", o.scenarios, "training scenario count");
  cmd->add_option("--seed", o.seed, "training seed");
  cmd->add_option("--budgetFraction", o.budget_fraction, "B as a fraction of expected total primary delay");
  cmd->add_option("--rescheduleLimit", o.reschedule_limit, "per-flight reschedule bound l, minutes");
  cmd->add_option("--cutMode", o.cut_mode, "multi | single");
  cmd->add_option("--columnStrategy", o.column_strategy, "all | best | first");
  cmd->add_option("--columnCount", o.column_count, "N for best/first paths");
  cmd->add_option("--dominance", o.dominance, "label dominance pruning");
  cmd->add_option("--workers", o.workers, "parallel scenario workers");
  cmd->add_option("--epsilon", o.epsilon, "relative stopping tolerance on UB - LB");
  cmd->add_option("--maxIter", o.max_iter, "outer iteration cap");
  cmd->add_option("--caching", o.caching, "keep generated columns across iterations");
  cmd->add_option("--testSeed", o.test_seed, "evaluation seed");
  cmd->add_option("--testCount", o.test_count, "evaluation scenario count");
  cmd->add_option("--enumerationLimit", o.enumeration_limit, "route cap for exact integer recourse");
  cmd->add_flag("--no-timing", o.no_timing, "write zero wall times (byte-stable outputs)");
  auto* out = cmd->add_option("--out", o.out, "output directory");
  if (needs_out) out->required();
}

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config ? load_config(*o.config) : RunConfig{};
  try {
    if (o.schedule) c.schedule = *o.schedule;
    if (o.distribution) c.delay.distribution = parse_distribution(*o.distribution);
    if (o.mean) c.delay.mean = *o.mean;
    if (o.sd) c.delay.sd = *o.sd;
    if (o.strategy) c.delay.strategy = parse_selection_strategy(*o.strategy);
    if (o.scenarios) c.delay.scenario_count = *o.scenarios;
    if (o.seed) c.delay.seed = *o.seed;
    if (o.budget_fraction) c.budget_fraction = *o.budget_fraction;
    if (o.reschedule_limit) c.reschedule_limit = *o.reschedule_limit;
    if (o.cut_mode) c.cut_mode = parse_cut_mode(*o.cut_mode);
    if (o.column_strategy) c.columns.mode = parse_column_mode(*o.column_strategy);
    if (o.column_count) c.columns.count = *o.column_count;
    if (o.dominance) c.dominance = *o.dominance;
    if (o.workers) c.workers = *o.workers;
    if (o.epsilon) c.epsilon = *o.epsilon;
    if (o.max_iter) c.max_iterations = *o.max_iter;
    if (o.caching) c.caching = *o.caching;
    if (o.test_seed) c.test_seed = *o.test_seed;
    if (o.test_count) c.test_count = *o.test_count;
    if (o.enumeration_limit) c.enumeration_limit = *o.enumeration_limit;
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (c.schedule.empty()) throw UsageError("no schedule given (--schedule or the config's \"schedule\")");
  return c;
}

// Files are collected first and only written once everything succeeded.
using Outputs = std::vector<std::pair<std::string, std::string>>;

void write_outputs(const fs::path& dir, const Outputs& files) {
  fs::create_directories(dir);
  for (const auto& [name, content] : files) {
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    if (!out) throw DataError("cannot write " + (dir / name).string());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string instance_name(const RunConfig& c) { return fs::path(c.schedule).stem().string(); }

struct Problem {
  RunConfig config;
  ConnectionNetwork net;
  std::vector<Scenario> scenarios;
  Minutes budget = 0;
};

Problem load_problem(const Overrides& o, const std::optional<std::string>& scenario_file) {
  Problem p{resolve(o), {}, {}, 0};
  p.net = build_network(load_schedule(p.config.schedule));
  if (scenario_file) {
    p.scenarios = scenarios_from_json(p.net, read_json_file(*scenario_file));
  } else {
    p.scenarios = sample_scenarios(p.config.delay, select_flights(p.net, p.config.delay.strategy), p.net.num_flights());
  }
  p.budget = compute_budget(p.scenarios, p.config.budget_fraction);
  return p;
}

json reschedule_json(const ConnectionNetwork& net, std::span<const Minutes> x) {
  json out = json::array();
  for (int f = 0; f < net.num_flights(); ++f) out.push_back({{"flight", net.flights()[f].id}, {"minutes", x[f]}});
  return out;
}

std::vector<Minutes> reschedule_from_json(const ConnectionNetwork& net, const json& doc) {
  std::vector<Minutes> x(net.num_flights(), 0);
  try {
    for (const auto& e : doc.at("reschedule")) x.at(net.flight_index(e.at("flight").get<std::string>())) = e.at("minutes").get<Minutes>();
  } catch (const std::out_of_range& e) {
    throw DataError(std::string("solution does not match the schedule: ") + e.what());
  } catch (const json::exception& e) {
    throw DataError(std::string("bad solution file: ") + e.what());
  }
  return x;
}

// ---- generate --------------------------------------------------------------

int cmd_generate(const Overrides& o) {
  const Problem p = load_problem(o, std::nullopt);
  const auto tests = test_scenarios(p.net, p.config.simulation_config());
  Outputs files;
  files.emplace_back("config.json", dump(config_to_json(p.config)));
  files.emplace_back("scenarios.json", dump(scenarios_to_json(p.net, p.scenarios)));
  files.emplace_back("test_scenarios.json", dump(scenarios_to_json(p.net, tests)));
  write_outputs(o.out, files);
  std::cout << p.scenarios.size() << " training and " << tests.size() << " test scenarios, budget " << p.budget
            << " min\n";
  return kOk;
}

// ---- solve -----------------------------------------------------------------

json solution_json(const Problem& p, const TsmResult& run, const OptGap& og) {
  return {{"instance", instance_name(p.config)},
          {"budget", p.budget},
          {"reschedule", reschedule_json(p.net, run.x)},
          {"objective", run.upper},
          {"lowerBound", run.lower},
          {"upperBound", run.upper},
          {"gapPct", compute_gap(run.upper, run.lower)},
          {"integerUpperBound", og.upper},
          {"optGapPct", og.percent},
          {"cuts", run.cuts},
          {"iterations", run.iterations},
          {"converged", run.converged},
          {"wallSeconds", run.seconds}};
}

int cmd_solve(const Overrides& o, const std::optional<std::string>& scenario_file) {
  const Problem p = load_problem(o, scenario_file);
  TsmOptions opt = p.config.tsm_options(p.budget);
  opt.timing = !o.no_timing;
  const auto run = solve_tsm(p.net, p.scenarios, opt);
  const auto og = compute_opt_gap(p.net, p.scenarios, run, p.config.recourse_options(), p.config.workers);
  Outputs files;
  files.emplace_back("config.json", dump(config_to_json(p.config)));
  files.emplace_back("solution.json", dump(solution_json(p, run, og)));
  files.emplace_back("trace.csv", trace_csv(run));
  write_outputs(o.out, files);
  std::cout << instance_name(p.config) << ": UB " << run.upper << " LB " << run.lower << " gap "
            << compute_gap(run.upper, run.lower) << "% opt gap " << og.percent << "% in " << run.iterations
            << " iterations\n";
  return kOk;
}

// ---- evaluate --------------------------------------------------------------

int cmd_evaluate(const Overrides& o, const std::optional<std::string>& scenario_file, const std::string& solution,
                 const std::optional<std::string>& mdm_file) {
  const Problem p = load_problem(o, scenario_file);
  const auto x_tsm = reschedule_from_json(p.net, read_json_file(solution));
  Outputs files;
  files.emplace_back("config.json", dump(config_to_json(p.config)));
  std::vector<Minutes> x_mdm;
  if (mdm_file) {
    x_mdm = reschedule_from_json(p.net, read_json_file(*mdm_file));
  } else {
    const auto mdm = solve_mdm(p.net, p.scenarios, p.budget, p.config.reschedule_limit);
    x_mdm = mdm.x;
    files.emplace_back("mdm_solution.json", dump({{"instance", instance_name(p.config)},
                                                  {"budget", p.budget},
                                                  {"reschedule", reschedule_json(p.net, mdm.x)},
                                                  {"objective", mdm.objective}}));
  }
  MasterProblem check(p.net, p.budget, p.config.reschedule_limit, 1);
  if (!check.is_feasible(x_tsm)) throw DataError("TSM reschedule is infeasible for this schedule and budget");
  if (!check.is_feasible(x_mdm)) throw DataError("MDM reschedule is infeasible for this schedule and budget");
  const auto report = run_simulation(p.net, x_mdm, x_tsm, p.config.simulation_config());
  files.emplace_back("evaluation.csv", scenario_csv(report));
  files.emplace_back("summary.csv", summary_header() + summary_row(instance_name(p.config), report));
  write_outputs(o.out, files);
  std::cout << summary_header() << summary_row(instance_name(p.config), report);
  return kOk;
}

// ---- benchmark -------------------------------------------------------------

struct Timed {
  TsmResult run;
  double seconds = 0.0;
};

Timed timed_solve(const Problem& p, const TsmOptions& opt, int reps, bool timing) {
  Timed t;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    t.run = solve_tsm(p.net, p.scenarios, opt);
    t.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  t.seconds = timing ? t.seconds / reps : 0.0;
  return t;
}

std::string bench_row(const std::string& sweep, const std::string& setting, int reps, const Timed& t) {
  return csv::row({sweep, setting, std::to_string(reps), csv::number(t.seconds), csv::number(t.run.lower),
                   csv::number(t.run.upper), csv::number(compute_gap(t.run.upper, t.run.lower)),
                   std::to_string(t.run.iterations), std::to_string(t.run.cuts)});
}

int cmd_benchmark(const Overrides& o, const std::optional<std::string>& scenario_file, const std::string& sweep,
                  int reps, const std::vector<int>& worker_counts) {
  static const std::set<std::string> kSweeps = {"strategy", "workers", "cuts", "caching", "all"};
  if (!kSweeps.count(sweep)) throw UsageError("unknown sweep '" + sweep + "'");
  if (reps < 1) throw UsageError("--reps must be at least 1");
  for (int w : worker_counts)
    if (w < 1) throw UsageError("worker counts must be at least 1");
  const Problem p = load_problem(o, scenario_file);
  const bool timing = !o.no_timing;
  TsmOptions base = p.config.tsm_options(p.budget);
  base.timing = timing;
  const std::string header =
      csv::row({"sweep", "setting", "reps", "avg_seconds", "LB", "UB", "gap_pct", "iterations", "cuts"});
  const bool all = sweep == "all";
  Outputs files;
  files.emplace_back("config.json", dump(config_to_json(p.config)));

  if (all || sweep == "strategy") {
    std::string out = header;
    TsmOptions opt = base;
    opt.recourse.enumerate = true;
    out += bench_row("strategy", "enumeration", reps, timed_solve(p, opt, reps, timing));
    for (auto mode : {ColumnMode::kAllPaths, ColumnMode::kBestPaths, ColumnMode::kFirstPaths}) {
      opt = base;
      opt.recourse.strategy.mode = mode;
      out += bench_row("strategy", to_string(mode) + "Paths", reps, timed_solve(p, opt, reps, timing));
    }
    files.emplace_back("benchmark_strategy.csv", out);
  }
  if (all || sweep == "workers") {
    std::string out = header;
    for (int w : worker_counts) {
      TsmOptions opt = base;
      opt.workers = w;
      out += bench_row("workers", std::to_string(w), reps, timed_solve(p, opt, reps, timing));
    }
    files.emplace_back("benchmark_workers.csv", out);
  }
  if (all || sweep == "cuts") {
    std::string out = header;
    for (auto mode : {CutMode::kMulti, CutMode::kSingle}) {
      TsmOptions opt = base;
      opt.cut_mode = mode;
      const auto t = timed_solve(p, opt, reps, timing);
      out += bench_row("cuts", to_string(mode), reps, t);
      files.emplace_back("trace_" + to_string(mode) + ".csv", trace_csv(t.run));
    }
    files.emplace_back("benchmark_cuts.csv", out);
  }
  if (all || sweep == "caching") {
    std::string out = header;
    for (bool on : {false, true}) {
      TsmOptions opt = base;
      opt.caching = on;
      out += bench_row("caching", on ? "on" : "off", reps, timed_solve(p, opt, reps, timing));
    }
    files.emplace_back("benchmark_caching.csv", out);
  }
  write_outputs(o.out, files);
  for (const auto& [name, content] : files)
    if (name.starts_with("benchmark_")) std::cout << content;
  return kOk;
}

// ---- report ----------------------------------------------------------------

int cmd_report(const std::vector<std::string>& summaries, const std::optional<std::string>& out,
               const std::optional<double>& original, const std::optional<double>& mdm,
               const std::optional<double>& tsm, const std::string& instance) {
  std::string table = summary_header();
  if (original || mdm || tsm) {
    if (!original || !mdm || !tsm) throw UsageError("--original, --mdm and --tsm go together");
    ComparisonReport r;
    r.avg_original = *original;
    r.avg_mdm = *mdm;
    r.avg_tsm = *tsm;
    r.rr = compute_metrics(*original, *mdm, *tsm);
    table += summary_row(instance, r);
  }
  for (const auto& path : summaries) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line + "\n" != summary_header()) throw DataError(path + " is not a summary CSV");
    while (std::getline(in, line))
      if (!line.empty()) table += line + "\n";
  }
  if (table == summary_header()) throw UsageError("nothing to report");
  if (out) write_outputs(fs::path(*out).parent_path().empty() ? "." : fs::path(*out).parent_path(),
                         {{fs::path(*out).filename().string(), table}});
  std::cout << table;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage stochastic flight rescheduling"};
  app.require_subcommand(1);

  Overrides gen_o, solve_o, eval_o, bench_o;
  auto* gen = app.add_subcommand("generate", "sample training and test scenarios");
  add_common(gen, gen_o);

  auto* solve = app.add_subcommand("solve", "solve the two-stage model by the L-shaped method");
  add_common(solve, solve_o);
  std::optional<std::string> solve_sc;
  solve->add_option("--scenarioFile", solve_sc, "training scenarios JSON (default: sample from config)");

  auto* eval = app.add_subcommand("evaluate", "compare Original, MDM and TSM out of sample");
  add_common(eval, eval_o);
  std::optional<std::string> eval_sc, mdm_file;
  std::string solution;
  eval->add_option("--scenarioFile", eval_sc, "training scenarios JSON (default: sample from config)");
  eval->add_option("--solution", solution, "solution.json from solve")->required();
  eval->add_option("--mdm", mdm_file, "MDM solution JSON (default: solve MDM)");

  auto* bench = app.add_subcommand("benchmark", "strategy / worker / cut / caching sweeps");
  add_common(bench, bench_o);
  std::optional<std::string> bench_sc;
  std::string sweep = "all";
  int reps = 5;
  std::vector<int> worker_counts = {1, 4};
  bench->add_option("--scenarioFile", bench_sc, "training scenarios JSON (default: sample from config)");
  bench->add_option("--sweep", sweep, "strategy | workers | cuts | caching | all")->capture_default_str();
  bench->add_option("--reps", reps, "repetitions averaged per setting")->capture_default_str();
  bench->add_option("--workerCounts", worker_counts, "worker counts for the worker sweep")->delimiter(',');

  auto* report = app.add_subcommand("report", "collect summary rows into one table");
  std::vector<std::string> summaries;
  std::optional<std::string> report_out;
  std::optional<double> r_orig, r_mdm, r_tsm;
  std::string instance = "-";
  report->add_option("--summary", summaries, "summary.csv files");
  report->add_option("--out", report_out, "output CSV");
  report->add_option("--original", r_orig, "average propagated delay, original schedule");
  report->add_option("--mdm", r_mdm, "average propagated delay, MDM");
  report->add_option("--tsm", r_tsm, "average propagated delay, TSM");
  report->add_option("--instance", instance, "instance label for --original/--mdm/--tsm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_generate(gen_o);
    if (*solve) return cmd_solve(solve_o, solve_sc);
    if (*eval) return cmd_evaluate(eval_o, eval_sc, solution, mdm_file);
    if (*bench) return cmd_benchmark(bench_o, bench_sc, sweep, reps, worker_counts);
    if (*report) return cmd_report(summaries, report_out, r_orig, r_mdm, r_tsm, instance);
  } catch (const UsageError& e) {
    std::cerr << "fsched: " << e.what() << "\n";
    return kUsage;
  } catch (const SolverError& e) {
    std::cerr << "fsched: solver failure: " << e.what() << "\n";
    return kSolver;
  } catch (const DeskScaleError& e) {
    std::cerr << "fsched: " << e.what() << "\n";
    return kSolver;
  } catch (const DataError& e) {
    std::cerr << "fsched: " << e.what() << "\n";
    return kData;
  } catch (const ScheduleError& e) {
    std::cerr << "fsched: bad schedule: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "fsched: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
