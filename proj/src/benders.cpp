#include "fsched/benders.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>

#include "fsched/csv.hpp"

namespace fsched {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::vector<double> as_double(std::span<const Minutes> x) { return {x.begin(), x.end()}; }

double cut_value(double alpha, std::span<const double> beta, std::span<const Minutes> x) {
  double v = alpha;
  for (std::size_t f = 0; f < beta.size(); ++f) v -= beta[f] * static_cast<double>(x[f]);
  return v;
}

}  // namespace

std::string to_string(CutMode mode) { return mode == CutMode::kMulti ? "multi" : "single"; }

CutMode parse_cut_mode(const std::string& name) {
  if (name == "multi") return CutMode::kMulti;
  if (name == "single") return CutMode::kSingle;
  throw std::invalid_argument("unknown cut mode '" + name + "' (multi, single)");
}

MasterProblem::MasterProblem(const ConnectionNetwork& net, Minutes budget, Minutes limit, int eta_count)
    : net_(net), budget_(budget), limit_(limit), eta_count_(eta_count) {
  if (budget < 0 || limit < 0) throw std::invalid_argument("budget and reschedule limit must be nonnegative");
  const int F = net.num_flights();
  for (int f = 0; f < F; ++f)
    lp_.add_variable(net.flights()[f].reschedule_cost, 0.0, static_cast<double>(limit), true, "x_" + net.flights()[f].id);
  for (int k = 0; k < eta_count; ++k) lp_.add_variable(1.0, -lp::kInfinity, lp::kInfinity, false, "eta_" + std::to_string(k));
  for (const Arc& a : net.arcs()) {
    if (!a.original) continue;
    const lp::Entry row[] = {{a.from, 1.0}, {a.to, -1.0}};
    lp_.add_row(row, lp::Sense::kLessEqual, static_cast<double>(a.slack));
  }
  std::vector<lp::Entry> all;
  for (int f = 0; f < F; ++f) all.push_back({f, 1.0});
  lp_.add_row(all, lp::Sense::kLessEqual, static_cast<double>(budget), "budget");
}

void MasterProblem::add_cut(int eta, double alpha, std::span<const double> beta) {
  std::vector<lp::Entry> row{{net_.num_flights() + eta, 1.0}};
  for (std::size_t f = 0; f < beta.size(); ++f)
    if (beta[f] != 0.0) row.push_back({static_cast<int>(f), beta[f]});
  lp_.add_row(row, lp::Sense::kGreaterEqual, alpha, "cut_" + std::to_string(cuts_++));
}

MasterProblem::Solution MasterProblem::solve(bool with_eta) const {
  const int F = net_.num_flights();
  lp::LinearProgram model = lp_;
  if (!with_eta)
    for (int k = 0; k < eta_count_; ++k) {
      model.set_cost(F + k, 0.0);
      model.set_bounds(F + k, 0.0, 0.0);
    }
  const auto mip = lp::solve_mip(model);
  if (mip.status != lp::Status::kOptimal)
    throw SolverError("master problem ended with status " + lp::to_string(mip.status));
  Solution out;
  out.objective = mip.objective;
  for (int f = 0; f < F; ++f) out.x.push_back(std::llround(mip.values[f]));
  out.eta.assign(mip.values.begin() + F, mip.values.end());
  return out;
}

bool MasterProblem::is_feasible(std::span<const Minutes> x) const {
  if (static_cast<int>(x.size()) != net_.num_flights()) return false;
  Minutes total = 0;
  for (Minutes v : x) {
    if (v < 0 || v > limit_) return false;
    total += v;
  }
  if (total > budget_) return false;
  for (const Arc& a : net_.arcs())
    if (a.original && x[a.from] > a.slack + x[a.to]) return false;
  return true;
}

double MasterProblem::first_stage_cost(std::span<const Minutes> x) const {
  double c = 0.0;
  for (int f = 0; f < net_.num_flights(); ++f) c += net_.flights()[f].reschedule_cost * static_cast<double>(x[f]);
  return c;
}

std::vector<RecourseLpResult> solve_scenarios_serial(const ConnectionNetwork& net, std::span<const Scenario> scenarios,
                                                     std::span<const double> shift, const RecourseOptions& options,
                                                     std::span<ColumnCache> caches) {
  std::vector<RecourseLpResult> out;
  out.reserve(scenarios.size());
  for (std::size_t w = 0; w < scenarios.size(); ++w)
    out.push_back(solve_recourse_lp(net, scenarios[w], shift, options, caches.empty() ? nullptr : &caches[w]));
  return out;
}

std::vector<RecourseLpResult> solve_scenarios_parallel(const ConnectionNetwork& net,
                                                       std::span<const Scenario> scenarios,
                                                       std::span<const double> shift, const RecourseOptions& options,
                                                       int workers, std::span<ColumnCache> caches) {
  const int n = static_cast<int>(scenarios.size());
  std::vector<RecourseLpResult> out(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, workers))
  for (int w = 0; w < n; ++w) {
    try {
      out[w] = solve_recourse_lp(net, scenarios[w], shift, options, caches.empty() ? nullptr : &caches[w]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

TsmResult solve_tsm(const ConnectionNetwork& net, std::span<const Scenario> scenarios, const TsmOptions& options) {
  if (scenarios.empty()) throw std::invalid_argument("no scenarios");
  if (options.max_iterations < 1) throw std::invalid_argument("maxIter must be at least 1");
  const auto start = Clock::now();
  const int S = static_cast<int>(scenarios.size());
  const bool multi = options.cut_mode == CutMode::kMulti;
  MasterProblem mp(net, options.budget, options.reschedule_limit, multi ? S : 1);
  std::vector<ColumnCache> caches(options.caching ? S : 0);

  // Without eta the master only sees reschedule cost; with c >= 0 this is
  // x = 0, which is also the starting point used below.
  mp.solve(false);
  std::vector<Minutes> x(net.num_flights(), 0);
  std::vector<double> eta;

  TsmResult run;
  run.upper = std::numeric_limits<double>::infinity();
  run.lower = -std::numeric_limits<double>::infinity();
  run.x = x;
  for (int k = 0; k < options.max_iterations; ++k) {
    const auto shift = as_double(x);
    const auto results = options.workers > 1
                             ? solve_scenarios_parallel(net, scenarios, shift, options.recourse, options.workers, caches)
                             : solve_scenarios_serial(net, scenarios, shift, options.recourse, caches);
    double expected = 0.0;
    for (int w = 0; w < S; ++w) expected += scenarios[w].probability * results[w].objective;
    const double ub = mp.first_stage_cost(x) + expected;
    if (ub < run.upper) {
      run.upper = ub;
      run.x = x;
    }

    if (multi) {
      for (int w = 0; w < S; ++w) {
        const auto cut = build_cut(results[w], scenarios[w].probability, w);
        const double need = cut_value(cut.alpha, cut.beta, x);
        if (eta.empty() || eta[w] < need - 1e-9 * (1.0 + std::abs(need))) mp.add_cut(w, cut.alpha, cut.beta);
      }
    } else {
      double alpha = 0.0;
      std::vector<double> beta(net.num_flights(), 0.0);
      for (int w = 0; w < S; ++w) {
        const auto cut = build_cut(results[w], scenarios[w].probability, w);
        alpha += cut.alpha;
        for (int f = 0; f < net.num_flights(); ++f) beta[f] += cut.beta[f];
      }
      const double need = cut_value(alpha, beta, x);
      if (eta.empty() || eta[0] < need - 1e-9 * (1.0 + std::abs(need))) mp.add_cut(0, alpha, beta);
    }

    const auto sol = mp.solve();
    run.lower = std::max(run.lower, sol.objective);
    x = sol.x;
    eta = sol.eta;
    run.iterations = k + 1;
    run.cuts = mp.num_cuts();
    run.trace.push_back({k + 1, run.lower, run.upper, compute_gap(run.upper, run.lower), run.cuts,
                         options.timing ? elapsed(start) : 0.0});
    if (run.upper - run.lower <= options.epsilon * std::max(1.0, std::abs(run.upper))) {
      run.converged = true;
      break;
    }
  }
  run.seconds = options.timing ? elapsed(start) : 0.0;
  return run;
}

double relaxed_objective(const ConnectionNetwork& net, std::span<const Scenario> scenarios,
                         std::span<const Minutes> x, const RecourseOptions& options, int workers) {
  const auto shift = as_double(x);
  const auto results = workers > 1 ? solve_scenarios_parallel(net, scenarios, shift, options, workers)
                                   : solve_scenarios_serial(net, scenarios, shift, options);
  double total = 0.0;
  for (int f = 0; f < net.num_flights(); ++f) total += net.flights()[f].reschedule_cost * shift[f];
  for (std::size_t w = 0; w < scenarios.size(); ++w) total += scenarios[w].probability * results[w].objective;
  return total;
}

double compute_gap(double upper, double lower) {
  if (upper - lower <= 0.0) return 0.0;
  if (upper == 0.0) return std::numeric_limits<double>::infinity();
  return 100.0 * (upper - lower) / upper;
}

OptGap compute_opt_gap(const ConnectionNetwork& net, std::span<const Scenario> scenarios, const TsmResult& run,
                       const RecourseOptions& options, int workers) {
  const auto shift = as_double(run.x);
  const int n = static_cast<int>(scenarios.size());
  std::vector<double> phi(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, workers))
  for (int w = 0; w < n; ++w) {
    try {
      phi[w] = solve_recourse_mip(net, scenarios[w], shift, options).objective;
    } catch (...) {
      errors[w] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  OptGap out;
  for (int f = 0; f < net.num_flights(); ++f) out.upper += net.flights()[f].reschedule_cost * shift[f];
  for (int w = 0; w < n; ++w) out.upper += scenarios[w].probability * phi[w];
  out.lower = run.lower;
  out.percent = compute_gap(out.upper, out.lower);
  return out;
}

std::string trace_csv(const TsmResult& run) {
  std::string out = csv::row({"iter", "LB", "UB", "gap_pct", "cuts", "wall_seconds"});
  for (const auto& r : run.trace)
    out += csv::row({std::to_string(r.iteration), csv::number(r.lower), csv::number(r.upper), csv::number(r.gap),
                     std::to_string(r.cuts), csv::number(r.seconds)});
  return out;
}

}  // namespace fsched
