#pragma once

#include <span>
#include <string>
#include <vector>

#include "fsched/lp.hpp"
#include "fsched/network.hpp"
#include "fsched/recourse.hpp"
#include "fsched/scenario.hpp"

namespace fsched {

enum class CutMode { kMulti, kSingle };

std::string to_string(CutMode mode);
CutMode parse_cut_mode(const std::string& name);

/// First-stage model: integer x in [0, l], x_i <= s_ij + x_j on original
/// connections, sum x <= B, plus eta variables bounded by optimality cuts.
class MasterProblem {
 public:
  MasterProblem(const ConnectionNetwork& net, Minutes budget, Minutes limit, int eta_count);

  /// eta_k + beta x >= alpha
  void add_cut(int eta, double alpha, std::span<const double> beta);

  struct Solution {
    std::vector<Minutes> x;
    std::vector<double> eta;
    double objective = 0.0;
  };
  /// Solves as a MIP from scratch. Without eta the recourse estimate is
  /// dropped from the objective.
  Solution solve(bool with_eta = true) const;

  bool is_feasible(std::span<const Minutes> x) const;
  double first_stage_cost(std::span<const Minutes> x) const;
  int num_cuts() const { return cuts_; }
  int eta_count() const { return eta_count_; }
  const lp::LinearProgram& model() const { return lp_; }

 private:
  const ConnectionNetwork& net_;
  Minutes budget_;
  Minutes limit_;
  int eta_count_;
  int cuts_ = 0;
  lp::LinearProgram lp_;
};

/// One recourse LP per scenario at the same reschedule. The serial and
/// parallel versions return identical results in scenario order.
std::vector<RecourseLpResult> solve_scenarios_serial(const ConnectionNetwork& net, std::span<const Scenario> scenarios,
                                                     std::span<const double> shift, const RecourseOptions& options,
                                                     std::span<ColumnCache> caches = {});
std::vector<RecourseLpResult> solve_scenarios_parallel(const ConnectionNetwork& net,
                                                       std::span<const Scenario> scenarios,
                                                       std::span<const double> shift, const RecourseOptions& options,
                                                       int workers, std::span<ColumnCache> caches = {});

struct TsmOptions {
  Minutes budget = 0;
  Minutes reschedule_limit = 30;
  CutMode cut_mode = CutMode::kMulti;
  RecourseOptions recourse;
  int workers = 1;
  double epsilon = 1e-6;  // relative to max(1, |UB|)
  int max_iterations = 30;
  bool caching = false;
  bool timing = true;  // false: record zero wall times
};

struct IterationRecord {
  int iteration = 0;
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
  int cuts = 0;
  double seconds = 0.0;
};

struct TsmResult {
  std::vector<Minutes> x;  // incumbent (best UB)
  double upper = 0.0;
  double lower = 0.0;
  int iterations = 0;
  int cuts = 0;
  double seconds = 0.0;
  bool converged = false;
  std::vector<IterationRecord> trace;
};

/// L-shaped method over the LP-relaxed recourse.
TsmResult solve_tsm(const ConnectionNetwork& net, std::span<const Scenario> scenarios, const TsmOptions& options);

/// c x + sum_w p_w phi_LP(x, w)
double relaxed_objective(const ConnectionNetwork& net, std::span<const Scenario> scenarios,
                         std::span<const Minutes> x, const RecourseOptions& options, int workers = 1);

/// 100 (UB - LB) / UB; 0 when the bounds meet.
double compute_gap(double upper, double lower);

struct OptGap {
  double upper = 0.0;  // c x* + sum_w p_w phi_MIP(x*, w)
  double lower = 0.0;
  double percent = 0.0;
};
OptGap compute_opt_gap(const ConnectionNetwork& net, std::span<const Scenario> scenarios, const TsmResult& run,
                       const RecourseOptions& options, int workers = 1);

std::string trace_csv(const TsmResult& run);

}  // namespace fsched
