#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fsched/network.hpp"
#include "fsched/pricing.hpp"
#include "fsched/scenario.hpp"

namespace fsched {

/// An LP or MIP solve that did not reach a proven optimum.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The instance has more aircraft routes than exhaustive enumeration allows.
class DeskScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RecourseOptions {
  ColumnStrategy strategy;
  bool dominance = true;
  /// Load every route up front instead of pricing (benchmark baseline).
  bool enumerate = false;
  std::uint64_t enumeration_limit = 100000;
  /// Accept an integral LP optimum as the integer recourse optimum.
  bool integral_lp_shortcut = true;
};

struct RecourseLpResult {
  double objective = 0.0;
  DualPrices duals;
  std::vector<Route> columns;   // every column of the final restricted LP
  std::vector<double> weights;  // y_r, aligned with columns
  std::vector<double> excess;   // z_f
  int pricing_rounds = 0;
  int generated_columns = 0;
};

struct OptimalityCut {
  int scenario = 0;
  double alpha = 0.0;
  std::vector<double> beta;
};

/// Routes kept across outer iterations for one scenario. Column data does
/// not depend on the first-stage reschedule, so reuse is always valid.
class ColumnCache {
 public:
  /// Returns the number of routes that were new.
  int add(std::span<const Route> routes);
  const std::vector<Route>& routes() const { return routes_; }
  std::size_t size() const { return routes_.size(); }

 private:
  std::vector<Route> routes_;
  std::set<std::pair<int, std::vector<int>>> keys_;
};

/// Each tail's original rotation with delays propagated for `scenario`.
std::vector<Route> initial_columns(const ConnectionNetwork& net, const Scenario& scenario);

/// LP relaxation of the recourse problem for reschedule `shift`, solved by
/// column generation. Never infeasible for valid input.
RecourseLpResult solve_recourse_lp(const ConnectionNetwork& net, const Scenario& scenario,
                                   std::span<const double> shift, const RecourseOptions& options,
                                   ColumnCache* cache = nullptr);

struct RecourseMipResult {
  double objective = 0.0;
  std::vector<Route> routes;   // one per tail
  std::vector<double> excess;  // z_f
  bool from_lp = false;        // the LP optimum was already integral
};

/// Integer recourse optimum. Tries the LP first and accepts it when the
/// route weights are integral; otherwise enumerates every route and runs
/// branch-and-bound. Throws DeskScaleError when enumeration would exceed
/// options.enumeration_limit.
RecourseMipResult solve_recourse_mip(const ConnectionNetwork& net, const Scenario& scenario,
                                     std::span<const double> shift, const RecourseOptions& options);

/// alpha = p (sum mu + sum nu), beta_f = p pi_f; the cut reads
/// eta >= alpha - beta x.
OptimalityCut build_cut(const RecourseLpResult& result, double probability, int scenario);

}  // namespace fsched
