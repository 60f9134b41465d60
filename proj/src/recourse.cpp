#include "fsched/recourse.hpp"

#include <algorithm>
#include <cmath>

#include "fsched/lp.hpp"

namespace fsched {

namespace {

using lp::Entry;
using lp::Sense;

// Set-partitioning recourse LP over a growing route set. Rows: one per
// tail, one per flight, then the delay links z_f - sum d_rf y_r >= -x_f.
class RestrictedMaster {
 public:
  RestrictedMaster(const ConnectionNetwork& net, std::span<const double> shift, bool integer_routes = false)
      : net_(net), integer_(integer_routes) {
    const int T = net.num_tails(), F = net.num_flights();
    for (int f = 0; f < F; ++f) lp_.add_variable(net.flights()[f].delay_cost, 0.0, lp::kInfinity);
    for (int t = 0; t < T; ++t) lp_.add_row({}, Sense::kEqual, 1.0);
    for (int f = 0; f < F; ++f) lp_.add_row({}, Sense::kEqual, 1.0);
    for (int f = 0; f < F; ++f) {
      const Entry z{f, 1.0};
      lp_.add_row({&z, 1}, Sense::kGreaterEqual, -shift[f]);
    }
  }

  bool add(const Route& r) {
    if (!keys_.emplace(r.tail, r.flights).second) return false;
    const int T = net_.num_tails(), F = net_.num_flights();
    std::vector<Entry> col;
    col.push_back({r.tail, 1.0});
    for (std::size_t k = 0; k < r.flights.size(); ++k) {
      col.push_back({T + r.flights[k], 1.0});
      if (r.prop_delays[k] != 0) col.push_back({T + F + r.flights[k], -static_cast<double>(r.prop_delays[k])});
    }
    lp_.add_column(0.0, col, 0.0, integer_ ? 1.0 : lp::kInfinity, integer_);
    routes_.push_back(r);
    return true;
  }

  lp::LpSolution solve(const lp::Basis* warm) const {
    auto sol = lp::solve_lp(lp_, warm);
    if (sol.status != lp::Status::kOptimal)
      throw SolverError("recourse LP ended with status " + lp::to_string(sol.status));
    return sol;
  }

  DualPrices duals(const lp::LpSolution& sol) const {
    const int T = net_.num_tails(), F = net_.num_flights();
    DualPrices d;
    d.tail.assign(sol.duals.begin(), sol.duals.begin() + T);
    d.flight.assign(sol.duals.begin() + T, sol.duals.begin() + T + F);
    d.delay.assign(sol.duals.begin() + T + F, sol.duals.begin() + T + 2 * F);
    // Clamp simplex round-off into the dual box 0 <= pi_f <= e_f.
    for (int f = 0; f < F; ++f) d.delay[f] = std::clamp(d.delay[f], 0.0, net_.flights()[f].delay_cost);
    return d;
  }

  const lp::LinearProgram& lp() const { return lp_; }
  const std::vector<Route>& routes() const { return routes_; }

 private:
  const ConnectionNetwork& net_;
  bool integer_;
  lp::LinearProgram lp_;
  std::vector<Route> routes_;
  std::set<std::pair<int, std::vector<int>>> keys_;
};

std::vector<Route> all_routes(const ConnectionNetwork& net, const Scenario& scenario, std::uint64_t limit) {
  const std::uint64_t total = count_paths(net);
  if (total > limit)
    throw DeskScaleError("instance has " + std::to_string(total) + " aircraft routes, above the enumeration limit of " +
                         std::to_string(limit));
  std::vector<Route> out;
  for (int t = 0; t < net.num_tails(); ++t) {
    for (auto& flights : enumerate_tail_routes(net, t, limit)) {
      Route r;
      r.tail = t;
      r.prop_delays = propagate_along_route(net, flights, scenario.primary_delays);
      r.flights = std::move(flights);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<double> excess_from_routes(const ConnectionNetwork& net, std::span<const Route> routes,
                                       std::span<const double> shift) {
  std::vector<double> z(net.num_flights(), 0.0);
  for (const Route& r : routes)
    for (std::size_t k = 0; k < r.flights.size(); ++k)
      z[r.flights[k]] = std::max(0.0, static_cast<double>(r.prop_delays[k]) - shift[r.flights[k]]);
  return z;
}

}  // namespace

int ColumnCache::add(std::span<const Route> routes) {
  int added = 0;
  for (const Route& r : routes) {
    if (!keys_.emplace(r.tail, r.flights).second) continue;
    routes_.push_back(r);
    ++added;
  }
  return added;
}

std::vector<Route> initial_columns(const ConnectionNetwork& net, const Scenario& scenario) {
  std::vector<Route> out;
  for (int t = 0; t < net.num_tails(); ++t) {
    Route r;
    r.tail = t;
    r.flights = net.original_route(t);
    r.prop_delays = propagate_along_route(net, r.flights, scenario.primary_delays);
    out.push_back(std::move(r));
  }
  return out;
}

RecourseLpResult solve_recourse_lp(const ConnectionNetwork& net, const Scenario& scenario,
                                   std::span<const double> shift, const RecourseOptions& options,
                                   ColumnCache* cache) {
  if (static_cast<int>(shift.size()) != net.num_flights())
    throw std::invalid_argument("reschedule vector size does not match the flight count");
  RestrictedMaster master(net, shift);
  for (const Route& r : initial_columns(net, scenario)) master.add(r);
  if (cache)
    for (const Route& r : cache->routes()) master.add(r);
  if (options.enumerate)
    for (const Route& r : all_routes(net, scenario, options.enumeration_limit)) master.add(r);

  RecourseLpResult result;
  lp::LpSolution sol = master.solve(nullptr);
  DualPrices duals = master.duals(sol);

  if (!options.enumerate) {
    const PricingOptions configured{options.strategy, options.dominance};
    const PricingOptions certify{{ColumnMode::kBestPaths, options.strategy.count}, options.dominance};
    std::vector<Route> fresh;
    for (;;) {
      ++result.pricing_rounds;
      int added = 0;
      fresh.clear();
      for (int t = 0; t < net.num_tails(); ++t) {
        auto priced = generate_columns(net, t, duals, scenario.primary_delays, configured);
        for (Route& r : priced.routes)
          if (master.add(r)) {
            ++added;
            fresh.push_back(std::move(r));
          }
      }
      if (added == 0 && options.strategy.mode == ColumnMode::kFirstPaths) {
        // First-paths cannot certify optimality on its own.
        for (int t = 0; t < net.num_tails(); ++t) {
          auto priced = generate_columns(net, t, duals, scenario.primary_delays, certify);
          for (Route& r : priced.routes)
            if (master.add(r)) {
              ++added;
              fresh.push_back(std::move(r));
            }
        }
      }
      if (added == 0) break;
      result.generated_columns += added;
      if (cache) cache->add(fresh);
      sol = master.solve(&sol.basis);
      duals = master.duals(sol);
    }
  }

  result.objective = sol.objective;
  result.duals = std::move(duals);
  result.columns = master.routes();
  const int F = net.num_flights();
  result.excess.assign(sol.primal.begin(), sol.primal.begin() + F);
  result.weights.assign(sol.primal.begin() + F, sol.primal.end());
  return result;
}

RecourseMipResult solve_recourse_mip(const ConnectionNetwork& net, const Scenario& scenario,
                                     std::span<const double> shift, const RecourseOptions& options) {
  RecourseOptions lp_options = options;
  lp_options.enumerate = false;
  const RecourseLpResult relaxed = solve_recourse_lp(net, scenario, shift, lp_options);

  RecourseMipResult out;
  bool integral = options.integral_lp_shortcut;
  for (std::size_t i = 0; integral && i < relaxed.weights.size(); ++i) {
    const double w = relaxed.weights[i];
    if (std::abs(w - std::round(w)) > 1e-6) {
      integral = false;
      break;
    }
    if (w > 0.5) out.routes.push_back(relaxed.columns[i]);
  }
  if (!integral) {
    out.routes.clear();
    RestrictedMaster master(net, shift, true);
    for (const Route& r : all_routes(net, scenario, options.enumeration_limit)) master.add(r);
    const auto mip = lp::solve_mip(master.lp());
    if (mip.status != lp::Status::kOptimal)
      throw SolverError("integer recourse ended with status " + lp::to_string(mip.status));
    const int F = net.num_flights();
    for (std::size_t i = 0; i < master.routes().size(); ++i)
      if (mip.values[F + i] > 0.5) out.routes.push_back(master.routes()[i]);
  } else {
    out.from_lp = true;
  }
  std::sort(out.routes.begin(), out.routes.end(), [](const Route& a, const Route& b) { return a.tail < b.tail; });
  out.excess = excess_from_routes(net, out.routes, shift);
  for (int f = 0; f < net.num_flights(); ++f) out.objective += net.flights()[f].delay_cost * out.excess[f];
  return out;
}

OptimalityCut build_cut(const RecourseLpResult& result, double probability, int scenario) {
  OptimalityCut cut;
  cut.scenario = scenario;
  double sum = 0.0;
  for (double mu : result.duals.tail) sum += mu;
  for (double nu : result.duals.flight) sum += nu;
  cut.alpha = probability * sum;
  cut.beta.resize(result.duals.delay.size());
  for (std::size_t f = 0; f < cut.beta.size(); ++f) cut.beta[f] = probability * result.duals.delay[f];
  return cut;
}

}  // namespace fsched
