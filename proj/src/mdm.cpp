#include "fsched/mdm.hpp"

#include <cmath>

#include "fsched/lp.hpp"
#include "fsched/recourse.hpp"

namespace fsched {

std::vector<double> mean_propagated_delays(const ConnectionNetwork& net, const MeanScenario& mean) {
  std::vector<double> d(net.num_flights(), 0.0);
  for (int t = 0; t < net.num_tails(); ++t) {
    const auto& route = net.original_route(t);
    const auto along = propagate_delays<double>(net, route, mean.primary_delays);
    for (std::size_t k = 0; k < route.size(); ++k) d[route[k]] = along[k];
  }
  return d;
}

MdmSolution solve_mdm(const ConnectionNetwork& net, std::span<const Scenario> scenarios, Minutes budget,
                      Minutes limit) {
  if (budget < 0 || limit < 0) throw std::invalid_argument("budget and reschedule limit must be nonnegative");
  const int F = net.num_flights();
  MdmSolution out;
  out.mean_prop_delays = mean_propagated_delays(net, mean_scenario(scenarios));

  lp::LinearProgram model;
  for (int f = 0; f < F; ++f) model.add_variable(net.flights()[f].reschedule_cost, 0.0, static_cast<double>(limit), true);
  for (int f = 0; f < F; ++f) model.add_variable(net.flights()[f].delay_cost, 0.0, lp::kInfinity);
  for (const Arc& a : net.arcs()) {
    if (!a.original) continue;
    const lp::Entry row[] = {{a.from, 1.0}, {a.to, -1.0}};
    model.add_row(row, lp::Sense::kLessEqual, static_cast<double>(a.slack));
  }
  std::vector<lp::Entry> all;
  for (int f = 0; f < F; ++f) all.push_back({f, 1.0});
  model.add_row(all, lp::Sense::kLessEqual, static_cast<double>(budget));
  for (int f = 0; f < F; ++f) {
    const lp::Entry row[] = {{f, 1.0}, {F + f, 1.0}};
    model.add_row(row, lp::Sense::kGreaterEqual, out.mean_prop_delays[f]);
  }

  const auto mip = lp::solve_mip(model);
  if (mip.status != lp::Status::kOptimal)
    throw SolverError("mean delay model ended with status " + lp::to_string(mip.status));
  for (int f = 0; f < F; ++f) {
    out.x.push_back(std::llround(mip.values[f]));
    const double z = std::max(0.0, out.mean_prop_delays[f] - static_cast<double>(out.x[f]));
    out.excess.push_back(z);
    out.objective += net.flights()[f].reschedule_cost * static_cast<double>(out.x[f]) + net.flights()[f].delay_cost * z;
  }
  return out;
}

}  // namespace fsched
