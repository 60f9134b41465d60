#pragma once

#include <span>
#include <vector>

#include "fsched/network.hpp"
#include "fsched/scenario.hpp"

namespace fsched {

struct MdmSolution {
  std::vector<Minutes> x;
  std::vector<double> excess;             // z_f against the mean scenario
  std::vector<double> mean_prop_delays;   // mean delays propagated on original routes
  double objective = 0.0;
};

/// Propagates the mean primary delays along each tail's original route.
std::vector<double> mean_propagated_delays(const ConnectionNetwork& net, const MeanScenario& mean);

/// Deterministic reschedule against the mean scenario:
/// min sum c x + e z  s.t. connectivity, budget, z >= d_mean - x, z >= 0.
MdmSolution solve_mdm(const ConnectionNetwork& net, std::span<const Scenario> scenarios, Minutes budget,
                      Minutes limit);

}  // namespace fsched
