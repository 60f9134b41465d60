#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsched/network.hpp"
#include "fsched/recourse.hpp"
#include "fsched/scenario.hpp"

namespace fsched {

struct SimulationConfig {
  DelayConfig test;                  // count and seed of the test scenarios
  std::uint64_t training_seed = 0;   // must differ from test.seed
  Minutes reschedule_limit = 30;
  RecourseOptions recourse;
  int workers = 1;
};

struct RelativeReduction {
  std::optional<double> over_original;  // 100 (Original - TSM) / Original
  std::optional<double> over_mdm;       // 100 (MDM - TSM) / MDM
};

/// Percent reductions; a non-positive denominator gives no value.
RelativeReduction compute_metrics(double original, double mdm, double tsm);

struct ComparisonReport {
  // Total propagated delay in minutes per test scenario.
  std::vector<double> original;
  std::vector<double> mdm;
  std::vector<double> tsm;
  double avg_original = 0.0;
  double avg_mdm = 0.0;
  double avg_tsm = 0.0;
  RelativeReduction rr;
};

/// Test scenarios drawn on the unadjusted schedule's flights.
std::vector<Scenario> test_scenarios(const ConnectionNetwork& net, const SimulationConfig& config);

/// Minimum total propagated delay (sum of z_f, x = 0) after shifting the
/// schedule by `shift` and rebuilding its network.
double simulate_delay(const ConnectionNetwork& net, std::span<const Minutes> shift, const Scenario& scenario,
                      const SimulationConfig& config);

/// Original (x = 0), MDM and TSM variants over the same test scenarios.
ComparisonReport run_simulation(const ConnectionNetwork& net, std::span<const Minutes> x_mdm,
                                std::span<const Minutes> x_tsm, const SimulationConfig& config);

std::string scenario_csv(const ComparisonReport& report);
std::string summary_header();
std::string summary_row(const std::string& instance, const ComparisonReport& report);

}  // namespace fsched
