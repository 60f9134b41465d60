#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsched/network.hpp"

namespace fsched {

/// One realization of primary delays, indexed by flight.
struct Scenario {
  double probability = 1.0;
  std::vector<Minutes> primary_delays;
};

/// Probability-weighted average of a scenario set. Not rounded.
struct MeanScenario {
  std::vector<double> primary_delays;
};

enum class Distribution { kExponential, kLogNormal, kTruncatedNormal, kGamma };
enum class SelectionStrategy { kHub, kRush };

/// Parameters are the mean and standard deviation of the delay itself
/// (for truncated normal: of the normal before truncation at zero).
struct DelayConfig {
  Distribution distribution = Distribution::kLogNormal;
  double mean = 15.0;
  double sd = 15.0;
  SelectionStrategy strategy = SelectionStrategy::kHub;
  int scenario_count = 30;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on non-positive mean/sd/count.
  void validate() const;
};

std::string to_string(Distribution d);
std::string to_string(SelectionStrategy s);
Distribution parse_distribution(const std::string& name);
SelectionStrategy parse_selection_strategy(const std::string& name);

/// Hub: flights departing the busiest airport (ties to the smallest code).
/// Rush: flights departing in the first quarter of the schedule window.
std::vector<int> select_flights(const ConnectionNetwork& net, SelectionStrategy strategy);

/// One rounded draw; depends only on (config, scenario index, flight index).
Minutes sample_delay(const DelayConfig& config, std::uint64_t scenario, std::uint64_t flight);

/// `scenario_count` equiprobable scenarios; flights outside `selected`
/// get zero primary delay.
std::vector<Scenario> sample_scenarios(const DelayConfig& config, std::span<const int> selected, int num_flights);

MeanScenario mean_scenario(std::span<const Scenario> scenarios);

/// floor(fraction * expected total primary delay).
Minutes compute_budget(std::span<const Scenario> scenarios, double fraction);

/// Kahan-compensated sum of probabilities.
double total_probability(std::span<const Scenario> scenarios);

nlohmann::json scenarios_to_json(const ConnectionNetwork& net, std::span<const Scenario> scenarios);
/// Reads a scenario set written by scenarios_to_json, mapping delays onto
/// `net`'s flight order by id.
std::vector<Scenario> scenarios_from_json(const ConnectionNetwork& net, const nlohmann::json& doc);

}  // namespace fsched
