#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "fsched/benders.hpp"
#include "fsched/evaluation.hpp"
#include "fsched/pricing.hpp"
#include "fsched/scenario.hpp"

namespace fsched {

struct RunConfig {
  std::string schedule;  // path, relative to the config file when loaded from one
  DelayConfig delay;
  double budget_fraction = 0.5;
  Minutes reschedule_limit = 30;
  CutMode cut_mode = CutMode::kMulti;
  ColumnStrategy columns;
  bool dominance = true;
  int workers = 30;
  double epsilon = 1e-6;
  int max_iterations = 30;
  bool caching = false;
  std::uint64_t test_seed = 1001;
  int test_count = 100;
  std::uint64_t enumeration_limit = 100000;

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
  RecourseOptions recourse_options() const;
  TsmOptions tsm_options(Minutes budget) const;
  SimulationConfig simulation_config() const;
};

/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& config);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace fsched
