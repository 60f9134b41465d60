#include "fsched/run_config.hpp"

#include <set>

#include "fsched/schedule_io.hpp"

namespace fsched {

namespace {

const std::set<std::string> kKeys = {
    "schedule", "distribution", "mean",          "sd",       "strategy", "scenarios",
    "seed",     "budgetFraction", "rescheduleLimit", "cutMode", "columnStrategy", "columnCount",
    "dominance", "workers",      "epsilon",       "maxIter",  "caching",  "testSeed",
    "testCount", "enumerationLimit"};

template <typename T>
void read(const nlohmann::json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc.at(key).get<T>();
}

}  // namespace

void RunConfig::validate() const {
  delay.validate();
  if (!(budget_fraction > 0.0)) throw std::invalid_argument("budgetFraction must be positive");
  if (reschedule_limit < 0) throw std::invalid_argument("rescheduleLimit must be nonnegative");
  if (columns.count < 1) throw std::invalid_argument("columnCount must be at least 1");
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  if (max_iterations < 1) throw std::invalid_argument("maxIter must be at least 1");
  if (test_count < 1) throw std::invalid_argument("testCount must be at least 1");
  if (test_seed == delay.seed) throw std::invalid_argument("testSeed must differ from seed");
}

RecourseOptions RunConfig::recourse_options() const {
  RecourseOptions r;
  r.strategy = columns;
  r.dominance = dominance;
  r.enumeration_limit = enumeration_limit;
  return r;
}

TsmOptions RunConfig::tsm_options(Minutes budget) const {
  TsmOptions o;
  o.budget = budget;
  o.reschedule_limit = reschedule_limit;
  o.cut_mode = cut_mode;
  o.recourse = recourse_options();
  o.workers = workers;
  o.epsilon = epsilon;
  o.max_iterations = max_iterations;
  o.caching = caching;
  return o;
}

SimulationConfig RunConfig::simulation_config() const {
  SimulationConfig s;
  s.test = delay;
  s.test.seed = test_seed;
  s.test.scenario_count = test_count;
  s.training_seed = delay.seed;
  s.reschedule_limit = reschedule_limit;
  s.recourse = recourse_options();
  s.workers = workers;
  return s;
}

RunConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw DataError("config must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (!kKeys.count(key)) throw DataError("unknown config key '" + key + "'");
  RunConfig c;
  try {
    read(doc, "schedule", c.schedule);
    if (doc.contains("distribution")) c.delay.distribution = parse_distribution(doc.at("distribution").get<std::string>());
    read(doc, "mean", c.delay.mean);
    read(doc, "sd", c.delay.sd);
    if (doc.contains("strategy")) c.delay.strategy = parse_selection_strategy(doc.at("strategy").get<std::string>());
    read(doc, "scenarios", c.delay.scenario_count);
    read(doc, "seed", c.delay.seed);
    read(doc, "budgetFraction", c.budget_fraction);
    read(doc, "rescheduleLimit", c.reschedule_limit);
    if (doc.contains("cutMode")) c.cut_mode = parse_cut_mode(doc.at("cutMode").get<std::string>());
    if (doc.contains("columnStrategy")) c.columns.mode = parse_column_mode(doc.at("columnStrategy").get<std::string>());
    read(doc, "columnCount", c.columns.count);
    read(doc, "dominance", c.dominance);
    read(doc, "workers", c.workers);
    read(doc, "epsilon", c.epsilon);
    read(doc, "maxIter", c.max_iterations);
    read(doc, "caching", c.caching);
    read(doc, "testSeed", c.test_seed);
    read(doc, "testCount", c.test_count);
    read(doc, "enumerationLimit", c.enumeration_limit);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad config value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
  return {{"schedule", c.schedule},
          {"distribution", to_string(c.delay.distribution)},
          {"mean", c.delay.mean},
          {"sd", c.delay.sd},
          {"strategy", to_string(c.delay.strategy)},
          {"scenarios", c.delay.scenario_count},
          {"seed", c.delay.seed},
          {"budgetFraction", c.budget_fraction},
          {"rescheduleLimit", c.reschedule_limit},
          {"cutMode", to_string(c.cut_mode)},
          {"columnStrategy", to_string(c.columns.mode)},
          {"columnCount", c.columns.count},
          {"dominance", c.dominance},
          {"workers", c.workers},
          {"epsilon", c.epsilon},
          {"maxIter", c.max_iterations},
          {"caching", c.caching},
          {"testSeed", c.test_seed},
          {"testCount", c.test_count},
          {"enumerationLimit", c.enumeration_limit}};
}

RunConfig load_config(const std::filesystem::path& path) {
  RunConfig c = config_from_json(read_json_file(path));
  if (!c.schedule.empty() && std::filesystem::path(c.schedule).is_relative())
    c.schedule = (path.parent_path() / c.schedule).lexically_normal().string();
  return c;
}

}  // namespace fsched
