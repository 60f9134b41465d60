#include "fsched/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "fsched/schedule_io.hpp"

namespace fsched {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double draw(const DelayConfig& c, std::mt19937_64& rng) {
  switch (c.distribution) {
    case Distribution::kExponential:
      return std::exponential_distribution<double>(1.0 / c.mean)(rng);
    case Distribution::kLogNormal: {
      const double m2 = c.mean * c.mean;
      const double mu = std::log(m2 / std::sqrt(c.sd * c.sd + m2));
      const double sigma = std::sqrt(std::log(1.0 + c.sd * c.sd / m2));
      return std::lognormal_distribution<double>(mu, sigma)(rng);
    }
    case Distribution::kTruncatedNormal: {
      std::normal_distribution<double> normal(c.mean, c.sd);
      for (;;) {
        const double v = normal(rng);
        if (v >= 0.0) return v;
      }
    }
    case Distribution::kGamma: {
      const double shape = c.mean * c.mean / (c.sd * c.sd);
      const double scale = c.sd * c.sd / c.mean;
      return std::gamma_distribution<double>(shape, scale)(rng);
    }
  }
  throw std::logic_error("unknown distribution");
}

}  // namespace

void DelayConfig::validate() const {
  if (!(mean > 0.0) || !std::isfinite(mean)) throw std::invalid_argument("delay mean must be positive");
  if (distribution != Distribution::kExponential && (!(sd > 0.0) || !std::isfinite(sd)))
    throw std::invalid_argument("delay standard deviation must be positive");
  if (scenario_count < 1) throw std::invalid_argument("scenario count must be at least 1");
}

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::kExponential: return "exponential";
    case Distribution::kLogNormal: return "lognormal";
    case Distribution::kTruncatedNormal: return "truncated-normal";
    case Distribution::kGamma: return "gamma";
  }
  return "?";
}

std::string to_string(SelectionStrategy s) { return s == SelectionStrategy::kHub ? "hub" : "rush"; }

Distribution parse_distribution(const std::string& name) {
  if (name == "exponential") return Distribution::kExponential;
  if (name == "lognormal") return Distribution::kLogNormal;
  if (name == "truncated-normal") return Distribution::kTruncatedNormal;
  if (name == "gamma") return Distribution::kGamma;
  throw std::invalid_argument("unknown distribution '" + name + "'");
}

SelectionStrategy parse_selection_strategy(const std::string& name) {
  if (name == "hub") return SelectionStrategy::kHub;
  if (name == "rush") return SelectionStrategy::kRush;
  throw std::invalid_argument("unknown flight selection strategy '" + name + "'");
}

std::vector<int> select_flights(const ConnectionNetwork& net, SelectionStrategy strategy) {
  const auto& flights = net.flights();
  std::vector<int> out;
  if (flights.empty()) return out;
  if (strategy == SelectionStrategy::kHub) {
    std::map<std::string, int> departures;  // ordered: ties go to the smallest code
    for (const Flight& f : flights) ++departures[f.origin];
    auto hub = departures.begin();
    for (auto it = departures.begin(); it != departures.end(); ++it)
      if (it->second > hub->second) hub = it;
    for (int i = 0; i < net.num_flights(); ++i)
      if (flights[i].origin == hub->first) out.push_back(i);
    return out;
  }
  Minutes first_dep = flights.front().dep_time;
  Minutes last_arr = flights.front().arr_time;
  for (const Flight& f : flights) {
    first_dep = std::min(first_dep, f.dep_time);
    last_arr = std::max(last_arr, f.arr_time);
  }
  const Minutes window = last_arr - first_dep;
  const Minutes cutoff = first_dep + (window + 3) / 4;
  for (int i = 0; i < net.num_flights(); ++i)
    if (flights[i].dep_time < cutoff) out.push_back(i);
  return out;
}

Minutes sample_delay(const DelayConfig& config, std::uint64_t scenario, std::uint64_t flight) {
  std::uint64_t key = splitmix64(config.seed);
  key = splitmix64(key ^ scenario);
  key = splitmix64(key ^ (flight * 0x632be59bd9b4e019ULL));
  std::mt19937_64 rng(key);
  const double v = draw(config, rng);
  return std::max<Minutes>(0, static_cast<Minutes>(std::floor(v + 0.5)));
}

std::vector<Scenario> sample_scenarios(const DelayConfig& config, std::span<const int> selected, int num_flights) {
  config.validate();
  std::vector<Scenario> out(config.scenario_count);
  const double p = 1.0 / config.scenario_count;
  for (int s = 0; s < config.scenario_count; ++s) {
    out[s].probability = p;
    out[s].primary_delays.assign(num_flights, 0);
    for (int f : selected) {
      if (f < 0 || f >= num_flights) throw std::out_of_range("selected flight index out of range");
      out[s].primary_delays[f] = sample_delay(config, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(f));
    }
  }
  return out;
}

MeanScenario mean_scenario(std::span<const Scenario> scenarios) {
  if (scenarios.empty()) throw std::invalid_argument("mean of an empty scenario set");
  MeanScenario mean;
  mean.primary_delays.assign(scenarios.front().primary_delays.size(), 0.0);
  for (const Scenario& s : scenarios)
    for (std::size_t f = 0; f < s.primary_delays.size(); ++f)
      mean.primary_delays[f] += s.probability * static_cast<double>(s.primary_delays[f]);
  return mean;
}

Minutes compute_budget(std::span<const Scenario> scenarios, double fraction) {
  if (!(fraction > 0.0)) throw std::invalid_argument("budget fraction must be positive");
  double expected_total = 0.0;
  for (const Scenario& s : scenarios) {
    Minutes total = 0;
    for (Minutes d : s.primary_delays) total += d;
    expected_total += s.probability * static_cast<double>(total);
  }
  // Guards against 0.5 * 150 landing on 74.99999.
  return static_cast<Minutes>(std::floor(fraction * expected_total + 1e-9));
}

double total_probability(std::span<const Scenario> scenarios) {
  double sum = 0.0, comp = 0.0;
  for (const Scenario& s : scenarios) {
    const double y = s.probability - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

nlohmann::json scenarios_to_json(const ConnectionNetwork& net, std::span<const Scenario> scenarios) {
  nlohmann::json ids = nlohmann::json::array();
  for (const Flight& f : net.flights()) ids.push_back(f.id);
  nlohmann::json list = nlohmann::json::array();
  for (const Scenario& s : scenarios) list.push_back({{"probability", s.probability}, {"delays", s.primary_delays}});
  return {{"flights", ids}, {"scenarios", list}};
}

std::vector<Scenario> scenarios_from_json(const ConnectionNetwork& net, const nlohmann::json& doc) {
  std::vector<Scenario> out;
  try {
    const auto ids = doc.at("flights").get<std::vector<std::string>>();
    std::vector<int> index(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) index[k] = net.flight_index(ids[k]);
    for (const auto& js : doc.at("scenarios")) {
      Scenario s;
      s.probability = js.at("probability").get<double>();
      s.primary_delays.assign(net.num_flights(), 0);
      const auto delays = js.at("delays").get<std::vector<Minutes>>();
      if (delays.size() != ids.size()) throw DataError("scenario delay vector has the wrong length");
      for (std::size_t k = 0; k < ids.size(); ++k) {
        if (delays[k] < 0) throw DataError("negative primary delay in scenario file");
        s.primary_delays[index[k]] = delays[k];
      }
      out.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad scenario file: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw DataError(std::string("bad scenario file: ") + e.what());
  }
  if (out.empty()) throw DataError("scenario file contains no scenarios");
  if (std::abs(total_probability(out) - 1.0) > 1e-9) throw DataError("scenario probabilities do not sum to 1");
  return out;
}

}  // namespace fsched
