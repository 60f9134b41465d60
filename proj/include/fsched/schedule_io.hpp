#pragma once

#include <filesystem>
#include <stdexcept>

#include <json.hpp>

#include "fsched/network.hpp"

namespace fsched {

/// Input files that are missing, unreadable or malformed.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json_file(const std::filesystem::path& path);

/// Schedule JSON: an array of
/// {id, tail, origin, dest, depMin, arrMin, turnMin, cPerMin, ePerMin}.
/// Tails are derived from the flights.
Schedule parse_schedule(const nlohmann::json& doc);
Schedule load_schedule(const std::filesystem::path& path);
nlohmann::json schedule_to_json(const Schedule& schedule);

}  // namespace fsched
