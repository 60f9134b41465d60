#include "fsched/schedule_io.hpp"

#include <fstream>

namespace fsched {

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

Schedule parse_schedule(const nlohmann::json& doc) {
  if (!doc.is_array() || doc.empty()) throw DataError("schedule must be a non-empty array of flights");
  Schedule s;
  try {
    for (const auto& j : doc) {
      Flight f;
      f.id = j.at("id").get<std::string>();
      f.tail = j.at("tail").get<std::string>();
      f.origin = j.at("origin").get<std::string>();
      f.destination = j.at("dest").get<std::string>();
      f.dep_time = j.at("depMin").get<Minutes>();
      f.arr_time = j.at("arrMin").get<Minutes>();
      f.turnaround = j.at("turnMin").get<Minutes>();
      f.reschedule_cost = j.at("cPerMin").get<double>();
      f.delay_cost = j.at("ePerMin").get<double>();
      s.flights.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad flight record: ") + e.what());
  }
  s.tails = derive_tails(s.flights);
  return s;
}

Schedule load_schedule(const std::filesystem::path& path) {
  return parse_schedule(read_json_file(path));
}

nlohmann::json schedule_to_json(const Schedule& schedule) {
  nlohmann::json out = nlohmann::json::array();
  for (const Flight& f : schedule.flights)
    out.push_back({{"id", f.id},
                   {"tail", f.tail},
                   {"origin", f.origin},
                   {"dest", f.destination},
                   {"depMin", f.dep_time},
                   {"arrMin", f.arr_time},
                   {"turnMin", f.turnaround},
                   {"cPerMin", f.reschedule_cost},
                   {"ePerMin", f.delay_cost}});
  return out;
}

}  // namespace fsched
