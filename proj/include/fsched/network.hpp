#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fsched {

/// Integer minutes from the schedule epoch.
using Minutes = std::int64_t;

/// Thrown when a schedule violates airport continuity, time ordering or
/// cost sign rules.
class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flight {
  std::string id;
  std::string tail;
  std::string origin;
  std::string destination;
  Minutes dep_time = 0;
  Minutes arr_time = 0;
  Minutes turnaround = 0;
  double reschedule_cost = 0.0;  // per minute of planned shift
  double delay_cost = 0.0;       // per minute of excess propagated delay
};

struct Tail {
  std::string id;
  std::string source_station;
  std::string sink_station;
};

struct Schedule {
  std::vector<Flight> flights;
  std::vector<Tail> tails;
};

/// A valid connection i -> j with its slack.
struct Arc {
  int from = 0;
  int to = 0;
  Minutes slack = 0;
  bool original = false;
};

/// Aircraft path for one tail. `prop_delays[k]` is the delay propagated
/// into `flights[k]`.
struct Route {
  int tail = 0;
  std::vector<int> flights;
  std::vector<Minutes> prop_delays;
};

/// Tails in id order, with source/sink stations taken from each tail's
/// first and last flight by departure time.
std::vector<Tail> derive_tails(std::span<const Flight> flights);

/// Immutable connection graph over the flights of a schedule. Flights keep
/// their input order; arcs only point forward in time.
class ConnectionNetwork {
 public:
  const std::vector<Flight>& flights() const { return flights_; }
  const std::vector<Tail>& tails() const { return tails_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  int num_flights() const { return static_cast<int>(flights_.size()); }
  int num_tails() const { return static_cast<int>(tails_.size()); }

  /// Arc indices leaving `flight`, ordered by target departure time.
  const std::vector<int>& out_arcs(int flight) const { return out_arcs_[flight]; }

  std::optional<Minutes> slack(int from, int to) const;

  /// Flight indices of `tail`'s original rotation, by departure time.
  const std::vector<int>& original_route(int tail) const { return original_routes_[tail]; }
  std::vector<int> original_arcs() const;

  int tail_of(int flight) const { return flight_tail_[flight]; }
  /// Flights departing the tail's source station (dummy source arcs).
  const std::vector<int>& source_flights(int tail) const { return source_flights_[tail]; }
  /// Whether `flight` arrives at the tail's sink station (dummy sink arc).
  bool ends_at_sink(int tail, int flight) const;

  /// Flight indices sorted by departure time; a topological order.
  const std::vector<int>& topological_order() const { return topo_order_; }

  int flight_index(const std::string& id) const;
  int tail_index(const std::string& id) const;

 private:
  friend ConnectionNetwork build_network(std::vector<Flight>, std::vector<Tail>);

  std::vector<Flight> flights_;
  std::vector<Tail> tails_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_arcs_;
  std::vector<std::vector<int>> original_routes_;
  std::vector<std::vector<int>> source_flights_;
  std::vector<int> flight_tail_;
  std::vector<int> topo_order_;
  std::unordered_map<std::string, int> flight_ids_;
  std::unordered_map<std::string, int> tail_ids_;
};

/// Builds the connection network. Throws ScheduleError on malformed flights,
/// unknown tails, broken airport continuity or negative slack along an
/// original rotation.
ConnectionNetwork build_network(std::vector<Flight> flights, std::vector<Tail> tails);
ConnectionNetwork build_network(const Schedule& schedule);

/// Delay propagated into each flight of a route:
/// d_first = 0, d_j = max(0, d_i + pd_i - s_ij).
template <typename T>
std::vector<T> propagate_delays(const ConnectionNetwork& net, std::span<const int> route,
                                std::span<const T> primary_delays) {
  std::vector<T> delays(route.size(), T{0});
  for (std::size_t k = 1; k < route.size(); ++k) {
    const auto s = net.slack(route[k - 1], route[k]);
    if (!s) throw std::invalid_argument("route uses a connection that is not in the network");
    const T carried = delays[k - 1] + primary_delays[route[k - 1]] - static_cast<T>(*s);
    delays[k] = carried > T{0} ? carried : T{0};
  }
  return delays;
}

std::vector<Minutes> propagate_along_route(const ConnectionNetwork& net, std::span<const int> route,
                                           std::span<const Minutes> primary_delays);

/// Shifts every flight's departure and arrival by x_f minutes. Rejects
/// negative shifts, shifts above `limit`, and shifts that break an original
/// connection (x_i <= s_ij + x_j on original arcs).
Schedule adjust_schedule(const ConnectionNetwork& net, std::span<const Minutes> shift,
                         std::optional<Minutes> limit = std::nullopt);

/// Source-to-sink path count for one tail's augmented network.
std::uint64_t count_tail_paths(const ConnectionNetwork& net, int tail);
/// Sum of per-tail path counts. Saturates at UINT64_MAX.
std::uint64_t count_paths(const ConnectionNetwork& net);

/// All source-to-sink routes of one tail (delays left empty). Throws
/// std::length_error when more than `limit` routes exist.
std::vector<std::vector<int>> enumerate_tail_routes(const ConnectionNetwork& net, int tail,
                                                    std::uint64_t limit);

}  // namespace fsched
