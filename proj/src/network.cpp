#include "fsched/network.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace fsched {

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                           : a + b;
}

void validate_flight(const Flight& f) {
  if (f.id.empty()) throw ScheduleError("flight with empty id");
  if (f.arr_time <= f.dep_time) throw ScheduleError("flight " + f.id + " arrives before it departs");
  if (f.turnaround < 0) throw ScheduleError("flight " + f.id + " has negative turnaround");
  if (f.reschedule_cost < 0 || f.delay_cost < 0)
    throw ScheduleError("flight " + f.id + " has a negative cost");
}

}  // namespace

std::vector<Tail> derive_tails(std::span<const Flight> flights) {
  std::map<std::string, std::pair<const Flight*, const Flight*>> ends;
  for (const Flight& f : flights) {
    auto [it, inserted] = ends.try_emplace(f.tail, &f, &f);
    if (inserted) continue;
    if (f.dep_time < it->second.first->dep_time) it->second.first = &f;
    if (f.dep_time > it->second.second->dep_time) it->second.second = &f;
  }
  std::vector<Tail> tails;
  tails.reserve(ends.size());
  for (const auto& [id, fl] : ends) tails.push_back({id, fl.first->origin, fl.second->destination});
  return tails;
}

std::optional<Minutes> ConnectionNetwork::slack(int from, int to) const {
  for (int a : out_arcs_[from])
    if (arcs_[a].to == to) return arcs_[a].slack;
  return std::nullopt;
}

std::vector<int> ConnectionNetwork::original_arcs() const {
  std::vector<int> out;
  for (int a = 0; a < static_cast<int>(arcs_.size()); ++a)
    if (arcs_[a].original) out.push_back(a);
  return out;
}

bool ConnectionNetwork::ends_at_sink(int tail, int flight) const {
  return flights_[flight].destination == tails_[tail].sink_station;
}

int ConnectionNetwork::flight_index(const std::string& id) const {
  auto it = flight_ids_.find(id);
  if (it == flight_ids_.end()) throw std::out_of_range("unknown flight " + id);
  return it->second;
}

int ConnectionNetwork::tail_index(const std::string& id) const {
  auto it = tail_ids_.find(id);
  if (it == tail_ids_.end()) throw std::out_of_range("unknown tail " + id);
  return it->second;
}

ConnectionNetwork build_network(std::vector<Flight> flights, std::vector<Tail> tails) {
  ConnectionNetwork net;
  net.flights_ = std::move(flights);
  net.tails_ = std::move(tails);
  const int n = net.num_flights();

  for (int t = 0; t < net.num_tails(); ++t)
    if (!net.tail_ids_.emplace(net.tails_[t].id, t).second)
      throw ScheduleError("duplicate tail " + net.tails_[t].id);
  net.flight_tail_.resize(n);
  for (int i = 0; i < n; ++i) {
    const Flight& f = net.flights_[i];
    validate_flight(f);
    if (!net.flight_ids_.emplace(f.id, i).second) throw ScheduleError("duplicate flight " + f.id);
    auto it = net.tail_ids_.find(f.tail);
    if (it == net.tail_ids_.end()) throw ScheduleError("flight " + f.id + " uses unknown tail " + f.tail);
    net.flight_tail_[i] = it->second;
  }

  net.topo_order_.resize(n);
  std::iota(net.topo_order_.begin(), net.topo_order_.end(), 0);
  std::stable_sort(net.topo_order_.begin(), net.topo_order_.end(), [&](int a, int b) {
    return net.flights_[a].dep_time < net.flights_[b].dep_time;
  });

  net.original_routes_.assign(net.num_tails(), {});
  for (int i : net.topo_order_) net.original_routes_[net.flight_tail_[i]].push_back(i);

  std::vector<std::pair<int, int>> original_pairs;
  for (int t = 0; t < net.num_tails(); ++t) {
    const auto& route = net.original_routes_[t];
    const Tail& tail = net.tails_[t];
    if (route.empty()) throw ScheduleError("tail " + tail.id + " has no flights");
    if (net.flights_[route.front()].origin != tail.source_station)
      throw ScheduleError("tail " + tail.id + " does not start at its source station");
    if (net.flights_[route.back()].destination != tail.sink_station)
      throw ScheduleError("tail " + tail.id + " does not end at its sink station");
    for (std::size_t k = 1; k < route.size(); ++k) {
      const Flight& a = net.flights_[route[k - 1]];
      const Flight& b = net.flights_[route[k]];
      if (a.destination != b.origin)
        throw ScheduleError("tail " + tail.id + " breaks airport continuity between " + a.id + " and " + b.id);
      if (b.dep_time - (a.arr_time + a.turnaround) < 0)
        throw ScheduleError("tail " + tail.id + " has negative slack between " + a.id + " and " + b.id);
      original_pairs.emplace_back(route[k - 1], route[k]);
    }
  }
  std::sort(original_pairs.begin(), original_pairs.end());

  net.out_arcs_.assign(n, {});
  for (int i : net.topo_order_) {
    const Flight& a = net.flights_[i];
    for (int j : net.topo_order_) {
      if (i == j) continue;
      const Flight& b = net.flights_[j];
      if (a.destination != b.origin) continue;
      const Minutes s = b.dep_time - (a.arr_time + a.turnaround);
      if (s < 0) continue;
      const bool orig = std::binary_search(original_pairs.begin(), original_pairs.end(), std::pair{i, j});
      net.out_arcs_[i].push_back(static_cast<int>(net.arcs_.size()));
      net.arcs_.push_back({i, j, s, orig});
    }
  }

  net.source_flights_.assign(net.num_tails(), {});
  for (int t = 0; t < net.num_tails(); ++t)
    for (int i : net.topo_order_)
      if (net.flights_[i].origin == net.tails_[t].source_station) net.source_flights_[t].push_back(i);
  return net;
}

ConnectionNetwork build_network(const Schedule& schedule) {
  return build_network(schedule.flights, schedule.tails);
}

std::vector<Minutes> propagate_along_route(const ConnectionNetwork& net, std::span<const int> route,
                                           std::span<const Minutes> primary_delays) {
  return propagate_delays<Minutes>(net, route, primary_delays);
}

Schedule adjust_schedule(const ConnectionNetwork& net, std::span<const Minutes> shift,
                         std::optional<Minutes> limit) {
  if (static_cast<int>(shift.size()) != net.num_flights())
    throw std::invalid_argument("reschedule vector size does not match the flight count");
  for (int f = 0; f < net.num_flights(); ++f) {
    if (shift[f] < 0) throw std::invalid_argument("negative reschedule on flight " + net.flights()[f].id);
    if (limit && shift[f] > *limit)
      throw std::invalid_argument("reschedule above limit on flight " + net.flights()[f].id);
  }
  for (const Arc& a : net.arcs())
    if (a.original && shift[a.from] > a.slack + shift[a.to])
      throw std::invalid_argument("reschedule breaks original connection " + net.flights()[a.from].id + " -> " +
                                  net.flights()[a.to].id);
  Schedule out{net.flights(), net.tails()};
  for (int f = 0; f < net.num_flights(); ++f) {
    out.flights[f].dep_time += shift[f];
    out.flights[f].arr_time += shift[f];
  }
  return out;
}

std::uint64_t count_tail_paths(const ConnectionNetwork& net, int tail) {
  // paths[i] = number of ways to reach the sink from flight i.
  std::vector<std::uint64_t> paths(net.num_flights(), 0);
  const auto& order = net.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int i = *it;
    std::uint64_t c = net.ends_at_sink(tail, i) ? 1 : 0;
    for (int a : net.out_arcs(i)) c = saturating_add(c, paths[net.arcs()[a].to]);
    paths[i] = c;
  }
  std::uint64_t total = 0;
  for (int i : net.source_flights(tail)) total = saturating_add(total, paths[i]);
  return total;
}

std::uint64_t count_paths(const ConnectionNetwork& net) {
  std::uint64_t total = 0;
  for (int t = 0; t < net.num_tails(); ++t) total = saturating_add(total, count_tail_paths(net, t));
  return total;
}

std::vector<std::vector<int>> enumerate_tail_routes(const ConnectionNetwork& net, int tail,
                                                    std::uint64_t limit) {
  if (count_tail_paths(net, tail) > limit)
    throw std::length_error("tail " + net.tails()[tail].id + " has more routes than the enumeration limit");
  std::vector<std::vector<int>> routes;
  std::vector<int> path;
  // Explicit stack of (flight, next out-arc position).
  std::vector<std::pair<int, std::size_t>> stack;
  for (int start : net.source_flights(tail)) {
    stack.assign(1, {start, 0});
    path.assign(1, start);
    if (net.ends_at_sink(tail, start)) routes.push_back(path);
    while (!stack.empty()) {
      auto& [f, pos] = stack.back();
      const auto& out = net.out_arcs(f);
      if (pos == out.size()) {
        stack.pop_back();
        path.pop_back();
        continue;
      }
      const int next = net.arcs()[out[pos++]].to;
      path.push_back(next);
      stack.emplace_back(next, 0);
      if (net.ends_at_sink(tail, next)) routes.push_back(path);
    }
  }
  return routes;
}

}  // namespace fsched
