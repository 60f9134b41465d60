#include "fsched/pricing.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace fsched {

std::string to_string(ColumnMode mode) {
  switch (mode) {
    case ColumnMode::kAllPaths: return "all";
    case ColumnMode::kBestPaths: return "best";
    case ColumnMode::kFirstPaths: return "first";
  }
  return "?";
}

ColumnMode parse_column_mode(const std::string& name) {
  if (name == "all" || name == "allPaths") return ColumnMode::kAllPaths;
  if (name == "best" || name == "bestPaths") return ColumnMode::kBestPaths;
  if (name == "first" || name == "firstPaths") return ColumnMode::kFirstPaths;
  throw std::invalid_argument("unknown column strategy '" + name + "'");
}

double reduced_cost(const Route& route, const DualPrices& duals) {
  double rc = -duals.tail[route.tail];
  for (std::size_t k = 0; k < route.flights.size(); ++k) {
    const int f = route.flights[k];
    rc += static_cast<double>(route.prop_delays[k]) * duals.delay[f] - duals.flight[f];
  }
  return rc;
}

double reduced_cost(const ConnectionNetwork& net, const Route& route, const DualPrices& duals,
                    std::span<const Minutes> primary_delays) {
  Route r = route;
  r.prop_delays = propagate_along_route(net, r.flights, primary_delays);
  return reduced_cost(r, duals);
}

bool dominates(const Label& u, const Label& v) {
  if (u.red > v.red || u.prop > v.prop) return false;
  return u.red < v.red || u.prop < v.prop;
}

Label extend(const Label& from, int from_index, int to, Minutes slack, Minutes pd_from, const DualPrices& duals) {
  Label l;
  l.flight = to;
  l.pred = from_index;
  if (to == kSinkNode) {
    l.red = from.red;
    l.prop = from.prop;
    return l;
  }
  l.prop = std::max<Minutes>(0, from.prop + pd_from - slack);
  l.red = from.red + static_cast<double>(l.prop) * duals.delay[to] - duals.flight[to];
  return l;
}

namespace {

struct QueueEntry {
  double red;
  Minutes prop;
  int id;
  bool operator>(const QueueEntry& o) const { return std::tie(red, prop, id) > std::tie(o.red, o.prop, o.id); }
};

}  // namespace

PricingResult generate_columns(const ConnectionNetwork& net, int tail, const DualPrices& duals,
                               std::span<const Minutes> primary_delays, const PricingOptions& options) {
  if (options.strategy.count < 1) throw std::invalid_argument("column count must be at least 1");
  const int n = net.num_flights();
  std::vector<Label> pool;
  std::vector<char> dead;
  std::vector<std::vector<int>> bucket(n);  // live labels per flight
  std::vector<int> sink;                    // negative reduced-cost sink labels
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> open;

  pool.push_back({kSourceNode, -1, -duals.tail[tail], 0});
  dead.push_back(0);
  open.push({pool[0].red, 0, 0});

  const bool first_paths = options.strategy.mode == ColumnMode::kFirstPaths;
  const auto should_stop = [&] { return first_paths && static_cast<int>(sink.size()) >= options.strategy.count; };

  PricingResult result;
  auto try_insert = [&](const Label& cand) {
    auto& b = bucket[cand.flight];
    if (options.dominance) {
      for (int id : b) {
        const Label& u = pool[id];
        if (dominates(u, cand) || (u.red == cand.red && u.prop == cand.prop)) return;
      }
      std::erase_if(b, [&](int id) {
        if (!dominates(cand, pool[id])) return false;
        dead[id] = 1;
        return true;
      });
    }
    const int id = static_cast<int>(pool.size());
    pool.push_back(cand);
    dead.push_back(0);
    b.push_back(id);
    open.push({cand.red, cand.prop, id});
  };

  bool stopped = false;
  while (!open.empty() && !stopped) {
    const QueueEntry top = open.top();
    open.pop();
    if (dead[top.id]) continue;
    const Label cur = pool[top.id];

    if (cur.flight == kSourceNode) {
      for (int j : net.source_flights(tail)) try_insert(extend(cur, top.id, j, 0, 0, duals));
      continue;
    }
    const Minutes pd = primary_delays[cur.flight];
    for (int a : net.out_arcs(cur.flight)) {
      const Arc& arc = net.arcs()[a];
      try_insert(extend(cur, top.id, arc.to, arc.slack, pd, duals));
    }
    if (net.ends_at_sink(tail, cur.flight)) {
      ++result.sink_labels;
      const Label done = extend(cur, top.id, kSinkNode, 0, pd, duals);
      if (done.red < kReducedCostThreshold) {
        sink.push_back(static_cast<int>(pool.size()));
        pool.push_back(done);
        dead.push_back(0);
        if (should_stop()) stopped = true;
      }
    }
  }
  result.exhaustive = !stopped;
  for (const auto& b : bucket) result.labels += b.size();

  std::stable_sort(sink.begin(), sink.end(), [&](int a, int b) { return pool[a].red < pool[b].red; });
  if (options.strategy.mode != ColumnMode::kAllPaths && static_cast<int>(sink.size()) > options.strategy.count)
    sink.resize(options.strategy.count);

  for (int id : sink) {
    Route r;
    r.tail = tail;
    for (int l = pool[id].pred; l >= 0 && pool[l].flight != kSourceNode; l = pool[l].pred) {
      r.flights.push_back(pool[l].flight);
      r.prop_delays.push_back(pool[l].prop);
    }
    std::reverse(r.flights.begin(), r.flights.end());
    std::reverse(r.prop_delays.begin(), r.prop_delays.end());
    result.reduced_costs.push_back(pool[id].red);
    result.routes.push_back(std::move(r));
  }
  return result;
}

}  // namespace fsched
