#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fsched/network.hpp"

namespace fsched {

/// Duals of the recourse LP: mu per tail, nu per flight, pi per flight
/// (0 <= pi_f <= e_f).
struct DualPrices {
  std::vector<double> tail;
  std::vector<double> flight;
  std::vector<double> delay;
};

enum class ColumnMode { kAllPaths, kBestPaths, kFirstPaths };

struct ColumnStrategy {
  ColumnMode mode = ColumnMode::kFirstPaths;
  int count = 10;  // N for best/first paths
};

std::string to_string(ColumnMode mode);
ColumnMode parse_column_mode(const std::string& name);

/// Routes whose reduced cost is below this are considered improving.
inline constexpr double kReducedCostThreshold = -1e-9;

inline constexpr int kSourceNode = -1;
inline constexpr int kSinkNode = -2;

/// Partial route ending at `flight` (or a dummy node). `pred` indexes the
/// label pool, -1 at the source.
struct Label {
  int flight = kSourceNode;
  int pred = -1;
  double red = 0.0;
  Minutes prop = 0;
};

/// Reduced cost of a route with delays already propagated:
/// sum_f (d_rf pi_f - nu_f) - mu_tail.
double reduced_cost(const Route& route, const DualPrices& duals);

/// Same, propagating the scenario's primary delays along the route first.
double reduced_cost(const ConnectionNetwork& net, const Route& route, const DualPrices& duals,
                    std::span<const Minutes> primary_delays);

/// u dominates v: no worse in both reduced cost and propagated delay, and
/// strictly better in one. Labels must sit at the same node.
bool dominates(const Label& u, const Label& v);

/// Extends `from` along a connection with slack `slack` to `to` (a flight or
/// kSinkNode). `pd_from` is the primary delay of the label's flight (0 at
/// the source).
Label extend(const Label& from, int from_index, int to, Minutes slack, Minutes pd_from, const DualPrices& duals);

struct PricingOptions {
  ColumnStrategy strategy;
  bool dominance = true;
};

struct PricingResult {
  std::vector<Route> routes;          // most negative first
  std::vector<double> reduced_costs;  // aligned with routes
  std::size_t labels = 0;             // labels kept at flight nodes
  std::size_t sink_labels = 0;        // complete routes reached
  bool exhaustive = true;             // false when first-paths stopped early
};

/// Label-setting search for negative reduced-cost routes of one tail over
/// its augmented network (dummy source/sink at the tail's stations).
PricingResult generate_columns(const ConnectionNetwork& net, int tail, const DualPrices& duals,
                               std::span<const Minutes> primary_delays, const PricingOptions& options);

}  // namespace fsched
