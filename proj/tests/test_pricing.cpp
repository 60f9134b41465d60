#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fsched/pricing.hpp"
#include "oracles.hpp"

using namespace fsched;

namespace {

DualPrices random_duals(const ConnectionNetwork& net, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0), p(0.0, 1.0);
  DualPrices d;
  for (int t = 0; t < net.num_tails(); ++t) d.tail.push_back(u(rng) * 4);
  for (int f = 0; f < net.num_flights(); ++f) {
    d.flight.push_back(u(rng));
    d.delay.push_back(p(rng) * net.flights()[f].delay_cost);
  }
  return d;
}

// Reduced cost recomputed from first principles for a flight sequence.
double oracle_rc(const ConnectionNetwork& net, int tail, const std::vector<int>& r, const DualPrices& d,
                 const std::vector<double>& pd) {
  const auto dl = oracle::route_delays(net, r, pd);
  double rc = -d.tail[tail];
  for (std::size_t k = 0; k < r.size(); ++k) rc += dl[k] * d.delay[r[k]] - d.flight[r[k]];
  return rc;
}

std::vector<Minutes> random_pd(const ConnectionNetwork& net, std::mt19937_64& rng) {
  std::vector<Minutes> pd(net.num_flights());
  for (auto& v : pd) v = rng() % 3 == 0 ? static_cast<Minutes>(rng() % 60) : 0;
  return pd;
}

}  // namespace

TEST_CASE("reduced cost of a two-leg route") {
  std::vector<Flight> fl = {{"a", "T", "A", "B", 0, 60, 30, 1, 10}, {"b", "T", "B", "C", 100, 150, 30, 1, 10}};
  auto tails = derive_tails(fl);
  const auto net = build_network(std::move(fl), std::move(tails));
  const Route r{0, {0, 1}, {0, 10}};
  DualPrices d{{5.0}, {2.0, 1.0}, {1.0, 0.5}};
  CHECK(reduced_cost(r, d) == doctest::Approx(-3.0));
  // pd 20 on the first leg with slack 10 gives the same d = 10.
  CHECK(reduced_cost(net, r, d, std::vector<Minutes>{20, 0}) == doctest::Approx(-3.0));
  DualPrices zero{{0.0}, {0.0, 0.0}, {0.0, 0.0}};
  CHECK(reduced_cost(r, zero) == 0.0);
}

TEST_CASE("dominance relation") {
  const Label a{3, 0, 1.0, 5}, b{3, 0, 2.0, 5}, c{3, 0, 1.0, 9}, d{3, 0, 2.0, 5};
  CHECK(dominates(a, b));
  CHECK_FALSE(dominates(b, d));
  CHECK_FALSE(dominates(c, d));
  CHECK_FALSE(dominates(d, c));
}

TEST_CASE("label extension") {
  DualPrices d{{0.0}, {0.0, 0.0}, {0.0, 1.0}};
  const Label from{0, -1, 2.0, 20};
  const Label next = extend(from, 0, 1, 30, 25, d);
  CHECK(next.prop == 15);
  CHECK(next.red == doctest::Approx(17.0));
  CHECK(next.pred == 0);
  const Label sink = extend(from, 0, kSinkNode, 0, 25, d);
  CHECK(sink.red == 2.0);
}

TEST_CASE("extensions along a full route reproduce its reduced cost") {
  const auto net = oracle::load_fixture("mid12");
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto duals = random_duals(net, rng);
    const auto pd = random_pd(net, rng);
    for (int t = 0; t < net.num_tails(); ++t) {
      for (const auto& flights : oracle::dfs_routes(net, t)) {
        Label l{kSourceNode, -1, -duals.tail[t], 0};
        l = extend(l, 0, flights[0], 0, 0, duals);
        for (std::size_t k = 1; k < flights.size(); ++k)
          l = extend(l, 0, flights[k], oracle::slack_between(net, flights[k - 1], flights[k]), pd[flights[k - 1]], duals);
        l = extend(l, 0, kSinkNode, 0, pd[flights.back()], duals);
        Route r{t, flights, propagate_along_route(net, flights, pd)};
        CHECK(l.red == doctest::Approx(reduced_cost(r, duals)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("zero duals produce no columns") {
  const auto net = oracle::load_fixture("tiny4");
  DualPrices d{std::vector<double>(2, 0.0), std::vector<double>(4, 0.0), std::vector<double>(4, 0.0)};
  const std::vector<Minutes> pd(4, 30);
  for (auto mode : {ColumnMode::kAllPaths, ColumnMode::kBestPaths, ColumnMode::kFirstPaths})
    for (int t = 0; t < 2; ++t) CHECK(generate_columns(net, t, d, pd, {{mode, 10}, true}).routes.empty());
}

TEST_CASE("crafted duals on tiny4 pick the enumeration argmin") {
  const auto net = oracle::load_fixture("tiny4");
  // Reward f3 and f2 heavily, so T1's best route is f3 -> f2.
  DualPrices d{{1.0, 0.0}, {0.0, 7.0, 8.0, -3.0}, {0.0, 0.2, 0.0, 0.0}};
  const std::vector<Minutes> pd = {0, 0, 20, 0};
  const int t = net.tail_index("T1");
  const auto res = generate_columns(net, t, d, pd, {{ColumnMode::kBestPaths, 10}, true});
  REQUIRE_FALSE(res.routes.empty());
  double best = 1e300;
  std::vector<int> arg;
  for (const auto& r : oracle::dfs_routes(net, t)) {
    const double rc = oracle_rc(net, t, r, d, oracle::to_double(pd));
    if (rc < best) best = rc, arg = r;
  }
  CHECK(res.routes.front().flights == arg);
  CHECK(res.routes.front().flights == std::vector<int>{net.flight_index("f3"), net.flight_index("f2")});
  CHECK(res.reduced_costs.front() == doctest::Approx(best).epsilon(1e-12));
  // f3 -> f2 has slack 5, so 20 minutes of primary delay carries 15.
  CHECK(res.routes.front().prop_delays == std::vector<Minutes>{0, 15});
}

TEST_CASE("exhaustive modes agree with enumeration on random duals") {
  std::mt19937_64 rng(2024);
  for (const char* name : {"tiny4", "mid12", "hub20"}) {
    const auto net = oracle::load_fixture(name);
    for (int trial = 0; trial < 100; ++trial) {
      const auto duals = random_duals(net, rng);
      const auto pd = random_pd(net, rng);
      for (int t = 0; t < net.num_tails(); ++t) {
        const auto routes = oracle::dfs_routes(net, t);
        const auto prefixes = oracle::dfs_prefix_count(net, t);
        std::vector<double> rcs;
        for (const auto& r : routes) rcs.push_back(oracle_rc(net, t, r, duals, oracle::to_double(pd)));
        const double best = *std::min_element(rcs.begin(), rcs.end());
        const auto negatives = std::count_if(rcs.begin(), rcs.end(), [](double v) { return v < kReducedCostThreshold; });
        for (bool dom : {true, false}) {
          const auto all = generate_columns(net, t, duals, pd, {{ColumnMode::kAllPaths, 10}, dom});
          const auto bestN = generate_columns(net, t, duals, pd, {{ColumnMode::kBestPaths, 3}, dom});
          CAPTURE(name);
          CAPTURE(trial);
          CHECK(all.routes.empty() == (negatives == 0));
          CHECK(bestN.routes.empty() == (negatives == 0));
          CHECK(all.labels <= prefixes);
          if (negatives == 0) continue;
          CHECK(std::abs(all.reduced_costs.front() - best) <= 1e-9);
          CHECK(std::abs(bestN.reduced_costs.front() - best) <= 1e-9);
          CHECK(bestN.routes.size() <= 3);
          if (!dom) CHECK(all.routes.size() == static_cast<std::size_t>(negatives));
          for (std::size_t k = 0; k < all.routes.size(); ++k) {
            const Route& r = all.routes[k];
            CHECK(r.tail == t);
            CHECK(all.reduced_costs[k] < kReducedCostThreshold);
            CHECK(r.prop_delays == propagate_along_route(net, r.flights, pd));
            CHECK(std::abs(reduced_cost(r, duals) - all.reduced_costs[k]) <= 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("first paths with N = 1 returns a single negative route") {
  const auto net = oracle::load_fixture("hub20");
  std::mt19937_64 rng(8);
  int seen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto duals = random_duals(net, rng);
    const auto pd = random_pd(net, rng);
    for (int t = 0; t < net.num_tails(); ++t) {
      const auto all = generate_columns(net, t, duals, pd, {{ColumnMode::kAllPaths, 10}, true});
      const auto first = generate_columns(net, t, duals, pd, {{ColumnMode::kFirstPaths, 1}, true});
      if (all.routes.empty()) {
        CHECK(first.routes.empty());
        continue;
      }
      ++seen;
      REQUIRE(first.routes.size() == 1);
      CHECK(reduced_cost(first.routes[0], duals) < kReducedCostThreshold);
    }
  }
  CHECK(seen > 10);
}

TEST_CASE("column mode names") {
  CHECK(parse_column_mode("first") == ColumnMode::kFirstPaths);
  CHECK(parse_column_mode("allPaths") == ColumnMode::kAllPaths);
  CHECK(to_string(ColumnMode::kBestPaths) == "best");
  CHECK_THROWS(parse_column_mode("some"));
}
