#include <algorithm>
#include <cmath>
#include <queue>

#include "fsched/lp.hpp"

namespace fsched::lp {

namespace {

struct Node {
  std::vector<double> lower;
  std::vector<double> upper;
  Basis basis;
  double bound = -kInfinity;
  int depth = 0;
  std::int64_t id = 0;
};

// Deepest first; ties by bound, then creation order.
struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.depth != b.depth) return a.depth < b.depth;
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

}  // namespace

MipSolution solve_mip(const LinearProgram& lp, MipOptions options) {
  const int n = lp.num_variables();
  Simplex simplex(lp, options.simplex);
  MipSolution best;
  best.objective = kInfinity;

  Node root;
  root.lower.resize(n);
  root.upper.resize(n);
  for (int j = 0; j < n; ++j) {
    const Variable& v = lp.variable(j);
    root.lower[j] = v.integer && std::isfinite(v.lower) ? std::ceil(v.lower - options.integrality_tol) : v.lower;
    root.upper[j] = v.integer && std::isfinite(v.upper) ? std::floor(v.upper + options.integrality_tol) : v.upper;
    if (root.lower[j] > root.upper[j]) {
      best.status = Status::kInfeasible;
      return best;
    }
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  open.push(std::move(root));
  std::int64_t next_id = 1;
  bool unbounded = false;

  auto prune_level = [&] {
    return best.objective - (options.absolute_gap + 1e-12 * std::abs(best.objective));
  };

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (std::isfinite(best.objective) && node.bound >= prune_level()) continue;
    if (best.nodes >= options.node_limit) {
      best.status = Status::kLimitReached;
      return best;
    }
    ++best.nodes;

    LpSolution sol = simplex.solve(node.lower, node.upper, node.basis.empty() ? nullptr : &node.basis);
    if (sol.status == Status::kInfeasible) continue;
    if (sol.status == Status::kUnbounded) {
      unbounded = true;
      break;
    }
    if (sol.status != Status::kOptimal) {
      best.status = sol.status;
      return best;
    }
    if (std::isfinite(best.objective) && sol.objective >= prune_level()) continue;

    int branch = -1;
    double most = options.integrality_tol;
    for (int j = 0; j < n; ++j) {
      if (!lp.variable(j).integer) continue;
      const double frac = sol.primal[j] - std::floor(sol.primal[j]);
      const double dist = std::min(frac, 1.0 - frac);
      if (dist > most) {
        most = dist;
        branch = j;
      }
    }
    if (branch < 0) {
      std::vector<double> values = sol.primal;
      double obj = 0.0;
      for (int j = 0; j < n; ++j) {
        if (lp.variable(j).integer) values[j] = std::round(values[j]);
        obj += lp.variable(j).cost * values[j];
      }
      if (obj < best.objective) {
        best.objective = obj;
        best.values = std::move(values);
      }
      continue;
    }

    const double v = sol.primal[branch];
    Node down{node.lower, node.upper, sol.basis, sol.objective, node.depth + 1, 0};
    down.upper[branch] = std::floor(v);
    Node up{std::move(node.lower), std::move(node.upper), std::move(sol.basis), sol.objective, node.depth + 1, 0};
    up.lower[branch] = std::ceil(v);
    const bool up_first = v - std::floor(v) >= 0.5;
    if (up_first) {
      up.id = next_id++;
      down.id = next_id++;
    } else {
      down.id = next_id++;
      up.id = next_id++;
    }
    open.push(std::move(down));
    open.push(std::move(up));
  }

  if (unbounded && !std::isfinite(best.objective)) {
    best.status = Status::kUnbounded;
    return best;
  }
  best.status = std::isfinite(best.objective) ? Status::kOptimal : Status::kInfeasible;
  return best;
}

}  // namespace fsched::lp
