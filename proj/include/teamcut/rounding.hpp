#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "teamcut/instance.hpp"
#include "teamcut/rng.hpp"

namespace teamcut {

/// Threshold separating fractional from integral coordinates during rounding.
inline constexpr double kIntegralTol = 1e-9;

/// One edge of the fractional-support bipartite graph, oriented from
/// individual v to task t, carrying its perturbation sign along a walk
/// (+1 for the first matching, -1 for the second).
struct SupportEdge {
  int v = 0;
  int t = 0;
  int sign = 0;
};

/// The bipartite graph H_y with an edge (v, t) whenever y_vt is strictly
/// fractional. Adjacency is kept as ordered sets so walks are deterministic.
class FractionalSupport {
 public:
  FractionalSupport(const FractionalSolution& y, double tol = kIntegralTol)
      : tasks_of_(static_cast<std::size_t>(y.num_nodes())), nodes_of_(static_cast<std::size_t>(y.num_tasks())) {
    for (int v = 0; v < y.num_nodes(); ++v)
      for (int t = 0; t < y.num_tasks(); ++t)
        if (y(v, t) > tol && y(v, t) < 1.0 - tol) insert(v, t);
  }

  void insert(int v, int t) {
    if (tasks_of_[static_cast<std::size_t>(v)].insert(t).second) {
      nodes_of_[static_cast<std::size_t>(t)].insert(v);
      ++edges_;
    }
  }
  void erase(int v, int t) {
    if (tasks_of_[static_cast<std::size_t>(v)].erase(t) > 0) {
      nodes_of_[static_cast<std::size_t>(t)].erase(v);
      --edges_;
    }
  }

  bool empty() const { return edges_ == 0; }
  int edge_count() const { return edges_; }
  int num_nodes() const { return static_cast<int>(tasks_of_.size()); }
  int num_tasks() const { return static_cast<int>(nodes_of_.size()); }
  const std::set<int>& tasks_of(int v) const { return tasks_of_[static_cast<std::size_t>(v)]; }
  const std::set<int>& nodes_of(int t) const { return nodes_of_[static_cast<std::size_t>(t)]; }

  int degree(int global) const {
    return global < num_nodes() ? static_cast<int>(tasks_of_[static_cast<std::size_t>(global)].size())
                                : static_cast<int>(nodes_of_[static_cast<std::size_t>(global - num_nodes())].size());
  }

 private:
  std::vector<std::set<int>> tasks_of_;  // per individual
  std::vector<std::set<int>> nodes_of_;  // per task
  int edges_ = 0;
};

struct Walk {
  std::vector<SupportEdge> edges;  ///< consecutive edges, alternating signs
  bool is_cycle = false;
};

namespace detail {

// neighbors of a global support node (individuals first, then tasks)
inline const std::set<int>* support_neighbors(const FractionalSupport& s, int global) {
  return global < s.num_nodes() ? &s.tasks_of(global) : &s.nodes_of(global - s.num_nodes());
}

inline SupportEdge make_edge(const FractionalSupport& s, int a, int b) {
  if (a < s.num_nodes()) return {a, b - s.num_nodes(), 0};
  return {b, a - s.num_nodes(), 0};
}

}  // namespace detail

/// Find a pipage walk: a cycle of the support if one exists (depth-first
/// search from the lowest-index node), otherwise a path both of whose
/// endpoints have degree 1. The edges alternate between the two matchings;
/// signs are +1 / -1 along the walk.
inline Walk find_walk(const FractionalSupport& support) {
  if (support.empty()) throw std::invalid_argument("find_walk: empty support");
  const int V = support.num_nodes();
  const int total = V + support.num_tasks();

  // cycle hunt: iterative DFS, neighbors in ascending order. In an undirected
  // DFS every non-tree edge reaches an ancestor, which closes a cycle.
  std::vector<int> parent(static_cast<std::size_t>(total), -2);  // -2: unvisited, -1: root
  struct Frame {
    int node;
    int parent;
    std::set<int>::const_iterator next, end;
    bool skipped_parent = false;
  };
  for (int start = 0; start < total; ++start) {
    if (parent[static_cast<std::size_t>(start)] != -2 || support.degree(start) == 0) continue;
    std::vector<Frame> stack;
    parent[static_cast<std::size_t>(start)] = -1;
    const auto* nb = detail::support_neighbors(support, start);
    auto global_nb = [&](int node, int other) { return node < V ? other + V : other; };
    stack.push_back({start, -1, nb->begin(), nb->end()});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next == f.end) {
        stack.pop_back();
        continue;
      }
      const int w = global_nb(f.node, *f.next);
      ++f.next;
      if (w == f.parent && !f.skipped_parent) {
        f.skipped_parent = true;  // the single tree edge back
        continue;
      }
      if (parent[static_cast<std::size_t>(w)] == -2) {
        parent[static_cast<std::size_t>(w)] = f.node;
        const auto* wn = detail::support_neighbors(support, w);
        stack.push_back({w, f.node, wn->begin(), wn->end()});
        continue;
      }
      // back edge (f.node, w): w is an ancestor on the stack
      Walk walk;
      walk.is_cycle = true;
      std::vector<int> chain;  // w ... f.node walking up the parent links
      for (int cur = f.node; cur != w; cur = parent[static_cast<std::size_t>(cur)]) {
        if (cur < 0) throw std::runtime_error("find_walk: back edge target is not an ancestor");
        chain.push_back(cur);
      }
      chain.push_back(w);
      std::reverse(chain.begin(), chain.end());  // w -> ... -> f.node
      for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        walk.edges.push_back(detail::make_edge(support, chain[i], chain[i + 1]));
      walk.edges.push_back(detail::make_edge(support, f.node, w));
      for (std::size_t i = 0; i < walk.edges.size(); ++i) walk.edges[i].sign = i % 2 == 0 ? +1 : -1;
      return walk;
    }
  }

  // forest: walk leaf to leaf, lowest indices first
  int start = -1;
  for (int g = 0; g < total && start < 0; ++g)
    if (support.degree(g) == 1) start = g;
  if (start < 0) throw std::runtime_error("find_walk: acyclic support without degree-1 node");
  Walk walk;
  int prev = -1;
  int cur = start;
  while (true) {
    const auto* nb = detail::support_neighbors(support, cur);
    int next = -1;
    for (int other : *nb) {
      const int g = cur < V ? other + V : other;
      if (g != prev) {
        next = g;
        break;
      }
    }
    if (next < 0) break;
    walk.edges.push_back(detail::make_edge(support, cur, next));
    prev = cur;
    cur = next;
    if (support.degree(cur) == 1) break;
  }
  if (start < V || cur < V)
    throw std::runtime_error(
        "find_walk: degree-1 individual in the support; fractional rows must sum to 1");
  for (std::size_t i = 0; i < walk.edges.size(); ++i) walk.edges[i].sign = i % 2 == 0 ? +1 : -1;
  return walk;
}

/// One pipage step: the walk, the two step sizes and (implicitly) the two
/// candidate solutions y(-eps1, C) and y(+eps2, C).
struct PipageStep {
  Walk walk;
  double eps1 = 0.0;  ///< max step with the first matching decreasing
  double eps2 = 0.0;  ///< max step with the first matching increasing
};

inline PipageStep plan_step(const FractionalSolution& y, Walk walk) {
  PipageStep step;
  step.eps1 = 2.0;
  step.eps2 = 2.0;
  for (const auto& e : walk.edges) {
    const double val = y(e.v, e.t);
    if (e.sign > 0) {
      step.eps1 = std::min(step.eps1, val);
      step.eps2 = std::min(step.eps2, 1.0 - val);
    } else {
      step.eps1 = std::min(step.eps1, 1.0 - val);
      step.eps2 = std::min(step.eps2, val);
    }
  }
  step.walk = std::move(walk);
  return step;
}

namespace detail {

// Objective change along the walk as a quadratic in eps:
// F(y + eps * sigma) - F(y) = linear * eps + quad * eps^2.
struct WalkDelta {
  double linear = 0.0;
  double quad = 0.0;
  double at(double eps) const { return linear * eps + quad * eps * eps; }
};

inline WalkDelta walk_delta(const Instance& inst, const FractionalSolution& y, const Walk& walk) {
  std::unordered_map<long long, int> sign;
  sign.reserve(walk.edges.size() * 2);
  const auto key = [&](int v, int t) { return static_cast<long long>(v) * inst.num_tasks() + t; };
  for (const auto& e : walk.edges) sign[key(e.v, e.t)] = e.sign;

  WalkDelta delta;
  for (const auto& e : walk.edges) {
    delta.linear += inst.lambda() * inst.preference(e.v, e.t) * e.sign;
    for (const auto& [u, w] : inst.neighbors(e.v)) {
      delta.linear -= w * e.sign * y(u, e.t);
      auto it = sign.find(key(u, e.t));
      if (it != sign.end()) delta.quad -= 0.5 * w * e.sign * it->second;
    }
  }
  return delta;
}

inline void apply_step(FractionalSolution& y, FractionalSupport& support, const Walk& walk, double eps) {
  for (const auto& e : walk.edges) {
    double val = y(e.v, e.t) + e.sign * eps;
    if (val <= kIntegralTol) val = 0.0;
    if (val >= 1.0 - kIntegralTol) val = 1.0;
    y(e.v, e.t) = val;
    if (val == 0.0 || val == 1.0) support.erase(e.v, e.t);
  }
}

/// Clamp, snap near-integral entries and force row sums to exactly 1 so the
/// support degrees of individuals are always 0 or >= 2. Tolerances here sit
/// well above the LP engine's.
inline FractionalSolution clean_fractional(const Instance& inst, const FractionalSolution& input, const char* who) {
  require_feasible(inst, input, who);
  FractionalSolution y = input;
  const double snap = 1e-6;
  for (int v = 0; v < y.num_nodes(); ++v) {
    double sum = 0.0;
    int largest_frac = -1;
    for (int t = 0; t < y.num_tasks(); ++t) {
      double val = std::clamp(y(v, t), 0.0, 1.0);
      if (val <= snap) val = 0.0;
      if (val >= 1.0 - snap) val = 1.0;
      y(v, t) = val;
      sum += val;
      if (val > 0.0 && val < 1.0 && (largest_frac < 0 || val > y(v, largest_frac))) largest_frac = t;
    }
    const double residual = 1.0 - sum;
    if (std::abs(residual) > snap * (y.num_tasks() + 1))
      throw std::invalid_argument(std::string(who) + ": row sum for '" + inst.node_id(v) + "' too far from 1");
    if (residual != 0.0) {
      if (largest_frac < 0) {
        if (std::abs(residual) > 0.0 && std::abs(residual) >= snap)
          throw std::invalid_argument(std::string(who) + ": integral row for '" + inst.node_id(v) + "' does not sum to 1");
        // integral row off by < snap can only be fp noise on an exact row
      } else {
        double val = y(v, largest_frac) + residual;
        if (val <= kIntegralTol) val = 0.0;
        if (val >= 1.0 - kIntegralTol) val = 1.0;
        y(v, largest_frac) = val;
      }
    }
  }
  // re-validate capacities after snapping
  for (int t = 0; t < y.num_tasks(); ++t)
    if (y.col_sum(t) > inst.capacity(t) + kFeasTol * 2)
      throw std::invalid_argument(std::string(who) + ": column sum for '" + inst.task_id(t) + "' exceeds capacity");
  return y;
}

inline Assignment extract_assignment(const Instance& inst, const FractionalSolution& y, const char* who) {
  Assignment x(std::vector<int>(static_cast<std::size_t>(inst.num_nodes()), -1));
  for (int v = 0; v < inst.num_nodes(); ++v) {
    int chosen = -1;
    for (int t = 0; t < inst.num_tasks(); ++t) {
      if (y(v, t) == 1.0) {
        if (chosen >= 0)
          throw std::runtime_error(std::string(who) + ": node '" + inst.node_id(v) + "' rounded onto two tasks");
        chosen = t;
      } else if (y(v, t) != 0.0) {
        throw std::runtime_error(std::string(who) + ": node '" + inst.node_id(v) + "' still fractional after rounding");
      }
    }
    if (chosen < 0) throw std::runtime_error(std::string(who) + ": node '" + inst.node_id(v) + "' rounded onto no task");
    x[v] = chosen;
  }
  const FeasibilityReport report = feasible(inst, x);
  if (!report.ok)
    throw std::runtime_error(std::string(who) + ": rounding broke feasibility: " + report.violations.front());
  return x;
}

}  // namespace detail

/// Deterministic pipage rounding: repeatedly perturb along a support walk to
/// whichever endpoint has the larger objective, until y is integral. The
/// result is feasible and satisfies F(x) >= F(y) - 1e-9 * max(1, |F(y)|).
inline Assignment pipage_round(const Instance& inst, const FractionalSolution& input) {
  FractionalSolution y = detail::clean_fractional(inst, input, "pipage_round");
  const double f_start = detail::objective_unchecked(inst, y).total;
  const double step_guard = 1e-9 * std::max(1.0, std::abs(f_start));
  FractionalSupport support(y);
  long guard = 2L * support.edge_count() + 8;

  while (!support.empty()) {
    if (--guard < 0) throw std::runtime_error("pipage_round: support not shrinking");
    const PipageStep step = plan_step(y, find_walk(support));
    if (step.eps1 <= 0.0 || step.eps2 <= 0.0) {
      // snapped coordinate still listed: finalize it and rebuild
      detail::apply_step(y, support, step.walk, 0.0);
      continue;
    }
    const detail::WalkDelta delta = detail::walk_delta(inst, y, step.walk);
    const double down = delta.at(-step.eps1);
    const double up = delta.at(step.eps2);
    // the walk objective is quadratic with nonnegative leading coefficient,
    // so the better endpoint can never lose value
    if (std::max(down, up) < -step_guard)
      throw std::runtime_error("pipage_round: both step endpoints decrease F by " +
                               std::to_string(-std::max(down, up)));
    detail::apply_step(y, support, step.walk, down > up ? -step.eps1 : step.eps2);
  }

  Assignment x = detail::extract_assignment(inst, y, "pipage_round");
  const double f_end = evaluate_objective(inst, x).total;
  if (f_end < f_start - 1e-9 * std::max(1.0, std::abs(f_start)))
    throw std::runtime_error("pipage_round: objective decreased from " + std::to_string(f_start) + " to " +
                             std::to_string(f_end));
  return x;
}

/// Randomized pipage rounding: per step pick y(-eps1, C) with probability
/// eps2 / (eps1 + eps2), else y(+eps2, C). Never evaluates the objective;
/// deterministic for a fixed seed; preserves marginals in expectation.
inline Assignment randomized_pipage_round(const Instance& inst, const FractionalSolution& input, std::uint64_t seed) {
  FractionalSolution y = detail::clean_fractional(inst, input, "randomized_pipage_round");
  FractionalSupport support(y);
  Rng rng(seed);
  long guard = 2L * support.edge_count() + 8;

  while (!support.empty()) {
    if (--guard < 0) throw std::runtime_error("randomized_pipage_round: support not shrinking");
    const PipageStep step = plan_step(y, find_walk(support));
    if (step.eps1 <= 0.0 || step.eps2 <= 0.0) {
      detail::apply_step(y, support, step.walk, 0.0);
      continue;
    }
    const bool low = rng.uniform01() < step.eps2 / (step.eps1 + step.eps2);
    detail::apply_step(y, support, step.walk, low ? -step.eps1 : step.eps2);
  }
  return detail::extract_assignment(inst, y, "randomized_pipage_round");
}

}  // namespace teamcut
