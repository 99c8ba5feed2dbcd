#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "teamcut/instance.hpp"

namespace teamcut {

enum class ExactStatus { Optimal, BudgetExceeded };

struct ExactResult {
  Assignment assignment;
  double value = 0.0;
  ExactStatus status = ExactStatus::Optimal;
  double upper_bound = 0.0;  ///< certified bound; equals value when optimal
  long nodes_expanded = 0;
};

namespace detail {

struct ExactSearch {
  const Instance& inst;
  long budget;
  std::vector<int> order;                  // search position -> node, by decreasing conflict degree
  std::vector<std::vector<int>> task_order;  // per node, by decreasing lambda*c
  std::vector<double> pref_suffix;         // optimistic preference mass from position k on
  std::vector<int> partial;                // node -> task or -1
  std::vector<int> load;
  double partial_value = 0.0;
  double undecided_weight = 0.0;
  double best_value = -1.0;
  std::vector<int> best;
  long expanded = 0;
  bool exhausted_budget = false;

  explicit ExactSearch(const Instance& instance, long node_budget) : inst(instance), budget(node_budget) {
    const int V = inst.num_nodes();
    const int T = inst.num_tasks();
    order.resize(static_cast<std::size_t>(V));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> degree(static_cast<std::size_t>(V), 0.0);
    for (const auto& e : inst.edges()) {
      degree[static_cast<std::size_t>(e.u)] += e.weight;
      degree[static_cast<std::size_t>(e.v)] += e.weight;
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)];
    });

    task_order.assign(static_cast<std::size_t>(V), {});
    for (int v = 0; v < V; ++v) {
      auto& tasks = task_order[static_cast<std::size_t>(v)];
      tasks.resize(static_cast<std::size_t>(T));
      std::iota(tasks.begin(), tasks.end(), 0);
      std::stable_sort(tasks.begin(), tasks.end(), [&](int a, int b) {
        return inst.lambda() * inst.preference(v, a) > inst.lambda() * inst.preference(v, b);
      });
    }

    pref_suffix.assign(static_cast<std::size_t>(V) + 1, 0.0);
    for (int k = V - 1; k >= 0; --k) {
      const int v = order[static_cast<std::size_t>(k)];
      double best_pref = 0.0;
      for (int t = 0; t < T; ++t) best_pref = std::max(best_pref, inst.preference(v, t));
      pref_suffix[static_cast<std::size_t>(k)] =
          pref_suffix[static_cast<std::size_t>(k) + 1] + inst.lambda() * best_pref;
    }

    partial.assign(static_cast<std::size_t>(V), -1);
    load.assign(static_cast<std::size_t>(T), 0);
    undecided_weight = inst.total_conflict_weight();
  }

  // admissible bound: exact value of the decided part, best preference for
  // every undecided individual, every undecided conflict edge counted as cut
  double bound(int position) const {
    return partial_value + pref_suffix[static_cast<std::size_t>(position)] + undecided_weight;
  }

  void offer_incumbent() {
    if (best_value < 0.0 || partial_value > best_value + 1e-12) {
      best_value = partial_value;
      best = partial;
      return;
    }
    // value tie within tolerance: keep the lexicographically smallest
    if (partial_value >= best_value - 1e-12 && partial < best) {
      best_value = partial_value;
      best = partial;
    }
  }

  void dfs(int position) {
    if (exhausted_budget) return;
    if (position == inst.num_nodes()) {
      offer_incumbent();
      return;
    }
    if (++expanded > budget) {
      exhausted_budget = true;
      return;
    }
    // strict pruning only, so equal-value optima stay reachable for the
    // lexicographic tie rule
    if (best_value >= 0.0 && bound(position) < best_value - 1e-12) return;

    const int v = order[static_cast<std::size_t>(position)];
    for (int t : task_order[static_cast<std::size_t>(v)]) {
      if (load[static_cast<std::size_t>(t)] >= inst.capacity(t)) continue;
      double decided_delta = 0.0;
      double gained = 0.0;
      for (const auto& [u, w] : inst.neighbors(v)) {
        if (partial[static_cast<std::size_t>(u)] < 0) continue;
        decided_delta += w;
        if (partial[static_cast<std::size_t>(u)] != t) gained += w;
      }
      partial[static_cast<std::size_t>(v)] = t;
      ++load[static_cast<std::size_t>(t)];
      partial_value += inst.lambda() * inst.preference(v, t) + gained;
      undecided_weight -= decided_delta;

      dfs(position + 1);

      partial[static_cast<std::size_t>(v)] = -1;
      --load[static_cast<std::size_t>(t)];
      partial_value -= inst.lambda() * inst.preference(v, t) + gained;
      undecided_weight += decided_delta;
      if (exhausted_budget) return;
    }
  }
};

}  // namespace detail

/// Provably optimal assignment by branch-and-bound. Individuals are expanded
/// by decreasing conflict degree, tasks by decreasing lambda*c. Among optima
/// the lexicographically smallest assignment (by node index) is returned.
/// When the node budget runs out the best incumbent and a certified upper
/// bound are reported instead.
inline ExactResult solve_exact(const Instance& inst, long node_budget = 20000000) {
  detail::ExactSearch search(inst, node_budget);
  search.dfs(0);
  ExactResult out;
  out.nodes_expanded = search.expanded;
  if (search.best_value < 0.0) {
    // budget too small to even reach one leaf: fall back to a greedy fill so
    // an incumbent always exists
    std::vector<int> fill(static_cast<std::size_t>(inst.num_nodes()), -1);
    std::vector<int> load(static_cast<std::size_t>(inst.num_tasks()), 0);
    for (int v = 0; v < inst.num_nodes(); ++v)
      for (int t = 0; t < inst.num_tasks(); ++t)
        if (load[static_cast<std::size_t>(t)] < inst.capacity(t)) {
          fill[static_cast<std::size_t>(v)] = t;
          ++load[static_cast<std::size_t>(t)];
          break;
        }
    out.assignment = Assignment(fill);
    out.value = evaluate_objective(inst, out.assignment).total;
  } else {
    out.assignment = Assignment(search.best);
    out.value = search.best_value;
  }
  if (search.exhausted_budget) {
    out.status = ExactStatus::BudgetExceeded;
    out.upper_bound = search.pref_suffix[0] + inst.total_conflict_weight();  // root bound
  } else {
    out.status = ExactStatus::Optimal;
    out.upper_bound = out.value;
  }
  return out;
}

/// Plain exhaustive enumeration, guarded to |T|^|V| <= 10^7 states. Serves as
/// the independent oracle for the branch-and-bound path.
inline ExactResult enumerate_exact(const Instance& inst) {
  const int V = inst.num_nodes();
  const int T = inst.num_tasks();
  double states = 1.0;
  for (int v = 0; v < V; ++v) {
    states *= T;
    if (states > 1e7) throw std::invalid_argument("enumerate_exact: |T|^|V| exceeds 10^7");
  }

  std::vector<int> current(static_cast<std::size_t>(V), -1);
  std::vector<int> load(static_cast<std::size_t>(T), 0);
  ExactResult out;
  double best = -1.0;
  std::vector<int> best_assignment;
  double value = 0.0;
  long leaves = 0;

  // iterate node 0 slowest so the first optimum found is lexicographically
  // smallest; the value is maintained incrementally (nodes arrive in index
  // order, so decided neighbors of v are exactly those with index < v)
  const std::function<void(int)> rec = [&](int v) {
    if (v == V) {
      ++leaves;
      if (value > best + 1e-12) {
        best = value;
        best_assignment = current;
      }
      return;
    }
    for (int t = 0; t < T; ++t) {
      if (load[static_cast<std::size_t>(t)] >= inst.capacity(t)) continue;
      double delta = inst.lambda() * inst.preference(v, t);
      for (const auto& [u, w] : inst.neighbors(v))
        if (u < v && current[static_cast<std::size_t>(u)] != t) delta += w;
      current[static_cast<std::size_t>(v)] = t;
      ++load[static_cast<std::size_t>(t)];
      value += delta;
      rec(v + 1);
      current[static_cast<std::size_t>(v)] = -1;
      --load[static_cast<std::size_t>(t)];
      value -= delta;
    }
  };
  rec(0);
  out.assignment = Assignment(best_assignment);
  out.value = best;
  out.upper_bound = best;
  out.nodes_expanded = leaves;
  return out;
}

}  // namespace teamcut
