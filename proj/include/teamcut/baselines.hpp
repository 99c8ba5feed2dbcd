#pragma once

#include <stdexcept>
#include <vector>

#include "teamcut/instance.hpp"
#include "teamcut/rng.hpp"

namespace teamcut {

/// Greedy baseline: |V| rounds, each assigning the (unassigned individual,
/// non-full task) pair with the largest objective increase. On the partial
/// assignment, a conflict edge counts as cut only once both endpoints are
/// placed on different tasks; edges with an unassigned endpoint contribute 0,
/// so the final round's running total equals F exactly. Ties break on
/// (node index, task index).
inline Assignment greedy(const Instance& inst) {
  const int V = inst.num_nodes();
  const int T = inst.num_tasks();
  std::vector<int> task_of(static_cast<std::size_t>(V), -1);
  std::vector<int> load(static_cast<std::size_t>(T), 0);
  // per unassigned v: total assigned-neighbor weight, and the share on each task
  std::vector<double> assigned_weight(static_cast<std::size_t>(V), 0.0);
  std::vector<double> same_task(static_cast<std::size_t>(V) * static_cast<std::size_t>(T), 0.0);

  for (int round = 0; round < V; ++round) {
    int best_v = -1;
    int best_t = -1;
    double best_delta = 0.0;
    for (int v = 0; v < V; ++v) {
      if (task_of[static_cast<std::size_t>(v)] >= 0) continue;
      for (int t = 0; t < T; ++t) {
        if (load[static_cast<std::size_t>(t)] >= inst.capacity(t)) continue;
        const double delta = inst.lambda() * inst.preference(v, t) + assigned_weight[static_cast<std::size_t>(v)] -
                             same_task[static_cast<std::size_t>(v) * T + static_cast<std::size_t>(t)];
        if (best_v < 0 || delta > best_delta) {
          best_v = v;
          best_t = t;
          best_delta = delta;
        }
      }
    }
    if (best_v < 0) throw std::runtime_error("greedy: no feasible pair left");  // capacities sum >= |V|
    task_of[static_cast<std::size_t>(best_v)] = best_t;
    ++load[static_cast<std::size_t>(best_t)];
    for (const auto& [u, w] : inst.neighbors(best_v)) {
      if (task_of[static_cast<std::size_t>(u)] >= 0) continue;
      assigned_weight[static_cast<std::size_t>(u)] += w;
      same_task[static_cast<std::size_t>(u) * T + static_cast<std::size_t>(best_t)] += w;
    }
  }
  return Assignment(task_of);
}

/// Random baseline: individuals in index order each draw a task uniformly
/// among those with remaining capacity. Seed-deterministic.
inline Assignment random_assign(const Instance& inst, std::uint64_t seed) {
  const int V = inst.num_nodes();
  const int T = inst.num_tasks();
  Rng rng(seed);
  std::vector<int> task_of(static_cast<std::size_t>(V), -1);
  std::vector<int> remaining(inst.capacities().begin(), inst.capacities().end());
  for (int v = 0; v < V; ++v) {
    int open = 0;
    for (int t = 0; t < T; ++t)
      if (remaining[static_cast<std::size_t>(t)] > 0) ++open;
    if (open == 0) throw std::runtime_error("random_assign: capacities exhausted");
    int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(open)));
    for (int t = 0; t < T; ++t) {
      if (remaining[static_cast<std::size_t>(t)] <= 0) continue;
      if (pick-- == 0) {
        task_of[static_cast<std::size_t>(v)] = t;
        --remaining[static_cast<std::size_t>(t)];
        break;
      }
    }
  }
  return Assignment(task_of);
}

}  // namespace teamcut
