#pragma once

// Test-only helpers: independently written oracles and random generators.
// Everything here must stay independent of the library paths it checks.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "teamcut/instance.hpp"
#include "teamcut/rng.hpp"

namespace testsupport {

using teamcut::Assignment;
using teamcut::FractionalSolution;
using teamcut::Instance;
using teamcut::PrefEntry;
using teamcut::Rng;
using teamcut::WeightedPair;

inline std::vector<std::string> make_ids(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Naive objective oracle: a second, independently written evaluator that
/// loops over all node pairs and looks edges up in a map.
inline double naive_objective(const Instance& inst, const FractionalSolution& y) {
  std::map<std::pair<int, int>, double> weight;
  for (const auto& e : inst.edges()) weight[{e.u, e.v}] = e.weight;
  double total = 0.0;
  for (int v = 0; v < inst.num_nodes(); ++v)
    for (int t = 0; t < inst.num_tasks(); ++t) total += inst.lambda() * inst.preference(v, t) * y(v, t);
  for (int u = 0; u < inst.num_nodes(); ++u)
    for (int v = u + 1; v < inst.num_nodes(); ++v) {
      auto it = weight.find({u, v});
      if (it == weight.end()) continue;
      double co = 0.0;
      for (int t = 0; t < inst.num_tasks(); ++t) co += y(u, t) * y(v, t);
      total += it->second * (1.0 - co);
    }
  return total;
}

inline double naive_objective(const Instance& inst, const Assignment& x) {
  return naive_objective(inst, FractionalSolution::from_assignment(inst, x));
}

/// Naive feasibility: recount everything from scratch.
inline bool naive_feasible(const Instance& inst, const Assignment& x) {
  if (x.size() != inst.num_nodes()) return false;
  std::vector<int> load(static_cast<std::size_t>(inst.num_tasks()), 0);
  for (int v = 0; v < inst.num_nodes(); ++v) {
    if (x.task_of(v) < 0 || x.task_of(v) >= inst.num_tasks()) return false;
    ++load[static_cast<std::size_t>(x.task_of(v))];
  }
  for (int t = 0; t < inst.num_tasks(); ++t)
    if (load[static_cast<std::size_t>(t)] > inst.capacity(t)) return false;
  return true;
}

struct RandomInstanceOptions {
  int min_nodes = 4;
  int max_nodes = 8;
  int min_tasks = 2;
  int max_tasks = 3;
  double edge_probability = 0.5;
  double max_weight = 2.0;
  double pref_probability = 0.7;
  double lambda_max = 2.0;        ///< lambda ~ U[0, lambda_max]
  bool loose_capacities = false;  ///< sum p >= 2|V| when set
};

inline Instance random_instance(Rng& rng, const RandomInstanceOptions& opt = {}) {
  const int V = opt.min_nodes + static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.max_nodes - opt.min_nodes + 1)));
  const int T = opt.min_tasks + static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.max_tasks - opt.min_tasks + 1)));
  const auto nodes = make_ids("v", V);
  const auto tasks = make_ids("t", T);

  std::vector<int> capacities(static_cast<std::size_t>(T), 0);
  const int base = opt.loose_capacities ? (2 * V + T - 1) / T : (V + T - 1) / T;
  int total = 0;
  for (int t = 0; t < T; ++t) {
    capacities[static_cast<std::size_t>(t)] = base + static_cast<int>(rng.below(3));
    total += capacities[static_cast<std::size_t>(t)];
  }
  if (total < V) capacities[0] += V - total;

  std::vector<WeightedPair> edges;
  for (int u = 0; u < V; ++u)
    for (int v = u + 1; v < V; ++v)
      if (rng.bernoulli(opt.edge_probability))
        edges.push_back({nodes[static_cast<std::size_t>(u)], nodes[static_cast<std::size_t>(v)],
                         rng.uniform01() * opt.max_weight});

  std::vector<PrefEntry> prefs;
  for (int v = 0; v < V; ++v)
    for (int t = 0; t < T; ++t)
      if (rng.bernoulli(opt.pref_probability))
        prefs.push_back({nodes[static_cast<std::size_t>(v)], tasks[static_cast<std::size_t>(t)], rng.uniform01()});

  return Instance(nodes, tasks, capacities, edges, prefs, rng.uniform01() * opt.lambda_max);
}

/// Uniformly-ish random feasible assignment (random task among those with
/// remaining capacity, independent of the library's random baseline).
inline Assignment random_feasible_assignment(const Instance& inst, Rng& rng) {
  std::vector<int> remaining(inst.capacities().begin(), inst.capacities().end());
  std::vector<int> task_of(static_cast<std::size_t>(inst.num_nodes()), -1);
  for (int v = 0; v < inst.num_nodes(); ++v) {
    std::vector<int> open;
    for (int t = 0; t < inst.num_tasks(); ++t)
      if (remaining[static_cast<std::size_t>(t)] > 0) open.push_back(t);
    const int t = open[rng.below(open.size())];
    task_of[static_cast<std::size_t>(v)] = t;
    --remaining[static_cast<std::size_t>(t)];
  }
  return Assignment(task_of);
}

/// Random feasible fractional point: a convex combination of feasible
/// assignments (feasible by convexity, with plenty of fractional entries).
inline FractionalSolution random_fractional(const Instance& inst, Rng& rng, int mixes = 4) {
  FractionalSolution y(inst.num_nodes(), inst.num_tasks());
  std::vector<double> weights;
  double sum = 0.0;
  for (int k = 0; k < mixes; ++k) {
    weights.push_back(rng.uniform01() + 0.05);
    sum += weights.back();
  }
  for (int k = 0; k < mixes; ++k) {
    const Assignment x = random_feasible_assignment(inst, rng);
    for (int v = 0; v < inst.num_nodes(); ++v) y(v, x.task_of(v)) += weights[static_cast<std::size_t>(k)] / sum;
  }
  return y;
}

/// Dirichlet(1,..,1) rows; requires loose capacities, resampled on capacity
/// overflow (bounded attempts).
inline FractionalSolution dirichlet_fractional(const Instance& inst, Rng& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    FractionalSolution y(inst.num_nodes(), inst.num_tasks());
    for (int v = 0; v < inst.num_nodes(); ++v) {
      double sum = 0.0;
      std::vector<double> draws(static_cast<std::size_t>(inst.num_tasks()), 0.0);
      for (int t = 0; t < inst.num_tasks(); ++t) {
        draws[static_cast<std::size_t>(t)] = -std::log(1.0 - rng.uniform01() + 1e-300);
        sum += draws[static_cast<std::size_t>(t)];
      }
      for (int t = 0; t < inst.num_tasks(); ++t) y(v, t) = draws[static_cast<std::size_t>(t)] / sum;
    }
    bool ok = true;
    for (int t = 0; t < inst.num_tasks() && ok; ++t)
      if (y.col_sum(t) > inst.capacity(t)) ok = false;
    if (ok) return y;
  }
  throw std::runtime_error("dirichlet_fractional: capacities too tight for rejection sampling");
}

/// Visit every feasible integral assignment (test-scale instances only).
template <typename Fn>
inline void for_each_feasible(const Instance& inst, Fn&& fn) {
  std::vector<int> current(static_cast<std::size_t>(inst.num_nodes()), -1);
  std::vector<int> load(static_cast<std::size_t>(inst.num_tasks()), 0);
  const auto rec = [&](auto&& self, int v) -> void {
    if (v == inst.num_nodes()) {
      fn(Assignment(current));
      return;
    }
    for (int t = 0; t < inst.num_tasks(); ++t) {
      if (load[static_cast<std::size_t>(t)] >= inst.capacity(t)) continue;
      current[static_cast<std::size_t>(v)] = t;
      ++load[static_cast<std::size_t>(t)];
      self(self, v + 1);
      current[static_cast<std::size_t>(v)] = -1;
      --load[static_cast<std::size_t>(t)];
    }
  };
  rec(rec, 0);
}

/// The greedy counterexample fixture: three individuals, two tasks,
/// preferences 1-eps and eps, one conflict edge of weight W.
inline Instance greedy_counterexample(double W, double eps, double lambda = 1.0) {
  return Instance({"u", "v", "z"}, {"t1", "t2"}, {1, 2}, {{"v", "z", W}},
                  {{"u", "t1", 1.0 - eps}, {"v", "t2", eps}}, lambda);
}

/// Max-Cut reduction fixture: two tasks with capacity |V|, zero preferences.
inline Instance max_cut_instance(const std::vector<WeightedPair>& edges, int num_nodes, double lambda = 0.0) {
  return Instance(make_ids("v", num_nodes), {"t1", "t2"}, {num_nodes, num_nodes}, edges, {}, lambda);
}

/// Brute-force maximum cut over all bipartitions.
inline double max_cut_value(const std::vector<WeightedPair>& edges, const std::vector<std::string>& nodes) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);
  double best = 0.0;
  for (unsigned mask = 0; mask < (1u << nodes.size()); ++mask) {
    double cut = 0.0;
    for (const auto& e : edges) {
      const int u = index.at(e.u);
      const int v = index.at(e.v);
      if (((mask >> u) & 1u) != ((mask >> v) & 1u)) cut += e.weight;
    }
    best = std::max(best, cut);
  }
  return best;
}

}  // namespace testsupport
