#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "teamcut/instance.hpp"
#include "teamcut/relaxation.hpp"
#include "teamcut/rng.hpp"

namespace teamcut {

/// Keep each conflict edge independently with probability p; everything else
/// (preferences, capacities, lambda) is untouched. Seed-deterministic.
inline Instance sparsify(const Instance& inst, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("sparsify: p must be in (0, 1]");
  Rng rng(seed);
  std::vector<WeightedPair> kept;
  kept.reserve(inst.edges().size());
  for (const auto& e : inst.edges()) {
    const bool keep = p >= 1.0 || rng.bernoulli(p);
    if (keep) kept.push_back({inst.node_id(e.u), inst.node_id(e.v), e.weight});
  }
  std::vector<PrefEntry> prefs;
  for (int v = 0; v < inst.num_nodes(); ++v)
    for (int t = 0; t < inst.num_tasks(); ++t)
      if (inst.preference(v, t) != 0.0) prefs.push_back({inst.node_id(v), inst.task_id(t), inst.preference(v, t)});
  return Instance(inst.node_ids(), inst.task_ids(), inst.capacities(), kept, prefs, inst.lambda());
}

struct Supernode {
  int id = 0;
  std::vector<int> members;  ///< original node indices, ascending
  int size() const { return static_cast<int>(members.size()); }
};

namespace detail {

// friend graph = complement of the conflict graph
inline std::vector<std::vector<int>> friend_adjacency(const Instance& inst) {
  const int V = inst.num_nodes();
  std::vector<std::set<int>> conflicts(static_cast<std::size_t>(V));
  for (const auto& e : inst.edges()) {
    conflicts[static_cast<std::size_t>(e.u)].insert(e.v);
    conflicts[static_cast<std::size_t>(e.v)].insert(e.u);
  }
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(V));
  for (int u = 0; u < V; ++u)
    for (int v = 0; v < V; ++v)
      if (v != u && !conflicts[static_cast<std::size_t>(u)].count(v)) adj[static_cast<std::size_t>(u)].push_back(v);
  return adj;
}

inline std::vector<double> mean_preferences(const Instance& inst, const std::vector<int>& members) {
  std::vector<double> mean(static_cast<std::size_t>(inst.num_tasks()), 0.0);
  for (int v : members)
    for (int t = 0; t < inst.num_tasks(); ++t) mean[static_cast<std::size_t>(t)] += inst.preference(v, t);
  for (double& m : mean) m /= static_cast<double>(members.size());
  return mean;
}

inline double linf_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace detail

/// Partition V into supernodes by label propagation on the friend graph
/// (asynchronous, most-frequent neighbor label, ties to the smallest label),
/// then merge communities whose mean preference vectors differ by at most 0.1
/// in L-infinity. target_supernode_size > 0 caps the size of merged
/// communities; isolated nodes stay singletons.
inline std::vector<Supernode> compact_partition(const Instance& inst, int target_supernode_size = 0) {
  const int V = inst.num_nodes();
  const auto adj = detail::friend_adjacency(inst);

  std::vector<int> label(static_cast<std::size_t>(V));
  for (int v = 0; v < V; ++v) label[static_cast<std::size_t>(v)] = v;
  for (int pass = 0; pass < 50; ++pass) {
    bool changed = false;
    for (int v = 0; v < V; ++v) {
      if (adj[static_cast<std::size_t>(v)].empty()) continue;
      std::map<int, int> freq;
      for (int u : adj[static_cast<std::size_t>(v)]) ++freq[label[static_cast<std::size_t>(u)]];
      int best_label = label[static_cast<std::size_t>(v)];
      int best_count = 0;
      for (const auto& [lab, count] : freq)
        if (count > best_count) {
          best_count = count;
          best_label = lab;
        }
      if (best_label != label[static_cast<std::size_t>(v)]) {
        label[static_cast<std::size_t>(v)] = best_label;
        changed = true;
      }
    }
    if (!changed) break;
  }

  // communities ordered by smallest member
  std::map<int, std::vector<int>> by_label;
  for (int v = 0; v < V; ++v) by_label[label[static_cast<std::size_t>(v)]].push_back(v);
  std::vector<std::vector<int>> groups;
  for (auto& [lab, members] : by_label) groups.push_back(std::move(members));
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

  // merge preference-compatible communities
  std::vector<std::vector<double>> means;
  means.reserve(groups.size());
  for (const auto& g : groups) means.push_back(detail::mean_preferences(inst, g));
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < groups.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < groups.size() && !merged; ++j) {
        const int combined = static_cast<int>(groups[i].size() + groups[j].size());
        if (target_supernode_size > 0 && combined > target_supernode_size) continue;
        if (detail::linf_distance(means[i], means[j]) > 0.1) continue;
        groups[i].insert(groups[i].end(), groups[j].begin(), groups[j].end());
        std::sort(groups[i].begin(), groups[i].end());
        means[i] = detail::mean_preferences(inst, groups[i]);
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
        means.erase(means.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
    }
  }

  std::vector<Supernode> out;
  out.reserve(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) out.push_back({static_cast<int>(i), std::move(groups[i])});
  return out;
}

/// The coarsened instance: supernode conflict weights sum the original
/// cross-weights, preferences are member means, intra-supernode conflict
/// weight is dropped from the program and reported.
struct SuperInstance {
  Instance instance;
  std::vector<int> sizes;
  std::vector<int> supernode_of;          ///< original node -> supernode index
  double ignored_conflict_weight = 0.0;   ///< weight inside supernodes
};

inline SuperInstance build_super_instance(const Instance& inst, const std::vector<Supernode>& partition) {
  const int V = inst.num_nodes();
  std::vector<int> owner(static_cast<std::size_t>(V), -1);
  for (const auto& s : partition)
    for (int v : s.members) {
      if (v < 0 || v >= V || owner[static_cast<std::size_t>(v)] >= 0)
        throw std::invalid_argument("build_super_instance: partition must cover each node exactly once");
      owner[static_cast<std::size_t>(v)] = s.id;
    }
  for (int v = 0; v < V; ++v)
    if (owner[static_cast<std::size_t>(v)] < 0)
      throw std::invalid_argument("build_super_instance: node '" + inst.node_id(v) + "' not covered");

  std::vector<std::string> ids;
  std::vector<int> sizes;
  for (const auto& s : partition) {
    ids.push_back("S" + std::to_string(s.id));
    sizes.push_back(s.size());
  }

  std::map<std::pair<int, int>, double> super_edges;
  double ignored = 0.0;
  for (const auto& e : inst.edges()) {
    int a = owner[static_cast<std::size_t>(e.u)];
    int b = owner[static_cast<std::size_t>(e.v)];
    if (a == b) {
      ignored += e.weight;
      continue;
    }
    if (a > b) std::swap(a, b);
    super_edges[{a, b}] += e.weight;
  }
  std::vector<WeightedPair> conflicts;
  for (const auto& [key, w] : super_edges)
    conflicts.push_back({ids[static_cast<std::size_t>(key.first)], ids[static_cast<std::size_t>(key.second)], w});

  std::vector<PrefEntry> prefs;
  for (const auto& s : partition) {
    const auto mean = detail::mean_preferences(inst, s.members);
    for (int t = 0; t < inst.num_tasks(); ++t)
      if (mean[static_cast<std::size_t>(t)] != 0.0)
        prefs.push_back({ids[static_cast<std::size_t>(s.id)], inst.task_id(t), mean[static_cast<std::size_t>(t)]});
  }

  SuperInstance out{Instance(ids, inst.task_ids(), inst.capacities(), conflicts, prefs, inst.lambda()),
                    std::move(sizes), std::move(owner), ignored};
  return out;
}

struct CompactSolveResult {
  FractionalSolution solution;            ///< unrolled to the original space
  LPResult super_result;                  ///< LP outcome in supernode space
  double ignored_conflict_weight = 0.0;   ///< reported, not optimized
};

/// Solve the size-weighted relaxation over the supernodes and unroll: every
/// member of a supernode receives the supernode's row.
inline CompactSolveResult compact_solve(const Instance& inst, const std::vector<Supernode>& partition,
                                        RelaxationKind kind, lp::SimplexOptions options = lp::SimplexOptions()) {
  SuperInstance super = build_super_instance(inst, partition);
  CompactSolveResult out;
  out.ignored_conflict_weight = super.ignored_conflict_weight;
  out.super_result = solve_compact_relaxation(super.instance, super.sizes, kind, options);
  out.solution = FractionalSolution(inst.num_nodes(), inst.num_tasks());
  for (int v = 0; v < inst.num_nodes(); ++v) {
    const int s = super.supernode_of[static_cast<std::size_t>(v)];
    for (int t = 0; t < inst.num_tasks(); ++t) out.solution(v, t) = out.super_result.solution(s, t);
  }
  if (out.super_result.status == LPStatus::Optimal) detail::require_feasible(inst, out.solution, "compact_solve");
  return out;
}

}  // namespace teamcut
