#include <catch2/catch.hpp>

#include "support.hpp"
#include "teamcut/io.hpp"
#include "teamcut/speedups.hpp"

using namespace teamcut;
using testsupport::make_ids;

TEST_CASE("sparsify with p = 1 is the identity on edges") {
  Rng rng(501);
  const auto inst = testsupport::random_instance(rng, {.edge_probability = 0.7});
  const Instance sparse = sparsify(inst, 1.0, 99);
  REQUIRE(sparse.edges().size() == inst.edges().size());
  for (std::size_t i = 0; i < inst.edges().size(); ++i) {
    REQUIRE(sparse.edges()[i].u == inst.edges()[i].u);
    REQUIRE(sparse.edges()[i].v == inst.edges()[i].v);
    REQUIRE(sparse.edges()[i].weight == inst.edges()[i].weight);
  }
}

TEST_CASE("sparsify touches nothing but the conflict edges") {
  Rng rng(503);
  const auto inst = testsupport::random_instance(rng, {.edge_probability = 0.9});
  const Instance sparse = sparsify(inst, 0.4, 7);
  REQUIRE(sparse.num_nodes() == inst.num_nodes());
  REQUIRE(sparse.capacities() == inst.capacities());
  REQUIRE(sparse.lambda() == inst.lambda());
  for (int v = 0; v < inst.num_nodes(); ++v)
    for (int t = 0; t < inst.num_tasks(); ++t) REQUIRE(sparse.preference(v, t) == inst.preference(v, t));
  // kept edges form a subset with original weights
  std::map<std::pair<int, int>, double> original;
  for (const auto& e : inst.edges()) original[{e.u, e.v}] = e.weight;
  for (const auto& e : sparse.edges()) {
    REQUIRE(original.count({e.u, e.v}) == 1);
    REQUIRE(original[{e.u, e.v}] == e.weight);
  }
  REQUIRE_THROWS_AS(sparsify(inst, 0.0, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(sparsify(inst, 1.5, 1), std::invalid_argument);
}

TEST_CASE("sparsify retention rate concentrates around p") {
  // one biggish instance, many seeds: mean kept fraction within 3 SE of p
  const int V = 30;
  std::vector<WeightedPair> edges;
  for (int u = 0; u < V; ++u)
    for (int v = u + 1; v < V; ++v) edges.push_back({"v" + std::to_string(u), "v" + std::to_string(v), 1.0});
  const Instance inst(make_ids("v", V), {"a", "b"}, {V, V}, edges, {}, 0.0);
  const double p = 0.3;
  const int seeds = 400;
  double kept = 0.0;
  for (int s = 0; s < seeds; ++s) kept += static_cast<double>(sparsify(inst, p, static_cast<std::uint64_t>(s)).edges().size());
  const double total = static_cast<double>(edges.size()) * seeds;
  const double mean = kept / total;
  const double se3 = 3.0 * std::sqrt(p * (1.0 - p) / total);
  REQUIRE(std::abs(mean - p) <= se3);
}

TEST_CASE("exact twins land in one supernode") {
  // v0 and v1: identical conflict neighbors (v2, v3) and identical prefs
  const std::vector<WeightedPair> edges = {
      {"v0", "v2", 1.0}, {"v0", "v3", 1.0}, {"v1", "v2", 1.0}, {"v1", "v3", 1.0}, {"v2", "v3", 1.0}};
  const std::vector<PrefEntry> prefs = {{"v0", "a", 0.8}, {"v1", "a", 0.8}, {"v2", "b", 0.6}, {"v3", "a", 0.3}};
  const Instance inst(make_ids("v", 4), {"a", "b"}, {4, 4}, edges, prefs, 1.0);
  const auto partition = compact_partition(inst);
  int owner0 = -1;
  int owner1 = -1;
  for (const auto& s : partition)
    for (int v : s.members) {
      if (v == 0) owner0 = s.id;
      if (v == 1) owner1 = s.id;
    }
  REQUIRE(owner0 == owner1);
}

TEST_CASE("fully disconnected friend graph yields singletons") {
  // complete conflict graph -> empty friend graph
  std::vector<WeightedPair> edges;
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) edges.push_back({"v" + std::to_string(u), "v" + std::to_string(v), 1.0});
  // distinct preference vectors so the merge step cannot fuse them either
  std::vector<PrefEntry> prefs;
  for (int v = 0; v < 5; ++v) prefs.push_back({"v" + std::to_string(v), "t" + std::to_string(v), 1.0});
  const Instance inst(make_ids("v", 5), make_ids("t", 5), std::vector<int>(5, 5), edges, prefs, 1.0);
  const auto partition = compact_partition(inst);
  REQUIRE(partition.size() == 5);
  for (const auto& s : partition) REQUIRE(s.size() == 1);
}

TEST_CASE("planted blocks are recovered from the friend graph") {
  const io::SynthTFConfig config{.num_nodes = 120, .num_blocks = 6, .p_in = 0.99, .p_out = 1e-4, .alpha = 10.0};
  const Instance inst = io::generate_synth_tf(4242, config);
  const auto partition = compact_partition(inst, config.num_nodes / config.num_blocks);
  std::vector<int> owner(static_cast<std::size_t>(inst.num_nodes()), -1);
  for (const auto& s : partition)
    for (int v : s.members) owner[static_cast<std::size_t>(v)] = s.id;
  const int block_size = config.num_nodes / config.num_blocks;
  long agree = 0;
  long pairs = 0;
  for (int u = 0; u < inst.num_nodes(); ++u)
    for (int v = u + 1; v < inst.num_nodes(); ++v) {
      ++pairs;
      const bool same_block = u / block_size == v / block_size;
      const bool same_super = owner[static_cast<std::size_t>(u)] == owner[static_cast<std::size_t>(v)];
      if (same_block == same_super) ++agree;
    }
  REQUIRE(static_cast<double>(agree) / static_cast<double>(pairs) >= 0.95);
}

TEST_CASE("all-singleton compact solve equals the plain relaxation") {
  Rng rng(509);
  const auto inst = testsupport::random_instance(rng, {.min_nodes = 5, .max_nodes = 6});
  std::vector<Supernode> singletons;
  for (int v = 0; v < inst.num_nodes(); ++v) singletons.push_back({v, {v}});
  for (const RelaxationKind kind : {RelaxationKind::L1, RelaxationKind::L2}) {
    const auto compact = compact_solve(inst, singletons, kind);
    const auto plain = solve_relaxation(inst, kind);
    REQUIRE(compact.super_result.status == LPStatus::Optimal);
    REQUIRE(compact.ignored_conflict_weight == 0.0);
    REQUIRE(compact.super_result.objective_value == Approx(plain.objective_value).margin(1e-7));
    REQUIRE(feasible(inst, compact.solution).ok);
  }
}

namespace {

// two twins (v0, v1) plus two distinct others, twins conflicting with both
Instance twin_instance() {
  const std::vector<WeightedPair> edges = {
      {"v0", "v2", 1.5}, {"v1", "v2", 1.5}, {"v0", "v3", 0.5}, {"v1", "v3", 0.5}, {"v2", "v3", 2.0}};
  const std::vector<PrefEntry> prefs = {
      {"v0", "a", 0.9}, {"v1", "a", 0.9}, {"v0", "b", 0.2}, {"v1", "b", 0.2}, {"v2", "b", 1.0}, {"v3", "a", 0.7}};
  return Instance(make_ids("v", 4), {"a", "b"}, {3, 3}, edges, prefs, 1.0);
}

}  // namespace

TEST_CASE("twin-node compact solve matches the full relaxation value") {
  const Instance inst = twin_instance();
  const std::vector<Supernode> partition = {{0, {0, 1}}, {1, {2}}, {2, {3}}};
  for (const RelaxationKind kind : {RelaxationKind::L1, RelaxationKind::L2}) {
    const auto compact = compact_solve(inst, partition, kind);
    const auto plain = solve_relaxation(inst, kind);
    REQUIRE(compact.super_result.status == LPStatus::Optimal);
    // twins have no intra-pair conflict edge, so nothing is ignored and the
    // compact optimum must reach the full optimum (theorem regime)
    REQUIRE(compact.ignored_conflict_weight == 0.0);
    const double unrolled = eval_relaxation(inst, kind, compact.solution);
    REQUIRE(unrolled == Approx(plain.objective_value).margin(1e-6));
    // members of one supernode share identical rows
    for (int t = 0; t < inst.num_tasks(); ++t) REQUIRE(compact.solution(0, t) == compact.solution(1, t));
  }
}

TEST_CASE("twin symmetrization preserves feasibility and objective") {
  const Instance inst = twin_instance();
  for (const RelaxationKind kind : {RelaxationKind::L1, RelaxationKind::L2}) {
    const LPResult lp = solve_relaxation(inst, kind);
    REQUIRE(lp.status == LPStatus::Optimal);
    FractionalSolution swapped = lp.solution;
    for (int t = 0; t < inst.num_tasks(); ++t) std::swap(swapped(0, t), swapped(1, t));
    FractionalSolution averaged(inst.num_nodes(), inst.num_tasks());
    for (int v = 0; v < inst.num_nodes(); ++v)
      for (int t = 0; t < inst.num_tasks(); ++t) averaged(v, t) = 0.5 * (lp.solution(v, t) + swapped(v, t));
    REQUIRE(feasible(inst, averaged).ok);
    REQUIRE(eval_relaxation(inst, kind, averaged) == Approx(lp.objective_value).margin(1e-7));
    for (int t = 0; t < inst.num_tasks(); ++t) REQUIRE(averaged(0, t) == Approx(averaged(1, t)));
  }
}

TEST_CASE("unrolled compact solutions are feasible on random instances") {
  Rng rng(521);
  for (int round = 0; round < 50; ++round) {
    const auto inst = testsupport::random_instance(rng, {.min_nodes = 6, .max_nodes = 10, .max_tasks = 3});
    const auto partition = compact_partition(inst, 4);
    const auto compact = compact_solve(inst, partition, RelaxationKind::L2);
    REQUIRE(compact.super_result.status == LPStatus::Optimal);
    REQUIRE(feasible(inst, compact.solution).ok);
    // intra-supernode weight is exactly what the superedges dropped
    std::vector<int> owner(static_cast<std::size_t>(inst.num_nodes()), -1);
    for (const auto& s : partition)
      for (int v : s.members) owner[static_cast<std::size_t>(v)] = s.id;
    double intra = 0.0;
    for (const auto& e : inst.edges())
      if (owner[static_cast<std::size_t>(e.u)] == owner[static_cast<std::size_t>(e.v)]) intra += e.weight;
    REQUIRE(compact.ignored_conflict_weight == Approx(intra).margin(1e-12));
  }
}
