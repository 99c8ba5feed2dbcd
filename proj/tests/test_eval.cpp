#include <catch2/catch.hpp>

#include "support.hpp"
#include "teamcut/eval.hpp"

using namespace teamcut;
using testsupport::make_ids;

namespace {

io::RankingData rankings_for(const Instance& inst, Rng& rng,
                             const std::vector<std::pair<int, int>>& friend_pairs = {}) {
  io::RankingData data;
  data.nodes = inst.node_ids();
  data.tasks = inst.task_ids();
  data.friend_pairs = friend_pairs;
  for (int v = 0; v < inst.num_nodes(); ++v) {
    std::vector<int> perm(static_cast<std::size_t>(inst.num_tasks()));
    for (int t = 0; t < inst.num_tasks(); ++t) perm[static_cast<std::size_t>(t)] = t;
    for (int t = inst.num_tasks() - 1; t > 0; --t)
      std::swap(perm[static_cast<std::size_t>(t)], perm[rng.below(static_cast<std::uint64_t>(t + 1))]);
    std::vector<int> rank(static_cast<std::size_t>(inst.num_tasks()));
    for (int pos = 0; pos < inst.num_tasks(); ++pos) rank[static_cast<std::size_t>(perm[static_cast<std::size_t>(pos)])] = pos + 1;
    data.rank.push_back(std::move(rank));
  }
  return data;
}

}  // namespace

TEST_CASE("everyone on their top task gives flat rank metrics") {
  const Instance inst(make_ids("v", 4), {"a", "b"}, {4, 4}, {}, {}, 0.0);
  io::RankingData data;
  data.nodes = inst.node_ids();
  data.tasks = inst.task_ids();
  data.rank = {{1, 2}, {1, 2}, {1, 2}, {1, 2}};
  const Assignment x(std::vector<int>(4, 0));
  const QualityMetrics q = quality_metrics(inst, data, x);
  REQUIRE(q.max_rank == 1.0);
  REQUIRE(q.avg_rank == 1.0);
  REQUIRE(q.std_rank == 0.0);
}

TEST_CASE("no co-assigned friends zeroes the friend metrics") {
  const Instance inst(make_ids("v", 4), {"a", "b"}, {2, 2}, {}, {}, 0.0);
  io::RankingData data;
  data.nodes = inst.node_ids();
  data.tasks = inst.task_ids();
  data.rank = {{1, 2}, {1, 2}, {1, 2}, {1, 2}};
  data.friend_pairs = {{0, 2}, {1, 3}};
  const Assignment x(std::vector<int>{0, 0, 1, 1});  // friends split across tasks
  const QualityMetrics q = quality_metrics(inst, data, x);
  REQUIRE(q.max_friends == 0.0);
  REQUIRE(q.avg_friends == 0.0);
  REQUIRE(q.std_friends == 0.0);
}

TEST_CASE("quality metrics match a naive recomputation") {
  Rng rng(701);
  for (int round = 0; round < 30; ++round) {
    const auto inst = testsupport::random_instance(rng, {.min_nodes = 5, .max_nodes = 8, .max_tasks = 4});
    std::vector<std::pair<int, int>> friends;
    for (int u = 0; u < inst.num_nodes(); ++u)
      for (int v = u + 1; v < inst.num_nodes(); ++v)
        if (rng.bernoulli(0.3)) friends.push_back({u, v});
    const io::RankingData data = rankings_for(inst, rng, friends);
    const auto x = testsupport::random_feasible_assignment(inst, rng);
    const QualityMetrics q = quality_metrics(inst, data, x);

    std::vector<double> ranks;
    for (int v = 0; v < inst.num_nodes(); ++v) ranks.push_back(data.rank_of(v, x.task_of(v)));
    std::vector<double> fr(static_cast<std::size_t>(inst.num_nodes()), 0.0);
    for (const auto& [u, v] : friends)
      if (x.task_of(u) == x.task_of(v)) {
        fr[static_cast<std::size_t>(u)] += 1;
        fr[static_cast<std::size_t>(v)] += 1;
      }
    auto naive = [](const std::vector<double>& vals) {
      double mx = 0.0;
      double sum = 0.0;
      for (double v : vals) {
        mx = std::max(mx, v);
        sum += v;
      }
      const double avg = sum / static_cast<double>(vals.size());
      double sq = 0.0;
      for (double v : vals) sq += (v - avg) * (v - avg);
      return std::tuple<double, double, double>{mx, avg, std::sqrt(sq / static_cast<double>(vals.size()))};
    };
    const auto [mr, ar, sr] = naive(ranks);
    const auto [mf, af, sf] = naive(fr);
    REQUIRE(q.max_rank == Approx(mr));
    REQUIRE(q.avg_rank == Approx(ar));
    REQUIRE(q.std_rank == Approx(sr));
    REQUIRE(q.max_friends == Approx(mf));
    REQUIRE(q.avg_friends == Approx(af));
    REQUIRE(q.std_friends == Approx(sf));
  }
}

TEST_CASE("quality metrics are invariant under node relabeling") {
  Rng rng(703);
  const auto inst = testsupport::random_instance(rng, {.min_nodes = 6, .max_nodes = 6, .max_tasks = 3});
  const io::RankingData data = rankings_for(inst, rng, {{0, 3}, {1, 4}, {2, 5}});
  const auto x = testsupport::random_feasible_assignment(inst, rng);
  const QualityMetrics q = quality_metrics(inst, data, x);

  // rotate node identities: node v becomes position (v+2) % 6 everywhere
  const int V = 6;
  const auto rot = [V](int v) { return (v + 2) % V; };
  std::vector<std::string> nodes(static_cast<std::size_t>(V));
  for (int v = 0; v < V; ++v) nodes[static_cast<std::size_t>(rot(v))] = inst.node_id(v);
  std::vector<WeightedPair> edges;
  for (const auto& e : inst.edges()) edges.push_back({inst.node_id(e.u), inst.node_id(e.v), e.weight});
  std::vector<PrefEntry> prefs;
  for (int v = 0; v < V; ++v)
    for (int t = 0; t < inst.num_tasks(); ++t)
      if (inst.preference(v, t) != 0.0) prefs.push_back({inst.node_id(v), inst.task_id(t), inst.preference(v, t)});
  const Instance permuted(nodes, inst.task_ids(), inst.capacities(), edges, prefs, inst.lambda());

  io::RankingData pdata;
  pdata.nodes = nodes;
  pdata.tasks = data.tasks;
  pdata.rank.resize(static_cast<std::size_t>(V));
  for (int v = 0; v < V; ++v) pdata.rank[static_cast<std::size_t>(rot(v))] = data.rank[static_cast<std::size_t>(v)];
  for (const auto& [u, v] : data.friend_pairs)
    pdata.friend_pairs.push_back({std::min(rot(u), rot(v)), std::max(rot(u), rot(v))});
  std::vector<int> px(static_cast<std::size_t>(V));
  for (int v = 0; v < V; ++v) px[static_cast<std::size_t>(rot(v))] = x.task_of(v);

  const QualityMetrics pq = quality_metrics(permuted, pdata, Assignment(px));
  REQUIRE(pq.max_rank == q.max_rank);
  REQUIRE(pq.avg_rank == Approx(q.avg_rank));
  REQUIRE(pq.std_rank == Approx(q.std_rank));
  REQUIRE(pq.max_friends == q.max_friends);
  REQUIRE(pq.avg_friends == Approx(q.avg_friends));
  REQUIRE(pq.std_friends == Approx(q.std_friends));
}

TEST_CASE("approximation ratio against references") {
  const Instance inst = testsupport::greedy_counterexample(100.0, 0.1);
  const ExactResult exact = solve_exact(inst);
  SECTION("optimal assignment against the exact reference") {
    const auto ar = approximation_ratio(inst, exact.assignment, exact.value, ReferenceKind::ExactOptimum);
    REQUIRE(ar.valid);
    REQUIRE(ar.ratio == Approx(1.0));
  }
  SECTION("greedy counterexample AR = 1/100.1") {
    const Assignment g = greedy(inst);
    const auto ar = approximation_ratio(inst, g, exact.value, ReferenceKind::ExactOptimum);
    REQUIRE(ar.valid);
    REQUIRE(std::abs(ar.ratio - 1.0 / 100.1) <= 1e-12);
    REQUIRE(ar.ratio <= 1.0 / 100.0);
  }
  SECTION("LP-bound AR never exceeds the exact AR") {
    Rng rng(709);
    for (int round = 0; round < 10; ++round) {
      const auto rinst = testsupport::random_instance(rng, {.min_nodes = 5, .max_nodes = 6});
      const Assignment g = greedy(rinst);
      const double opt = solve_exact(rinst).value;
      const double lp = solve_relaxation(rinst, RelaxationKind::L1).objective_value;
      const auto exact_ar = approximation_ratio(rinst, g, opt, ReferenceKind::ExactOptimum);
      const auto lp_ar = approximation_ratio(rinst, g, lp, ReferenceKind::LPUpperBound);
      if (exact_ar.valid && lp_ar.valid) REQUIRE(lp_ar.ratio <= exact_ar.ratio + 1e-9);
    }
  }
  SECTION("degenerate reference is refused") {
    const Assignment g = greedy(inst);
    const auto ar = approximation_ratio(inst, g, 0.0, ReferenceKind::ExactOptimum);
    REQUIRE_FALSE(ar.valid);
  }
}

TEST_CASE("balancing assumption checks") {
  SECTION("lambda 0 with edges fails both forms") {
    const Instance inst(make_ids("v", 3), {"a", "b"}, {3, 3}, {{"v0", "v1", 1.0}}, {}, 0.0);
    FractionalSolution y(3, 2, 0.5);
    const auto report = check_balancing(inst, &y);
    REQUIRE_FALSE(report.sufficient_form);
    REQUIRE(report.exact_form.has_value());
    REQUIRE_FALSE(*report.exact_form);
  }
  SECTION("alpha = 10 passes the sufficient form") {
    const Instance inst = Instance::with_alpha(make_ids("v", 3), {"a", "b"}, {3, 3}, {{"v0", "v1", 1.0}}, {}, 10.0);
    REQUIRE(check_balancing(inst).sufficient_form);
  }
  SECTION("exact form agrees with direct computation") {
    Rng rng(719);
    for (int round = 0; round < 20; ++round) {
      const auto base = testsupport::random_instance(rng, {.pref_probability = 1.0});
      const Instance inst = base.with_alpha_value(2.0);
      const auto y = testsupport::random_fractional(inst, rng);
      const auto report = check_balancing(inst, &y);
      double pref = 0.0;
      for (int v = 0; v < inst.num_nodes(); ++v)
        for (int t = 0; t < inst.num_tasks(); ++t) pref += inst.preference(v, t) * y(v, t);
      const double margin = inst.lambda() * pref - inst.total_conflict_weight();
      REQUIRE(report.exact_margin.has_value());
      REQUIRE(*report.exact_margin == Approx(margin).margin(1e-9));
      REQUIRE(*report.exact_form == (margin >= 0.0));
    }
  }
}

TEST_CASE("average gender gap") {
  const Instance inst({"m_A_0", "m_A_1", "f_A_0", "f_B_0"}, {"A", "B"}, {3, 3}, {}, {}, 0.0);
  const auto genders = genders_from_node_ids(inst);
  REQUIRE(genders == std::vector<bool>{true, true, false, false});
  // A holds 2 males 1 female -> gap 1/3; B holds 1 female -> gap 1
  const Assignment x(std::vector<int>{0, 0, 0, 1});
  REQUIRE(avg_gender_gap(inst, x, genders) == Approx((1.0 / 3.0 + 1.0) / 2.0));
}

TEST_CASE("alpha sweep: exact F_R rises and F_G falls with alpha") {
  // 7-cycle conflict graph, full rankings, capacities that admit all tops
  Rng rng(727);
  const int V = 7;
  std::vector<WeightedPair> edges;
  for (int v = 0; v < V; ++v)
    edges.push_back({"s" + std::to_string(v), "s" + std::to_string((v + 1) % V), 1.0});
  std::vector<PrefEntry> prefs;
  for (int v = 0; v < V; ++v) {
    const int top = v % 3;
    for (int t = 0; t < 3; ++t) {
      const int rank = t == top ? 1 : (t == (top + 1) % 3 ? 2 : 3);
      prefs.push_back({"s" + std::to_string(v), "t" + std::to_string(t),
                       io::preference_from_rank(io::PreferenceFunction::Inverse, rank, 3)});
    }
  }
  const Instance base(make_ids("s", V), make_ids("t", 3), {3, 3, 3}, edges, prefs, 0.0);

  const std::vector<double> alphas = {0.0, 0.5, 1.0, 2.0, 10.0};
  const auto points = alpha_sweep(base, alphas, {Algorithm::Exact}, 1);
  REQUIRE(points.size() == alphas.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    REQUIRE(points[i].ok);
    REQUIRE(points[i].lambda == Approx(alphas[i] * base.total_conflict_weight() / V));
    if (i > 0) {
      REQUIRE(points[i].f_task >= points[i - 1].f_task - 1e-9);
      REQUIRE(points[i].f_social <= points[i - 1].f_social + 1e-9);
    }
  }
  // at alpha = 10 everyone can and does hold a unit-preference task
  const auto& last = points.back();
  REQUIRE(last.f_task == Approx(static_cast<double>(V)));
}

TEST_CASE("alpha sweep is deterministic and failure-tolerant") {
  Rng rng(733);
  const auto inst = testsupport::random_instance(rng, {.min_nodes = 5, .max_nodes = 5});
  const std::vector<double> alphas = {0.0, 1.0};
  const auto a = alpha_sweep(inst, alphas, {Algorithm::Greedy, Algorithm::RPipageL2}, 9);
  const auto b = alpha_sweep(inst, alphas, {Algorithm::Greedy, Algorithm::RPipageL2}, 9);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].ok == b[i].ok);
    REQUIRE(a[i].f_total == b[i].f_total);
    REQUIRE(a[i].seed == b[i].seed);
  }
  REQUIRE(sweep_to_string(a) == sweep_to_string(b));
  REQUIRE(sweep_to_string(a).find("columns alpha lambda algorithm F_R F_G F status") != std::string::npos);
}
