#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "teamcut/baselines.hpp"
#include "teamcut/exact.hpp"
#include "teamcut/instance.hpp"
#include "teamcut/io.hpp"
#include "teamcut/relaxation.hpp"
#include "teamcut/rounding.hpp"

namespace teamcut {

/// Rank and co-assigned-friend statistics of an assignment. Standard
/// deviations use the population convention (divide by n).
struct QualityMetrics {
  double max_rank = 0.0;  ///< maxQ_R over r(v, x)
  double avg_rank = 0.0;
  double std_rank = 0.0;
  double max_friends = 0.0;  ///< maxQ_G over same-team friend counts
  double avg_friends = 0.0;
  double std_friends = 0.0;
};

namespace detail {
struct Moments {
  double max = 0.0, avg = 0.0, std = 0.0;
};
inline Moments moments(const std::vector<double>& values) {
  Moments m;
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) {
    m.max = std::max(m.max, v);
    sum += v;
  }
  m.avg = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - m.avg) * (v - m.avg);
  m.std = std::sqrt(sq / static_cast<double>(values.size()));
  return m;
}
}  // namespace detail

/// r(v, x) is the rank, according to v, of the task v was assigned; the
/// friend counts come from the ranking data's friend graph.
inline QualityMetrics quality_metrics(const Instance& inst, const io::RankingData& rankings, const Assignment& x) {
  if (static_cast<int>(rankings.nodes.size()) != inst.num_nodes() ||
      static_cast<int>(rankings.tasks.size()) != inst.num_tasks())
    throw std::invalid_argument("quality_metrics: rankings do not cover the instance");
  detail::require_feasible(inst, x, "quality_metrics");

  std::vector<double> ranks;
  ranks.reserve(static_cast<std::size_t>(inst.num_nodes()));
  for (int v = 0; v < inst.num_nodes(); ++v) {
    const int r = rankings.rank_of(v, x.task_of(v));
    if (r < 1 || r > inst.num_tasks())
      throw std::invalid_argument("quality_metrics: missing ranking for '" + inst.node_id(v) + "'");
    ranks.push_back(static_cast<double>(r));
  }
  std::vector<double> friends(static_cast<std::size_t>(inst.num_nodes()), 0.0);
  for (const auto& [u, v] : rankings.friend_pairs)
    if (x.task_of(u) == x.task_of(v)) {
      friends[static_cast<std::size_t>(u)] += 1.0;
      friends[static_cast<std::size_t>(v)] += 1.0;
    }

  const auto mr = detail::moments(ranks);
  const auto mf = detail::moments(friends);
  return {mr.max, mr.avg, mr.std, mf.max, mf.avg, mf.std};
}

enum class ReferenceKind { ExactOptimum, LPUpperBound };

struct ApproximationRatio {
  double ratio = 0.0;
  ReferenceKind reference = ReferenceKind::ExactOptimum;
  bool valid = false;
  std::string note;  ///< qualifies LP-bound ratios, or carries the degeneracy reason
};

/// F(x) / reference. Against the exact optimum this is the approximation
/// ratio; against the relaxation LP value it is a lower bound on it.
inline ApproximationRatio approximation_ratio(const Instance& inst, const Assignment& x, double reference,
                                              ReferenceKind kind) {
  ApproximationRatio out;
  out.reference = kind;
  const double value = evaluate_objective(inst, x).total;
  if (reference <= 0.0) {
    if (value == 0.0 && reference == 0.0) {
      out.ratio = 1.0;
      out.valid = true;
      out.note = "0/0 treated as 1";
    } else {
      out.note = "degenerate reference <= 0 with nonzero objective";
    }
    return out;
  }
  out.ratio = value / reference;
  out.valid = true;
  if (kind == ReferenceKind::LPUpperBound) out.note = "lower bound on AR (reference is the LP upper bound)";
  return out;
}

/// Balancing-assumption check: sufficient form lambda >= w(E_G)/|V| and,
/// given a fractional solution, the exact form lambda*sum(c y) - w(E_G) >= 0.
/// The 3/4 guarantee of randomized rounding on L2 is conditional on this.
struct BalancingReport {
  double lambda = 0.0;
  double sufficient_threshold = 0.0;  ///< w(E_G)/|V| = d_avg/2
  bool sufficient_form = false;
  std::optional<bool> exact_form;
  std::optional<double> exact_margin;  ///< lambda*sum(c y) - w(E_G)
};

inline BalancingReport check_balancing(const Instance& inst, const FractionalSolution* y = nullptr) {
  BalancingReport report;
  report.lambda = inst.lambda();
  report.sufficient_threshold = inst.total_conflict_weight() / static_cast<double>(inst.num_nodes());
  report.sufficient_form = report.lambda >= report.sufficient_threshold;
  if (y != nullptr) {
    double pref = 0.0;
    for (int v = 0; v < inst.num_nodes(); ++v)
      for (int t = 0; t < inst.num_tasks(); ++t) pref += inst.preference(v, t) * (*y)(v, t);
    report.exact_margin = inst.lambda() * pref - inst.total_conflict_weight();
    report.exact_form = *report.exact_margin >= 0.0;
  }
  return report;
}

/// Mean over departments of |male% - female%| among assigned individuals;
/// empty departments contribute 0.
inline double avg_gender_gap(const Instance& inst, const Assignment& x, const std::vector<bool>& is_male) {
  if (static_cast<int>(is_male.size()) != inst.num_nodes())
    throw std::invalid_argument("avg_gender_gap: gender vector does not cover the instance");
  std::vector<int> males(static_cast<std::size_t>(inst.num_tasks()), 0);
  std::vector<int> total(static_cast<std::size_t>(inst.num_tasks()), 0);
  for (int v = 0; v < inst.num_nodes(); ++v) {
    ++total[static_cast<std::size_t>(x.task_of(v))];
    if (is_male[static_cast<std::size_t>(v)]) ++males[static_cast<std::size_t>(x.task_of(v))];
  }
  double gap = 0.0;
  for (int t = 0; t < inst.num_tasks(); ++t) {
    if (total[static_cast<std::size_t>(t)] == 0) continue;
    const double male_frac =
        static_cast<double>(males[static_cast<std::size_t>(t)]) / static_cast<double>(total[static_cast<std::size_t>(t)]);
    gap += std::abs(2.0 * male_frac - 1.0);
  }
  return gap / static_cast<double>(inst.num_tasks());
}

/// Gender read off node ids produced by the company generator (m_/f_ prefix).
inline std::vector<bool> genders_from_node_ids(const Instance& inst) {
  std::vector<bool> is_male;
  is_male.reserve(static_cast<std::size_t>(inst.num_nodes()));
  for (const auto& id : inst.node_ids()) {
    if (id.size() >= 2 && id[1] == '_' && (id[0] == 'm' || id[0] == 'f'))
      is_male.push_back(id[0] == 'm');
    else
      throw std::invalid_argument("genders_from_node_ids: id '" + id + "' carries no m_/f_ prefix");
  }
  return is_male;
}

// ---------------------------------------------------------------------------
// algorithms and the alpha sweep
// ---------------------------------------------------------------------------

enum class Algorithm { Exact, PipageL1, RPipageL2, Greedy, Random };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Exact:
      return "exact";
    case Algorithm::PipageL1:
      return "pipage-l1";
    case Algorithm::RPipageL2:
      return "rpipage-l2";
    case Algorithm::Greedy:
      return "greedy";
    case Algorithm::Random:
      return "random";
  }
  return "?";
}

inline std::optional<Algorithm> algorithm_from_string(const std::string& s) {
  if (s == "exact") return Algorithm::Exact;
  if (s == "pipage-l1") return Algorithm::PipageL1;
  if (s == "rpipage-l2") return Algorithm::RPipageL2;
  if (s == "greedy") return Algorithm::Greedy;
  if (s == "random") return Algorithm::Random;
  return std::nullopt;
}

struct RunOutcome {
  Assignment assignment;
  std::optional<double> relaxation_value;  ///< L(y*) for the relax-round algorithms
  LPStatus lp_status = LPStatus::Optimal;
};

/// Run one algorithm end to end on an instance (relax + round for the two
/// pipage variants). Deterministic given the seed.
inline RunOutcome run_algorithm(const Instance& inst, Algorithm algorithm, std::uint64_t seed,
                                lp::SimplexOptions lp_options = lp::SimplexOptions()) {
  RunOutcome out;
  switch (algorithm) {
    case Algorithm::Exact: {
      const ExactResult exact = solve_exact(inst);
      if (exact.status == ExactStatus::BudgetExceeded)
        throw std::runtime_error("exact: node budget exceeded (instance too large for the exact solver)");
      out.assignment = exact.assignment;
      break;
    }
    case Algorithm::Greedy:
      out.assignment = greedy(inst);
      break;
    case Algorithm::Random:
      out.assignment = random_assign(inst, seed);
      break;
    case Algorithm::PipageL1: {
      LPResult lp = solve_relaxation(inst, RelaxationKind::L1, lp_options);
      out.lp_status = lp.status;
      if (lp.status != LPStatus::Optimal) throw std::runtime_error("pipage-l1: relaxation hit the iteration limit");
      out.relaxation_value = lp.objective_value;
      out.assignment = pipage_round(inst, lp.solution);
      break;
    }
    case Algorithm::RPipageL2: {
      LPResult lp = solve_relaxation(inst, RelaxationKind::L2, lp_options);
      out.lp_status = lp.status;
      if (lp.status != LPStatus::Optimal) throw std::runtime_error("rpipage-l2: relaxation hit the iteration limit");
      out.relaxation_value = lp.objective_value;
      out.assignment = randomized_pipage_round(inst, lp.solution, seed);
      break;
    }
  }
  return out;
}

/// One row of the elbow-plot data: the two objective terms at a given alpha
/// for a given algorithm.
struct SweepPoint {
  double alpha = 0.0;
  double lambda = 0.0;
  Algorithm algorithm = Algorithm::Exact;
  std::uint64_t seed = 0;
  double f_task = 0.0;    ///< F_R^(alpha)
  double f_social = 0.0;  ///< F_G^(alpha)
  double f_total = 0.0;
  bool ok = false;
  std::string error;
};

/// Resolve lambda = alpha * w(E_G)/|V| for every alpha in the grid, run every
/// algorithm, and record (F_R, F_G, F). Failures mark their point and the
/// sweep continues. Points are ordered by (alpha, algorithm).
inline std::vector<SweepPoint> alpha_sweep(const Instance& base, const std::vector<double>& alphas,
                                           const std::vector<Algorithm>& algorithms, std::uint64_t seed) {
  std::vector<SweepPoint> points;
  for (double alpha : alphas) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha_sweep: alpha must be >= 0");
    const Instance inst = base.with_alpha_value(alpha);
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      SweepPoint point;
      point.alpha = alpha;
      point.lambda = inst.lambda();
      point.algorithm = algorithms[a];
      point.seed = Rng(seed).split(points.size()).next_u64();
      try {
        const RunOutcome run = run_algorithm(inst, algorithms[a], point.seed);
        const ObjectiveBreakdown objective = evaluate_objective(inst, run.assignment);
        point.f_task = objective.task_satisfaction;
        point.f_social = objective.social_satisfaction;
        point.f_total = objective.total;
        point.ok = true;
      } catch (const std::exception& err) {
        point.error = err.what();
      }
      points.push_back(std::move(point));
    }
  }
  return points;
}

/// Plot-ready sweep table (structured text, one row per (alpha, algorithm)).
inline std::string sweep_to_string(const std::vector<SweepPoint>& points,
                                   const std::vector<std::pair<std::string, std::string>>& config = {}) {
  std::string out = "teamcut-sweep v1\n";
  for (const auto& [k, v] : config) out += "config " + k + " " + v + "\n";
  out += "columns alpha lambda algorithm F_R F_G F status\n";
  for (const auto& p : points) {
    out += "row " + io::detail::format_double(p.alpha) + " " + io::detail::format_double(p.lambda) + " " +
           to_string(p.algorithm) + " " + io::detail::format_double(p.f_task) + " " +
           io::detail::format_double(p.f_social) + " " + io::detail::format_double(p.f_total) + " " +
           (p.ok ? "ok" : "error") + "\n";
  }
  out += "end\n";
  return out;
}

inline void save_sweep(const std::vector<SweepPoint>& points, const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& config = {}) {
  io::detail::atomic_write(path, sweep_to_string(points, config));
}

}  // namespace teamcut
