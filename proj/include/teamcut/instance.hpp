#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace teamcut {

/// Tolerance for fractional feasibility checks (row/column sums). Leaves
/// headroom above the LP engine's own tolerances.
inline constexpr double kFeasTol = 1e-7;

struct ConflictEdge {
  int u = 0;  ///< node index, u < v
  int v = 0;
  double weight = 0.0;
};

struct PrefEntry {
  std::string node;
  std::string task;
  double value = 0.0;
};

struct WeightedPair {
  std::string u;
  std::string v;
  double weight = 1.0;
};

/// A team-formation instance: individuals, capacity-bounded tasks, a weighted
/// undirected conflict graph and per-(individual, task) preferences in [0,1].
///
/// Node and task ids are opaque strings mapped to dense indices at
/// construction. Instances are immutable after construction and safe to share
/// across threads.
class Instance {
 public:
  Instance(std::vector<std::string> node_ids, std::vector<std::string> task_ids,
           std::vector<int> capacities, const std::vector<WeightedPair>& conflicts,
           const std::vector<PrefEntry>& prefs, double lambda,
           std::optional<double> alpha = std::nullopt)
      : node_ids_(std::move(node_ids)), task_ids_(std::move(task_ids)), capacities_(std::move(capacities)) {
    if (node_ids_.empty()) throw std::invalid_argument("instance: no individuals");
    if (task_ids_.empty()) throw std::invalid_argument("instance: no tasks");
    if (capacities_.size() != task_ids_.size())
      throw std::invalid_argument("instance: capacities and task ids differ in length");
    for (std::size_t i = 0; i < node_ids_.size(); ++i)
      if (!node_index_.emplace(node_ids_[i], static_cast<int>(i)).second)
        throw std::invalid_argument("instance: duplicate node id '" + node_ids_[i] + "'");
    for (std::size_t i = 0; i < task_ids_.size(); ++i)
      if (!task_index_.emplace(task_ids_[i], static_cast<int>(i)).second)
        throw std::invalid_argument("instance: duplicate task id '" + task_ids_[i] + "'");

    long long total_capacity = 0;
    for (std::size_t t = 0; t < capacities_.size(); ++t) {
      if (capacities_[t] < 0)
        throw std::invalid_argument("instance: negative capacity for task '" + task_ids_[t] + "'");
      total_capacity += capacities_[t];
    }
    if (total_capacity < static_cast<long long>(node_ids_.size()))
      throw std::invalid_argument("instance: capacities sum to " + std::to_string(total_capacity) +
                                  " < " + std::to_string(node_ids_.size()) + " individuals; no feasible assignment");

    prefs_.assign(node_ids_.size() * task_ids_.size(), 0.0);
    std::set<std::pair<int, int>> seen_pref;
    for (const auto& p : prefs) {
      const int v = node_index(p.node);
      const int t = task_index(p.task);
      if (!(p.value >= 0.0 && p.value <= 1.0) || !std::isfinite(p.value))
        throw std::invalid_argument("instance: preference for (" + p.node + ", " + p.task + ") outside [0,1]");
      if (!seen_pref.emplace(v, t).second)
        throw std::invalid_argument("instance: duplicate preference entry (" + p.node + ", " + p.task + ")");
      prefs_[pos(v, t)] = p.value;
    }

    adjacency_.assign(node_ids_.size(), {});
    std::set<std::pair<int, int>> seen_edge;
    edges_.reserve(conflicts.size());
    for (const auto& e : conflicts) {
      int u = node_index(e.u);
      int v = node_index(e.v);
      if (u == v) throw std::invalid_argument("instance: conflict self-loop on '" + e.u + "'");
      if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
        throw std::invalid_argument("instance: conflict weight for (" + e.u + ", " + e.v + ") must be >= 0");
      if (u > v) std::swap(u, v);
      if (!seen_edge.emplace(u, v).second)
        throw std::invalid_argument("instance: duplicate conflict edge (" + e.u + ", " + e.v + ")");
      edges_.push_back({u, v, e.weight});
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const ConflictEdge& a, const ConflictEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    for (const auto& e : edges_) {
      total_conflict_weight_ += e.weight;
      adjacency_[e.u].push_back({e.v, e.weight});
      adjacency_[e.v].push_back({e.u, e.weight});
    }

    if (alpha) {
      if (!(*alpha >= 0.0) || !std::isfinite(*alpha)) throw std::invalid_argument("instance: alpha must be >= 0");
      alpha_ = alpha;
      lambda_ = *alpha * total_conflict_weight_ / static_cast<double>(node_ids_.size());
    } else {
      if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("instance: lambda must be >= 0");
      lambda_ = lambda;
    }
  }

  /// Derive lambda from the balancing factor: lambda = alpha * w(E_G) / |V|.
  static Instance with_alpha(std::vector<std::string> node_ids, std::vector<std::string> task_ids,
                             std::vector<int> capacities, const std::vector<WeightedPair>& conflicts,
                             const std::vector<PrefEntry>& prefs, double alpha) {
    return Instance(std::move(node_ids), std::move(task_ids), std::move(capacities), conflicts, prefs, 0.0, alpha);
  }

  int num_nodes() const { return static_cast<int>(node_ids_.size()); }
  int num_tasks() const { return static_cast<int>(task_ids_.size()); }
  const std::vector<std::string>& node_ids() const { return node_ids_; }
  const std::vector<std::string>& task_ids() const { return task_ids_; }
  const std::string& node_id(int v) const { return node_ids_[static_cast<std::size_t>(v)]; }
  const std::string& task_id(int t) const { return task_ids_[static_cast<std::size_t>(t)]; }
  int capacity(int t) const { return capacities_[static_cast<std::size_t>(t)]; }
  const std::vector<int>& capacities() const { return capacities_; }
  double lambda() const { return lambda_; }
  std::optional<double> alpha() const { return alpha_; }
  const std::vector<ConflictEdge>& edges() const { return edges_; }
  double total_conflict_weight() const { return total_conflict_weight_; }
  double preference(int v, int t) const { return prefs_[pos(v, t)]; }

  /// Neighbors of v in the conflict graph as (node, weight) pairs.
  const std::vector<std::pair<int, double>>& neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }

  int node_index(const std::string& id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end()) throw std::invalid_argument("instance: unknown node id '" + id + "'");
    return it->second;
  }
  int task_index(const std::string& id) const {
    auto it = task_index_.find(id);
    if (it == task_index_.end()) throw std::invalid_argument("instance: unknown task id '" + id + "'");
    return it->second;
  }

  /// Same instance with a different lambda (used by alpha sweeps).
  Instance with_lambda(double lambda) const {
    Instance copy = *this;
    copy.lambda_ = lambda;
    copy.alpha_.reset();
    return copy;
  }
  Instance with_alpha_value(double alpha) const {
    Instance copy = *this;
    copy.alpha_ = alpha;
    copy.lambda_ = alpha * total_conflict_weight_ / static_cast<double>(num_nodes());
    return copy;
  }

 private:
  std::size_t pos(int v, int t) const {
    return static_cast<std::size_t>(v) * task_ids_.size() + static_cast<std::size_t>(t);
  }

  std::vector<std::string> node_ids_;
  std::vector<std::string> task_ids_;
  std::vector<int> capacities_;
  std::vector<ConflictEdge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
  std::vector<double> prefs_;
  double lambda_ = 0.0;
  std::optional<double> alpha_;
  double total_conflict_weight_ = 0.0;
  std::unordered_map<std::string, int> node_index_;
  std::unordered_map<std::string, int> task_index_;
};

/// An integral assignment: exactly one task index per individual.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<int> task_of_node) : task_of_(std::move(task_of_node)) {}

  int size() const { return static_cast<int>(task_of_.size()); }
  int task_of(int v) const { return task_of_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& raw() const { return task_of_; }
  int& operator[](int v) { return task_of_[static_cast<std::size_t>(v)]; }
  int operator[](int v) const { return task_of_[static_cast<std::size_t>(v)]; }
  bool operator==(const Assignment& o) const { return task_of_ == o.task_of_; }

 private:
  std::vector<int> task_of_;
};

/// A fractional solution y in [0,1]^{|V| x |T|}, row-major.
class FractionalSolution {
 public:
  FractionalSolution() = default;
  FractionalSolution(int nodes, int tasks, double fill = 0.0)
      : nodes_(nodes), tasks_(tasks), values_(static_cast<std::size_t>(nodes) * tasks, fill) {}

  static FractionalSolution from_assignment(const Instance& inst, const Assignment& x) {
    FractionalSolution y(inst.num_nodes(), inst.num_tasks());
    for (int v = 0; v < inst.num_nodes(); ++v) y(v, x.task_of(v)) = 1.0;
    return y;
  }

  int num_nodes() const { return nodes_; }
  int num_tasks() const { return tasks_; }
  double& operator()(int v, int t) { return values_[pos(v, t)]; }
  double operator()(int v, int t) const { return values_[pos(v, t)]; }
  const std::vector<double>& raw() const { return values_; }

  double row_sum(int v) const {
    double s = 0.0;
    for (int t = 0; t < tasks_; ++t) s += values_[pos(v, t)];
    return s;
  }
  double col_sum(int t) const {
    double s = 0.0;
    for (int v = 0; v < nodes_; ++v) s += values_[pos(v, t)];
    return s;
  }

  bool is_integral(double tol = 1e-9) const {
    for (double y : values_)
      if (y > tol && y < 1.0 - tol) return false;
    return true;
  }

 private:
  std::size_t pos(int v, int t) const {
    return static_cast<std::size_t>(v) * tasks_ + static_cast<std::size_t>(t);
  }
  int nodes_ = 0;
  int tasks_ = 0;
  std::vector<double> values_;
};

/// The objective decomposition F = lambda * F_R + F_G.
struct ObjectiveBreakdown {
  double task_satisfaction = 0.0;    ///< F_R = sum_v sum_t c_vt x_vt
  double social_satisfaction = 0.0;  ///< F_G = sum_{(u,v)} w_uv (1 - sum_t x_ut x_vt)
  double total = 0.0;                ///< lambda * F_R + F_G
};

struct FeasibilityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Check Eq.-style constraints on an integral assignment: every individual is
/// assigned a valid task and no task exceeds its capacity. Total function;
/// violations are named.
inline FeasibilityReport feasible(const Instance& inst, const Assignment& x) {
  FeasibilityReport report;
  if (x.size() != inst.num_nodes()) {
    report.ok = false;
    report.violations.push_back("assignment covers " + std::to_string(x.size()) + " of " +
                                std::to_string(inst.num_nodes()) + " individuals");
    return report;
  }
  std::vector<int> load(static_cast<std::size_t>(inst.num_tasks()), 0);
  for (int v = 0; v < inst.num_nodes(); ++v) {
    const int t = x.task_of(v);
    if (t < 0 || t >= inst.num_tasks()) {
      report.ok = false;
      report.violations.push_back("node '" + inst.node_id(v) + "' assigned to invalid task index " + std::to_string(t));
      continue;
    }
    ++load[static_cast<std::size_t>(t)];
  }
  for (int t = 0; t < inst.num_tasks(); ++t) {
    if (load[static_cast<std::size_t>(t)] > inst.capacity(t)) {
      report.ok = false;
      report.violations.push_back("task '" + inst.task_id(t) + "' holds " + std::to_string(load[static_cast<std::size_t>(t)]) +
                                  " > capacity " + std::to_string(inst.capacity(t)));
    }
  }
  return report;
}

/// Fractional feasibility: row sums equal 1 and column sums stay within
/// capacity, both within kFeasTol.
inline FeasibilityReport feasible(const Instance& inst, const FractionalSolution& y, double tol = kFeasTol) {
  FeasibilityReport report;
  if (y.num_nodes() != inst.num_nodes() || y.num_tasks() != inst.num_tasks()) {
    report.ok = false;
    report.violations.push_back("fractional solution dimensioned " + std::to_string(y.num_nodes()) + "x" +
                                std::to_string(y.num_tasks()) + ", instance is " + std::to_string(inst.num_nodes()) +
                                "x" + std::to_string(inst.num_tasks()));
    return report;
  }
  for (int v = 0; v < inst.num_nodes(); ++v) {
    for (int t = 0; t < inst.num_tasks(); ++t) {
      const double val = y(v, t);
      if (!(val >= -tol && val <= 1.0 + tol)) {
        report.ok = false;
        report.violations.push_back("y(" + inst.node_id(v) + ", " + inst.task_id(t) + ") = " + std::to_string(val) +
                                    " outside [0,1]");
      }
    }
    if (std::abs(y.row_sum(v) - 1.0) > tol) {
      report.ok = false;
      report.violations.push_back("row sum for node '" + inst.node_id(v) + "' is " + std::to_string(y.row_sum(v)));
    }
  }
  for (int t = 0; t < inst.num_tasks(); ++t) {
    if (y.col_sum(t) > inst.capacity(t) + tol) {
      report.ok = false;
      report.violations.push_back("column sum for task '" + inst.task_id(t) + "' is " + std::to_string(y.col_sum(t)) +
                                  " > capacity " + std::to_string(inst.capacity(t)));
    }
  }
  return report;
}

namespace detail {
/// F on a fractional point without the feasibility gate (used internally on
/// points that were snapped within tolerance).
inline ObjectiveBreakdown objective_unchecked(const Instance& inst, const FractionalSolution& y) {
  ObjectiveBreakdown out;
  const int T = inst.num_tasks();
  for (int v = 0; v < inst.num_nodes(); ++v)
    for (int t = 0; t < T; ++t) out.task_satisfaction += inst.preference(v, t) * y(v, t);
  for (const auto& e : inst.edges()) {
    double co = 0.0;
    for (int t = 0; t < T; ++t) co += y(e.u, t) * y(e.v, t);
    out.social_satisfaction += e.weight * (1.0 - co);
  }
  out.total = inst.lambda() * out.task_satisfaction + out.social_satisfaction;
  return out;
}

inline void require_feasible(const Instance& inst, const Assignment& x, const char* who) {
  const FeasibilityReport r = feasible(inst, x);
  if (!r.ok) throw std::invalid_argument(std::string(who) + ": infeasible assignment: " + r.violations.front());
}
inline void require_feasible(const Instance& inst, const FractionalSolution& y, const char* who) {
  const FeasibilityReport r = feasible(inst, y);
  if (!r.ok) throw std::invalid_argument(std::string(who) + ": infeasible fractional solution: " + r.violations.front());
}
}  // namespace detail

/// Evaluate F on an integral assignment. The social term counts an edge's
/// weight exactly when its endpoints sit on different tasks.
inline ObjectiveBreakdown evaluate_objective(const Instance& inst, const Assignment& x) {
  detail::require_feasible(inst, x, "evaluate_objective");
  ObjectiveBreakdown out;
  for (int v = 0; v < inst.num_nodes(); ++v) out.task_satisfaction += inst.preference(v, x.task_of(v));
  for (const auto& e : inst.edges())
    if (x.task_of(e.u) != x.task_of(e.v)) out.social_satisfaction += e.weight;
  out.total = inst.lambda() * out.task_satisfaction + out.social_satisfaction;
  return out;
}

/// Evaluate F on a fractional solution (same formula with products of
/// fractional entries).
inline ObjectiveBreakdown evaluate_objective(const Instance& inst, const FractionalSolution& y) {
  detail::require_feasible(inst, y, "evaluate_objective");
  ObjectiveBreakdown out;
  const int T = inst.num_tasks();
  for (int v = 0; v < inst.num_nodes(); ++v)
    for (int t = 0; t < T; ++t) out.task_satisfaction += inst.preference(v, t) * y(v, t);
  for (const auto& e : inst.edges()) {
    double co = 0.0;
    for (int t = 0; t < T; ++t) co += y(e.u, t) * y(e.v, t);
    out.social_satisfaction += e.weight * (1.0 - co);
  }
  out.total = inst.lambda() * out.task_satisfaction + out.social_satisfaction;
  return out;
}

inline double total_conflict_weight(const Instance& inst) { return inst.total_conflict_weight(); }

}  // namespace teamcut
