#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "teamcut/instance.hpp"
#include "teamcut/simplex.hpp"

namespace teamcut {

/// Relative optimality tolerance aimed for by the relaxation solver.
inline constexpr double kOptTol = 1e-6;

enum class RelaxationKind { L1, L2 };

inline const char* to_string(RelaxationKind kind) { return kind == RelaxationKind::L1 ? "L1" : "L2"; }

/// L1(y) = lambda * sum c_vt y_vt + sum_edges w_uv * min(1, min_t(2 - y_ut - y_vt)).
inline double eval_L1(const Instance& inst, const FractionalSolution& y) {
  detail::require_feasible(inst, y, "eval_L1");
  const int T = inst.num_tasks();
  double pref = 0.0;
  for (int v = 0; v < inst.num_nodes(); ++v)
    for (int t = 0; t < T; ++t) pref += inst.preference(v, t) * y(v, t);
  double conflict = 0.0;
  for (const auto& e : inst.edges()) {
    double worst = 1.0;
    for (int t = 0; t < T; ++t) worst = std::min(worst, 2.0 - y(e.u, t) - y(e.v, t));
    conflict += e.weight * worst;
  }
  return inst.lambda() * pref + conflict;
}

/// L2(y) = lambda * sum c_vt y_vt - w(E_G) + sum_edges sum_t w_uv * min(1, y_ut + y_vt).
inline double eval_L2(const Instance& inst, const FractionalSolution& y) {
  detail::require_feasible(inst, y, "eval_L2");
  const int T = inst.num_tasks();
  double pref = 0.0;
  for (int v = 0; v < inst.num_nodes(); ++v)
    for (int t = 0; t < T; ++t) pref += inst.preference(v, t) * y(v, t);
  double conflict = 0.0;
  for (const auto& e : inst.edges()) {
    for (int t = 0; t < T; ++t) conflict += e.weight * std::min(1.0, y(e.u, t) + y(e.v, t));
  }
  return inst.lambda() * pref - inst.total_conflict_weight() + conflict;
}

inline double eval_relaxation(const Instance& inst, RelaxationKind kind, const FractionalSolution& y) {
  return kind == RelaxationKind::L1 ? eval_L1(inst, y) : eval_L2(inst, y);
}

inline double eval_L1(const Instance& inst, const Assignment& x) {
  return eval_L1(inst, FractionalSolution::from_assignment(inst, x));
}
inline double eval_L2(const Instance& inst, const Assignment& x) {
  return eval_L2(inst, FractionalSolution::from_assignment(inst, x));
}

enum class RowKind {
  RowSum,    ///< sum_t y_vt = 1
  Capacity,  ///< sum_v y_vt <= p_t (size-weighted in compact programs)
  AuxUpper,  ///< aux <= 1
  AuxMin,    ///< L1: z_uv <= 2 - y_ut - y_vt; L2: x_uvt <= y_ut + y_vt
};

struct ProgramRow {
  RowKind kind;
  int ref_a = -1;  ///< node / task / edge index, by kind
  int ref_b = -1;  ///< task index for AuxMin rows
  std::vector<std::pair<int, double>> terms;
  lp::Relation rel = lp::Relation::LessEqual;
  double rhs = 0.0;
};

/// The exact LP linearization of L1 or L2: primary variables y_vt plus one
/// auxiliary per conflict edge (L1) or per (edge, task) pair (L2). All
/// variables live in [0,1]; the program maximizes.
struct RelaxationProgram {
  RelaxationKind kind = RelaxationKind::L1;
  int num_nodes = 0;
  int num_tasks = 0;
  int num_edges = 0;
  int num_vars = 0;
  std::vector<double> objective;  ///< size num_vars
  double constant_offset = 0.0;   ///< 0 for L1, -w(E_G) for L2
  std::vector<ProgramRow> rows;

  int y_index(int v, int t) const { return v * num_tasks + t; }
  int aux_index(int e) const { return num_nodes * num_tasks + e; }               // L1
  int aux_index(int e, int t) const { return num_nodes * num_tasks + e * num_tasks + t; }  // L2
};

/// Build the canonical LP form of the chosen relaxation. Its optimum over
/// [0,1] variables equals the maximum of L over the feasible polytope.
inline RelaxationProgram build_program(const Instance& inst, RelaxationKind kind) {
  RelaxationProgram p;
  p.kind = kind;
  p.num_nodes = inst.num_nodes();
  p.num_tasks = inst.num_tasks();
  p.num_edges = static_cast<int>(inst.edges().size());
  const int yv = p.num_nodes * p.num_tasks;
  p.num_vars = yv + (kind == RelaxationKind::L1 ? p.num_edges : p.num_edges * p.num_tasks);
  p.constant_offset = kind == RelaxationKind::L1 ? 0.0 : -inst.total_conflict_weight();

  p.objective.assign(static_cast<std::size_t>(p.num_vars), 0.0);
  for (int v = 0; v < p.num_nodes; ++v)
    for (int t = 0; t < p.num_tasks; ++t)
      p.objective[static_cast<std::size_t>(p.y_index(v, t))] = inst.lambda() * inst.preference(v, t);
  for (int e = 0; e < p.num_edges; ++e) {
    const double w = inst.edges()[static_cast<std::size_t>(e)].weight;
    if (kind == RelaxationKind::L1) {
      p.objective[static_cast<std::size_t>(p.aux_index(e))] = w;
    } else {
      for (int t = 0; t < p.num_tasks; ++t) p.objective[static_cast<std::size_t>(p.aux_index(e, t))] = w;
    }
  }

  for (int v = 0; v < p.num_nodes; ++v) {
    ProgramRow row{RowKind::RowSum, v, -1, {}, lp::Relation::Equal, 1.0};
    for (int t = 0; t < p.num_tasks; ++t) row.terms.push_back({p.y_index(v, t), 1.0});
    p.rows.push_back(std::move(row));
  }
  for (int t = 0; t < p.num_tasks; ++t) {
    ProgramRow row{RowKind::Capacity, t, -1, {}, lp::Relation::LessEqual, static_cast<double>(inst.capacity(t))};
    for (int v = 0; v < p.num_nodes; ++v) row.terms.push_back({p.y_index(v, t), 1.0});
    p.rows.push_back(std::move(row));
  }
  for (int e = 0; e < p.num_edges; ++e) {
    const auto& edge = inst.edges()[static_cast<std::size_t>(e)];
    if (kind == RelaxationKind::L1) {
      p.rows.push_back({RowKind::AuxUpper, e, -1, {{p.aux_index(e), 1.0}}, lp::Relation::LessEqual, 1.0});
      for (int t = 0; t < p.num_tasks; ++t) {
        ProgramRow row{RowKind::AuxMin, e, t, {}, lp::Relation::LessEqual, 2.0};
        row.terms = {{p.aux_index(e), 1.0}, {p.y_index(edge.u, t), 1.0}, {p.y_index(edge.v, t), 1.0}};
        p.rows.push_back(std::move(row));
      }
    } else {
      for (int t = 0; t < p.num_tasks; ++t) {
        p.rows.push_back({RowKind::AuxUpper, e, t, {{p.aux_index(e, t), 1.0}}, lp::Relation::LessEqual, 1.0});
        ProgramRow row{RowKind::AuxMin, e, t, {}, lp::Relation::LessEqual, 0.0};
        row.terms = {{p.aux_index(e, t), 1.0}, {p.y_index(edge.u, t), -1.0}, {p.y_index(edge.v, t), -1.0}};
        p.rows.push_back(std::move(row));
      }
    }
  }
  return p;
}

/// Dump a program in CPLEX LP text format (fixed field order) for
/// cross-checking against external solvers.
inline void write_lp_format(const RelaxationProgram& p, const Instance& inst, std::ostream& os) {
  auto clean = [](std::string s) {
    for (char& c : s)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) c = '_';
    return s;
  };
  auto var_name = [&](int j) -> std::string {
    const int yv = p.num_nodes * p.num_tasks;
    if (j < yv)
      return "y_" + clean(inst.node_id(j / p.num_tasks)) + "_" + clean(inst.task_id(j % p.num_tasks));
    if (p.kind == RelaxationKind::L1) return "z_" + std::to_string(j - yv);
    const int aux = j - yv;
    return "x_" + std::to_string(aux / p.num_tasks) + "_" + clean(inst.task_id(aux % p.num_tasks));
  };
  auto row_name = [&](const ProgramRow& row) -> std::string {
    switch (row.kind) {
      case RowKind::RowSum:
        return "assign_" + clean(inst.node_id(row.ref_a));
      case RowKind::Capacity:
        return "cap_" + clean(inst.task_id(row.ref_a));
      case RowKind::AuxUpper:
        return row.ref_b < 0 ? "ub_" + std::to_string(row.ref_a)
                             : "ub_" + std::to_string(row.ref_a) + "_" + std::to_string(row.ref_b);
      case RowKind::AuxMin:
        return "min_" + std::to_string(row.ref_a) + "_" + std::to_string(row.ref_b);
    }
    return "r";
  };
  os << "\\ " << to_string(p.kind) << " relaxation, constant offset " << p.constant_offset << "\n";
  os << "Maximize\n obj:";
  bool first = true;
  for (int j = 0; j < p.num_vars; ++j) {
    const double c = p.objective[static_cast<std::size_t>(j)];
    if (c == 0.0) continue;
    os << (first ? " " : (c >= 0 ? " + " : " ")) << c << " " << var_name(j);
    first = false;
  }
  if (first) os << " 0 " << var_name(0);
  os << "\nSubject To\n";
  for (const auto& row : p.rows) {
    os << " " << row_name(row) << ":";
    bool f = true;
    for (const auto& [j, c] : row.terms) {
      os << (f ? " " : (c >= 0 ? " + " : " ")) << c << " " << var_name(j);
      f = false;
    }
    os << (row.rel == lp::Relation::Equal ? " = " : " <= ") << row.rhs << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < p.num_vars; ++j) os << " 0 <= " << var_name(j) << " <= 1\n";
  os << "End\n";
}

enum class LPStatus { Optimal, IterationLimit };

/// An epsilon-optimal feasible fractional solution of the chosen relaxation.
struct LPResult {
  FractionalSolution solution;
  double objective_value = 0.0;  ///< L value including the constant offset
  long iterations = 0;
  LPStatus status = LPStatus::Optimal;
  int generation_rounds = 0;  ///< min-expression rows are generated on demand
  int rows_generated = 0;
};

namespace detail {

/// Shared solver for plain and compact programs. `sizes[v]` weights node v in
/// capacity rows and scales its preference coefficients (all ones for the
/// plain relaxation).
inline LPResult solve_relaxation_weighted(const Instance& inst, const std::vector<int>& sizes, RelaxationKind kind,
                                          lp::SimplexSolver::Options options) {
  const int V = inst.num_nodes();
  const int T = inst.num_tasks();
  if (static_cast<int>(sizes.size()) != V) throw std::invalid_argument("solve_relaxation: sizes do not match nodes");

  lp::SimplexSolver solver(options);
  for (int v = 0; v < V; ++v)
    for (int t = 0; t < T; ++t)
      solver.add_variable(inst.lambda() * sizes[static_cast<std::size_t>(v)] * inst.preference(v, t), 0.0, 1.0);
  const auto y_var = [T](int v, int t) { return v * T + t; };

  for (int v = 0; v < V; ++v) {
    std::vector<std::pair<int, double>> terms;
    for (int t = 0; t < T; ++t) terms.push_back({y_var(v, t), 1.0});
    solver.add_row(std::move(terms), lp::Relation::Equal, 1.0);
  }
  for (int t = 0; t < T; ++t) {
    std::vector<std::pair<int, double>> terms;
    for (int v = 0; v < V; ++v) terms.push_back({y_var(v, t), static_cast<double>(sizes[static_cast<std::size_t>(v)])});
    solver.add_row(std::move(terms), lp::Relation::LessEqual, static_cast<double>(inst.capacity(t)));
  }

  const int E = static_cast<int>(inst.edges().size());
  // L1: z_e in [0,1] with weight w_e; rows z_e + y_ut + y_vt <= 2 on demand.
  // L2 is solved through the substitution x_uvt = y_ut + y_vt - s_uvt with
  // s_uvt = max(0, y_ut + y_vt - 1): objective lambda*c*y + w(E) - sum w_e s,
  // rows y_ut + y_vt - s_uvt <= 1 on demand (s created when first needed).
  std::vector<int> l1_aux(static_cast<std::size_t>(E), -1);
  if (kind == RelaxationKind::L1)
    for (int e = 0; e < E; ++e)
      l1_aux[static_cast<std::size_t>(e)] = solver.add_variable(inst.edges()[static_cast<std::size_t>(e)].weight, 0.0, 1.0);
  std::map<std::pair<int, int>, int> l2_aux;  // (edge, task) -> excess variable
  std::vector<std::vector<char>> row_present(static_cast<std::size_t>(E), std::vector<char>(static_cast<std::size_t>(T), 0));

  LPResult out;
  out.solution = FractionalSolution(V, T);
  lp::Result res;
  const int max_rounds = 400;
  for (int round = 0;; ++round) {
    if (round >= max_rounds) {
      out.status = LPStatus::IterationLimit;
      break;
    }
    res = solver.solve();
    out.iterations += res.iterations;
    out.generation_rounds = round + 1;
    if (res.status == lp::Status::IterationLimit) {
      out.status = LPStatus::IterationLimit;
      break;
    }
    if (res.status != lp::Status::Optimal)
      throw std::runtime_error(std::string("solve_relaxation: LP reported ") +
                               (res.status == lp::Status::Infeasible ? "infeasible" : "unbounded") +
                               " on a valid instance");

    // grow the program by every min-expression row the optimum violates
    int added = 0;
    for (int e = 0; e < E; ++e) {
      const auto& edge = inst.edges()[static_cast<std::size_t>(e)];
      if (kind == RelaxationKind::L1) {
        const double z = res.x[static_cast<std::size_t>(l1_aux[static_cast<std::size_t>(e)])];
        for (int t = 0; t < T; ++t) {
          if (row_present[static_cast<std::size_t>(e)][static_cast<std::size_t>(t)]) continue;
          const double cap = 2.0 - res.x[static_cast<std::size_t>(y_var(edge.u, t))] -
                             res.x[static_cast<std::size_t>(y_var(edge.v, t))];
          if (z > cap + 1e-8) {
            solver.add_row({{l1_aux[static_cast<std::size_t>(e)], 1.0},
                            {y_var(edge.u, t), 1.0},
                            {y_var(edge.v, t), 1.0}},
                           lp::Relation::LessEqual, 2.0);
            row_present[static_cast<std::size_t>(e)][static_cast<std::size_t>(t)] = 1;
            ++added;
          }
        }
      } else {
        for (int t = 0; t < T; ++t) {
          if (row_present[static_cast<std::size_t>(e)][static_cast<std::size_t>(t)]) continue;
          const double sum = res.x[static_cast<std::size_t>(y_var(edge.u, t))] +
                             res.x[static_cast<std::size_t>(y_var(edge.v, t))];
          auto it = l2_aux.find({e, t});
          const double s = it == l2_aux.end() ? 0.0 : res.x[static_cast<std::size_t>(it->second)];
          if (sum - s > 1.0 + 1e-8) {
            int aux;
            if (it == l2_aux.end()) {
              aux = solver.add_variable(-edge.weight, 0.0, 1.0);
              l2_aux[{e, t}] = aux;
            } else {
              aux = it->second;
            }
            solver.add_row({{y_var(edge.u, t), 1.0}, {y_var(edge.v, t), 1.0}, {aux, -1.0}},
                           lp::Relation::LessEqual, 1.0);
            row_present[static_cast<std::size_t>(e)][static_cast<std::size_t>(t)] = 1;
            ++added;
          }
        }
      }
    }
    out.rows_generated += added;
    if (added == 0) break;
  }

  for (int v = 0; v < V; ++v)
    for (int t = 0; t < T; ++t)
      out.solution(v, t) = std::clamp(res.x[static_cast<std::size_t>(y_var(v, t))], 0.0, 1.0);
  return out;
}

inline FeasibilityReport check_weighted(const Instance& inst, const std::vector<int>& sizes,
                                        const FractionalSolution& y) {
  FeasibilityReport report;
  for (int v = 0; v < inst.num_nodes(); ++v)
    if (std::abs(y.row_sum(v) - 1.0) > kFeasTol) {
      report.ok = false;
      report.violations.push_back("row sum for '" + inst.node_id(v) + "' is " + std::to_string(y.row_sum(v)));
    }
  for (int t = 0; t < inst.num_tasks(); ++t) {
    double load = 0.0;
    for (int v = 0; v < inst.num_nodes(); ++v) load += sizes[static_cast<std::size_t>(v)] * y(v, t);
    if (load > inst.capacity(t) + kFeasTol) {
      report.ok = false;
      report.violations.push_back("weighted column sum for '" + inst.task_id(t) + "' is " + std::to_string(load));
    }
  }
  return report;
}

}  // namespace detail

/// Maximize the chosen relaxation over the fractional assignment polytope.
/// The returned objective is the reconstructed L value at the solution, i.e.
/// auxiliaries are set to their min-expressions rather than read off the LP.
inline LPResult solve_relaxation(const Instance& inst, RelaxationKind kind,
                                 lp::SimplexOptions options = lp::SimplexOptions()) {
  std::vector<int> ones(static_cast<std::size_t>(inst.num_nodes()), 1);
  LPResult out = detail::solve_relaxation_weighted(inst, ones, kind, options);
  if (out.status == LPStatus::Optimal) {
    const FeasibilityReport feas = feasible(inst, out.solution);
    if (!feas.ok) throw std::runtime_error("solve_relaxation: optimal LP solution infeasible: " + feas.violations.front());
    out.objective_value = eval_relaxation(inst, kind, out.solution);
  }
  return out;
}

/// Solve the compact relaxation over supernodes: row sums are per supernode
/// and capacity rows weight each supernode by its size. Preference
/// coefficients are size-weighted so the compact optimum matches the
/// objective of the unrolled solution.
inline LPResult solve_compact_relaxation(const Instance& super_instance, const std::vector<int>& supernode_sizes,
                                         RelaxationKind kind, lp::SimplexOptions options = lp::SimplexOptions()) {
  for (int s : supernode_sizes)
    if (s < 1) throw std::invalid_argument("solve_compact_relaxation: supernode sizes must be >= 1");
  LPResult out = detail::solve_relaxation_weighted(super_instance, supernode_sizes, kind, options);
  if (out.status == LPStatus::Optimal) {
    const FeasibilityReport feas = detail::check_weighted(super_instance, supernode_sizes, out.solution);
    if (!feas.ok)
      throw std::runtime_error("solve_compact_relaxation: optimal LP solution infeasible: " + feas.violations.front());
    // reconstructed objective in supernode space; spelled out rather than
    // eval_L* because preferences and capacities are size-weighted here
    const int T = super_instance.num_tasks();
    double pref = 0.0;
    for (int v = 0; v < super_instance.num_nodes(); ++v)
      for (int t = 0; t < T; ++t)
        pref += supernode_sizes[static_cast<std::size_t>(v)] * super_instance.preference(v, t) * out.solution(v, t);
    double conflict = 0.0;
    for (const auto& e : super_instance.edges()) {
      if (kind == RelaxationKind::L1) {
        double worst = 1.0;
        for (int t = 0; t < T; ++t) worst = std::min(worst, 2.0 - out.solution(e.u, t) - out.solution(e.v, t));
        conflict += e.weight * worst;
      } else {
        conflict -= e.weight;
        for (int t = 0; t < T; ++t) conflict += e.weight * std::min(1.0, out.solution(e.u, t) + out.solution(e.v, t));
      }
    }
    out.objective_value = super_instance.lambda() * pref + conflict;
  }
  return out;
}

}  // namespace teamcut
