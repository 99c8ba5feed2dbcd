#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace teamcut::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal };

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Result {
  Status status = Status::Optimal;
  std::vector<double> x;  ///< structural variable values
  double objective = 0.0;
  long iterations = 0;    ///< simplex pivots + bound flips
};

struct SimplexOptions {
  double feas_tol = 1e-9;
  double dual_tol = 1e-7;
  long max_iterations = -1;  // -1: 50 * (#vars + #rows)
  int bland_after = 200;     // consecutive degenerate pivots
  int refactor_every = 120;  // pivots between basis refactorizations
  int max_rows = 60000;
};

namespace detail {

/// Sparse basis kernel: elimination-form factorization plus product-form eta
/// updates between refactorizations. ftran solves B x = a, btran solves
/// B^T pi = c, both in time proportional to factor fill, which stays near
/// nnz(B) for these near-network bases.
///
/// Index spaces: the factored matrix is [constraint row x basis position].
/// ftran maps row space to position space; btran maps position space to row
/// space.
class BasisKernel {
 public:
  bool factor(const std::vector<const std::vector<std::pair<int, double>>*>& cols, int m) {
    m_ = m;
    lops_.clear();
    etas_.clear();
    eta_entries_ = 0;
    steps_.assign(static_cast<std::size_t>(m), {});

    std::vector<std::map<int, double>> rows(static_cast<std::size_t>(m));  // row -> (col -> value)
    std::vector<std::map<int, char>> col_rows(static_cast<std::size_t>(m));  // col -> live rows
    for (int c = 0; c < m; ++c)
      for (const auto& [r, val] : *cols[static_cast<std::size_t>(c)]) {
        if (val == 0.0) continue;
        rows[static_cast<std::size_t>(r)][c] = val;
        col_rows[static_cast<std::size_t>(c)][r] = 1;
      }

    // lazy min-count priority queue over columns
    using Entry = std::pair<int, int>;  // (count, col)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
    for (int c = 0; c < m; ++c) queue.push({static_cast<int>(col_rows[static_cast<std::size_t>(c)].size()), c});

    std::vector<char> row_done(static_cast<std::size_t>(m), 0);
    std::vector<char> col_done(static_cast<std::size_t>(m), 0);

    for (int step = 0; step < m_; ++step) {
      int pcol = -1;
      while (!queue.empty()) {
        const auto [count, c] = queue.top();
        if (col_done[static_cast<std::size_t>(c)]) {
          queue.pop();
          continue;
        }
        const int live = static_cast<int>(col_rows[static_cast<std::size_t>(c)].size());
        if (live != count) {
          queue.pop();
          queue.push({live, c});
          continue;
        }
        pcol = c;
        break;
      }
      if (pcol < 0 || col_rows[static_cast<std::size_t>(pcol)].empty()) return false;  // singular

      double col_max = 0.0;
      for (const auto& [r, _] : col_rows[static_cast<std::size_t>(pcol)])
        col_max = std::max(col_max, std::abs(rows[static_cast<std::size_t>(r)].at(pcol)));
      int prow = -1;
      double pval = 0.0;
      std::size_t best_nnz = static_cast<std::size_t>(m_) + 1;
      for (const auto& [r, _] : col_rows[static_cast<std::size_t>(pcol)]) {
        const double val = rows[static_cast<std::size_t>(r)].at(pcol);
        if (std::abs(val) < 0.01 * col_max) continue;  // threshold pivoting
        if (rows[static_cast<std::size_t>(r)].size() < best_nnz) {
          best_nnz = rows[static_cast<std::size_t>(r)].size();
          prow = r;
          pval = val;
        }
      }
      if (prow < 0 || std::abs(pval) < 1e-12) return false;

      row_done[static_cast<std::size_t>(prow)] = 1;
      col_done[static_cast<std::size_t>(pcol)] = 1;

      const std::vector<std::pair<int, double>> pivot_row(rows[static_cast<std::size_t>(prow)].begin(),
                                                          rows[static_cast<std::size_t>(prow)].end());
      // retire the pivot row from live column indices
      for (const auto& [c, val] : pivot_row) col_rows[static_cast<std::size_t>(c)].erase(prow);

      // eliminate pcol from the remaining live rows
      std::vector<int> touched;
      for (const auto& [r, _] : col_rows[static_cast<std::size_t>(pcol)]) touched.push_back(r);
      for (int r : touched) {
        auto& row = rows[static_cast<std::size_t>(r)];
        const double f = row.at(pcol) / pval;
        lops_.push_back({r, prow, f});
        for (const auto& [c, val] : pivot_row) {
          auto jt = row.find(c);
          const double updated = (jt == row.end() ? 0.0 : jt->second) - f * val;
          if (std::abs(updated) > 1e-13) {
            if (jt == row.end()) {
              row[c] = updated;
              col_rows[static_cast<std::size_t>(c)][r] = 1;
            } else {
              jt->second = updated;
            }
          } else if (jt != row.end()) {
            row.erase(jt);
            col_rows[static_cast<std::size_t>(c)].erase(r);
          }
        }
      }

      Step& s = steps_[static_cast<std::size_t>(step)];
      s.pivot_row = prow;
      s.pivot_col = pcol;
      s.pivot_value = pval;
      s.urow = pivot_row;
    }
    return true;
  }

  /// position-space solution of B x = a; `a` arrives in row space.
  void ftran(std::vector<double>& a) const {
    for (const auto& op : lops_)
      a[static_cast<std::size_t>(op.row)] -= op.factor * a[static_cast<std::size_t>(op.pivot_row)];
    scratch_.assign(static_cast<std::size_t>(m_), 0.0);
    for (int step = m_ - 1; step >= 0; --step) {
      const Step& s = steps_[static_cast<std::size_t>(step)];
      double value = a[static_cast<std::size_t>(s.pivot_row)];
      for (const auto& [c, val] : s.urow)
        if (c != s.pivot_col) value -= val * scratch_[static_cast<std::size_t>(c)];
      scratch_[static_cast<std::size_t>(s.pivot_col)] = value / s.pivot_value;
    }
    a = scratch_;
    for (const auto& eta : etas_) {
      const double t = a[static_cast<std::size_t>(eta.pos)] / eta.pivot;
      a[static_cast<std::size_t>(eta.pos)] = t;
      if (t != 0.0)
        for (const auto& [i, w] : eta.entries) a[static_cast<std::size_t>(i)] -= w * t;
    }
  }

  /// row-space solution of B^T pi = c; `c` arrives in position space.
  void btran(std::vector<double>& c) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = it->pivot * c[static_cast<std::size_t>(it->pos)];
      for (const auto& [i, w] : it->entries) s += w * c[static_cast<std::size_t>(i)];
      c[static_cast<std::size_t>(it->pos)] += (c[static_cast<std::size_t>(it->pos)] - s) / it->pivot;
    }
    // solve U^T z = c in pivot order, scattering updates column-wise
    scratch_.assign(static_cast<std::size_t>(m_), 0.0);
    for (int step = 0; step < m_; ++step) {
      const Step& s = steps_[static_cast<std::size_t>(step)];
      const double z = c[static_cast<std::size_t>(s.pivot_col)] / s.pivot_value;
      scratch_[static_cast<std::size_t>(step)] = z;
      if (z != 0.0)
        for (const auto& [col, val] : s.urow)
          if (col != s.pivot_col) c[static_cast<std::size_t>(col)] -= val * z;
    }
    for (int step = 0; step < m_; ++step)
      c[static_cast<std::size_t>(steps_[static_cast<std::size_t>(step)].pivot_row)] =
          scratch_[static_cast<std::size_t>(step)];
    for (auto it = lops_.rbegin(); it != lops_.rend(); ++it)
      c[static_cast<std::size_t>(it->pivot_row)] -= it->factor * c[static_cast<std::size_t>(it->row)];
  }

  /// Rank-one basis replacement at basis position `pos` with ftran'd column w.
  void push_eta(int pos, const std::vector<double>& w, double pivot) {
    Eta eta;
    eta.pos = pos;
    eta.pivot = pivot;
    for (int i = 0; i < m_; ++i)
      if (i != pos && w[static_cast<std::size_t>(i)] != 0.0) eta.entries.push_back({i, w[static_cast<std::size_t>(i)]});
    eta_entries_ += static_cast<long>(eta.entries.size());
    etas_.push_back(std::move(eta));
  }

  long eta_entries() const { return eta_entries_; }

 private:
  struct Lop {
    int row;
    int pivot_row;
    double factor;
  };
  struct Step {
    int pivot_row = -1;
    int pivot_col = -1;
    double pivot_value = 0.0;
    std::vector<std::pair<int, double>> urow;  // final contents of the pivot row
  };
  struct Eta {
    int pos = 0;
    double pivot = 1.0;
    std::vector<std::pair<int, double>> entries;  // excludes the pivot slot
  };

  int m_ = 0;
  std::vector<Lop> lops_;
  std::vector<Step> steps_;
  std::vector<Eta> etas_;
  long eta_entries_ = 0;
  mutable std::vector<double> scratch_;
};

}  // namespace detail

/// Bounded-variable primal simplex (maximization), revised form over a sparse
/// basis factorization with product-form updates. Dantzig pricing with a
/// Bland fallback after a streak of degenerate pivots, so the method cannot
/// cycle.
///
/// Two reductions keep the working problem small: singleton <= rows fold into
/// variable bounds, and a variable touching no row is parked at its
/// objective-preferred bound.
///
/// The solver object is reusable: callers may add rows/variables after a
/// solve and solve again (callers own any cutting-plane loop).
class SimplexSolver {
 public:
  using Options = SimplexOptions;

  explicit SimplexSolver(Options options = Options()) : options_(options) {}

  int add_variable(double objective, double lo, double hi) {
    if (!(lo <= hi) || !std::isfinite(lo)) throw std::invalid_argument("simplex: bad variable bounds");
    vars_.push_back({objective, lo, hi});
    return static_cast<int>(vars_.size()) - 1;
  }

  int add_row(std::vector<std::pair<int, double>> terms, Relation rel, double rhs) {
    rows_.push_back({std::move(terms), rel, rhs, false});
    return static_cast<int>(rows_.size()) - 1;
  }

  int num_variables() const { return static_cast<int>(vars_.size()); }

  Result solve() {
    fold_singleton_rows();
    std::vector<int> active_ids;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!rows_[i].folded) active_ids.push_back(static_cast<int>(i));

    Result result;
    if (static_cast<int>(active_ids.size()) > options_.max_rows) {
      result.status = Status::IterationLimit;
      result.x.assign(vars_.size(), 0.0);
      return result;
    }
    const long budget = options_.max_iterations > 0
                            ? options_.max_iterations
                            : 50L * (static_cast<long>(vars_.size()) + static_cast<long>(active_ids.size()) + 10);

    CoreResult cr = solve_core(active_ids, budget);
    result.status = cr.status;
    result.iterations = cr.iterations;
    result.x = std::move(cr.x);
    result.objective = objective_value(result.x);
    return result;
  }

 private:
  struct Var {
    double obj, lo, hi;
  };
  struct Row {
    std::vector<std::pair<int, double>> terms;
    Relation rel;
    double rhs;
    bool folded = false;
  };

  // a <= singleton row is just a bound in disguise
  void fold_singleton_rows() {
    for (auto& row : rows_) {
      if (row.folded || row.rel != Relation::LessEqual || row.terms.size() != 1) continue;
      const auto [var, coeff] = row.terms.front();
      if (coeff == 0.0) continue;
      Var& v = vars_[static_cast<std::size_t>(var)];
      if (coeff > 0.0)
        v.hi = std::min(v.hi, row.rhs / coeff);
      else
        v.lo = std::max(v.lo, row.rhs / coeff);
      if (v.lo > v.hi) v.hi = v.lo;  // caught as infeasible later if it matters
      row.folded = true;
    }
  }

  double objective_value(const std::vector<double>& x) const {
    double obj = 0.0;
    for (std::size_t j = 0; j < vars_.size(); ++j) obj += vars_[j].obj * x[j];
    return obj;
  }

  struct CoreResult {
    Status status = Status::Optimal;
    std::vector<double> x;  // structural only
    long iterations = 0;
  };

  enum : char { kBasic = 0, kAtLower = 1, kAtUpper = 2 };

  CoreResult solve_core(const std::vector<int>& active_ids, long iteration_budget) const {
    const int n_struct = static_cast<int>(vars_.size());
    const int m = static_cast<int>(active_ids.size());
    CoreResult out;

    // augmented problem: structurals, one slack per <= row, artificials on demand
    std::vector<Var> avars = vars_;
    std::vector<std::vector<std::pair<int, double>>> cols(vars_.size());
    std::vector<double> rhs(static_cast<std::size_t>(m));
    std::vector<int> slack_of(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
      const Row& row = rows_[static_cast<std::size_t>(active_ids[static_cast<std::size_t>(i)])];
      rhs[static_cast<std::size_t>(i)] = row.rhs;
      for (const auto& [var, coeff] : row.terms)
        if (coeff != 0.0) cols[static_cast<std::size_t>(var)].push_back({i, coeff});
    }
    for (int i = 0; i < m; ++i) {
      const Row& row = rows_[static_cast<std::size_t>(active_ids[static_cast<std::size_t>(i)])];
      if (row.rel == Relation::LessEqual) {
        slack_of[static_cast<std::size_t>(i)] = static_cast<int>(avars.size());
        avars.push_back({0.0, 0.0, kInf});
        cols.push_back({{i, 1.0}});
      }
    }

    std::vector<double> x(avars.size(), 0.0);
    std::vector<char> state(avars.size(), kAtLower);

    // structurals start at the objective-preferred bound when their column is
    // empty, else at the lower bound
    for (int j = 0; j < n_struct; ++j) {
      const Var& v = avars[static_cast<std::size_t>(j)];
      if (cols[static_cast<std::size_t>(j)].empty() && v.obj > 0.0) {
        if (!std::isfinite(v.hi)) {
          out.status = Status::Unbounded;
          out.x.assign(x.begin(), x.begin() + n_struct);
          return out;
        }
        x[static_cast<std::size_t>(j)] = v.hi;
        state[static_cast<std::size_t>(j)] = kAtUpper;
      } else {
        x[static_cast<std::size_t>(j)] = v.lo;
      }
    }

    std::vector<double> residual(rhs);
    for (int j = 0; j < n_struct; ++j) {
      const double xj = x[static_cast<std::size_t>(j)];
      if (xj == 0.0) continue;
      for (const auto& [row, coeff] : cols[static_cast<std::size_t>(j)])
        residual[static_cast<std::size_t>(row)] -= coeff * xj;
    }

    // initial basis: slack when it absorbs the residual, artificial otherwise
    std::vector<int> basic(static_cast<std::size_t>(m), -1);
    std::vector<char> is_artificial(avars.size(), 0);
    bool any_artificial = false;
    for (int i = 0; i < m; ++i) {
      const double r = residual[static_cast<std::size_t>(i)];
      const int slack = slack_of[static_cast<std::size_t>(i)];
      if (slack >= 0 && r >= 0.0) {
        basic[static_cast<std::size_t>(i)] = slack;
        x[static_cast<std::size_t>(slack)] = r;
        state[static_cast<std::size_t>(slack)] = kBasic;
      } else {
        const int art = static_cast<int>(avars.size());
        avars.push_back({0.0, 0.0, kInf});
        cols.push_back({{i, r < 0.0 ? -1.0 : 1.0}});
        is_artificial.push_back(1);
        x.push_back(std::abs(r));
        state.push_back(kBasic);
        basic[static_cast<std::size_t>(i)] = art;
        any_artificial = true;
      }
    }
    const int total = static_cast<int>(avars.size());

    detail::BasisKernel kernel;
    auto refactor = [&]() {
      std::vector<const std::vector<std::pair<int, double>>*> bcols(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i)
        bcols[static_cast<std::size_t>(i)] = &cols[static_cast<std::size_t>(basic[static_cast<std::size_t>(i)])];
      if (!kernel.factor(bcols, m)) throw std::runtime_error("simplex: singular basis during refactorization");
      std::vector<double> rhs_eff(rhs);
      for (int j = 0; j < total; ++j) {
        if (state[static_cast<std::size_t>(j)] == kBasic) continue;
        const double xj = x[static_cast<std::size_t>(j)];
        if (xj == 0.0) continue;
        for (const auto& [row, coeff] : cols[static_cast<std::size_t>(j)])
          rhs_eff[static_cast<std::size_t>(row)] -= coeff * xj;
      }
      kernel.ftran(rhs_eff);
      for (int i = 0; i < m; ++i)
        x[static_cast<std::size_t>(basic[static_cast<std::size_t>(i)])] = rhs_eff[static_cast<std::size_t>(i)];
    };
    refactor();

    std::vector<double> pi(static_cast<std::size_t>(m));
    std::vector<double> w(static_cast<std::size_t>(m));
    std::vector<char> banned(static_cast<std::size_t>(total), 0);
    long iterations = 0;
    int degenerate_streak = 0;
    int pivots_since_refactor = 0;
    bool just_refactored = true;

    for (int phase = any_artificial ? 1 : 2; phase <= 2; ++phase) {
      if (phase == 2 && any_artificial) {
        double infeas = 0.0;
        for (int j = 0; j < total; ++j)
          if (is_artificial[static_cast<std::size_t>(j)]) infeas += std::abs(x[static_cast<std::size_t>(j)]);
        if (infeas > 1e-7) {
          out.status = Status::Infeasible;
          out.iterations = iterations;
          out.x.assign(x.begin(), x.begin() + n_struct);
          return out;
        }
        for (int j = 0; j < total; ++j)
          if (is_artificial[static_cast<std::size_t>(j)]) avars[static_cast<std::size_t>(j)].hi = 0.0;
      }

      auto cost_of = [&](int j) {
        if (phase == 1) return is_artificial[static_cast<std::size_t>(j)] ? -1.0 : 0.0;
        return is_artificial[static_cast<std::size_t>(j)] ? 0.0 : avars[static_cast<std::size_t>(j)].obj;
      };

      double obj_scale = 1.0;
      if (phase == 2)
        for (int j = 0; j < n_struct; ++j)
          obj_scale = std::max(obj_scale, std::abs(avars[static_cast<std::size_t>(j)].obj));
      const double dual_tol = options_.dual_tol * obj_scale;

      bool bland = false;
      while (true) {
        if (iterations >= iteration_budget) {
          out.status = Status::IterationLimit;
          out.iterations = iterations;
          out.x.assign(x.begin(), x.begin() + n_struct);
          return out;
        }

        // duals: scatter basic costs by position, btran into row space
        for (int i = 0; i < m; ++i) pi[static_cast<std::size_t>(i)] = cost_of(basic[static_cast<std::size_t>(i)]);
        kernel.btran(pi);

        int entering = -1;
        double best_score = dual_tol;
        int dir = 0;
        for (int j = 0; j < total; ++j) {
          const char st = state[static_cast<std::size_t>(j)];
          if (st == kBasic || banned[static_cast<std::size_t>(j)]) continue;
          const Var& v = avars[static_cast<std::size_t>(j)];
          if (v.hi - v.lo <= 0.0) continue;                        // fixed (incl. phase-2 artificials)
          if (cols[static_cast<std::size_t>(j)].empty()) continue;  // parked at preferred bound
          double d = cost_of(j);
          for (const auto& [row, coeff] : cols[static_cast<std::size_t>(j)])
            d -= coeff * pi[static_cast<std::size_t>(row)];
          if (st == kAtLower && d > best_score) {
            best_score = d;
            entering = j;
            dir = +1;
            if (bland) break;
          } else if (st == kAtUpper && -d > best_score) {
            best_score = -d;
            entering = j;
            dir = -1;
            if (bland) break;
          }
        }
        if (entering < 0) break;  // phase optimal

        std::fill(w.begin(), w.end(), 0.0);
        for (const auto& [row, coeff] : cols[static_cast<std::size_t>(entering)])
          w[static_cast<std::size_t>(row)] = coeff;
        kernel.ftran(w);

        const Var& ev = avars[static_cast<std::size_t>(entering)];
        double delta = std::isfinite(ev.hi) ? ev.hi - ev.lo : kInf;
        int leaving_pos = -1;
        double leaving_rate = 0.0;
        for (int i = 0; i < m; ++i) {
          if (w[static_cast<std::size_t>(i)] == 0.0) continue;
          const double rate = dir * w[static_cast<std::size_t>(i)];
          const int bj = basic[static_cast<std::size_t>(i)];
          const Var& bv = avars[static_cast<std::size_t>(bj)];
          const double xb = x[static_cast<std::size_t>(bj)];
          double limit;
          if (rate > options_.feas_tol)
            limit = (xb - bv.lo) / rate;
          else if (rate < -options_.feas_tol && std::isfinite(bv.hi))
            limit = (bv.hi - xb) / (-rate);
          else
            continue;
          if (limit < 0.0) limit = 0.0;
          bool take = false;
          if (limit < delta - 1e-12) {
            take = true;
          } else if (limit <= delta + 1e-12) {
            if (leaving_pos < 0 && limit <= delta) {
              take = true;
            } else if (leaving_pos >= 0) {
              // tie: Bland mode picks the smallest variable index (required
              // for finiteness), otherwise the stablest pivot
              take = bland ? basic[static_cast<std::size_t>(i)] < basic[static_cast<std::size_t>(leaving_pos)]
                           : std::abs(rate) > std::abs(leaving_rate);
            }
          }
          if (take) {
            delta = std::min(delta, limit);
            leaving_pos = i;
            leaving_rate = rate;
          }
        }
        if (!std::isfinite(delta)) {
          out.status = Status::Unbounded;
          out.iterations = iterations;
          out.x.assign(x.begin(), x.begin() + n_struct);
          return out;
        }

        // numerically unusable pivot: refresh the factorization and re-price;
        // if it persists right after a refactor, shelve this column
        if (leaving_pos >= 0 && std::abs(w[static_cast<std::size_t>(leaving_pos)]) < 1e-10) {
          if (just_refactored) {
            banned[static_cast<std::size_t>(entering)] = 1;
          } else {
            refactor();
            pivots_since_refactor = 0;
            just_refactored = true;
          }
          continue;
        }

        ++iterations;
        degenerate_streak = delta <= options_.feas_tol ? degenerate_streak + 1 : 0;
        if (degenerate_streak > options_.bland_after) bland = true;
        if (degenerate_streak == 0) bland = false;

        if (delta > 0.0) {
          for (int i = 0; i < m; ++i) {
            const double change = dir * delta * w[static_cast<std::size_t>(i)];
            if (change != 0.0) x[static_cast<std::size_t>(basic[static_cast<std::size_t>(i)])] -= change;
          }
          x[static_cast<std::size_t>(entering)] += dir * delta;
        }

        if (leaving_pos < 0) {
          state[static_cast<std::size_t>(entering)] = dir > 0 ? kAtUpper : kAtLower;
          x[static_cast<std::size_t>(entering)] = dir > 0 ? ev.hi : ev.lo;
          std::fill(banned.begin(), banned.end(), 0);
          just_refactored = false;
          continue;
        }

        const int leaving = basic[static_cast<std::size_t>(leaving_pos)];
        state[static_cast<std::size_t>(leaving)] = leaving_rate > 0.0 ? kAtLower : kAtUpper;
        x[static_cast<std::size_t>(leaving)] = leaving_rate > 0.0 ? avars[static_cast<std::size_t>(leaving)].lo
                                                                  : avars[static_cast<std::size_t>(leaving)].hi;
        basic[static_cast<std::size_t>(leaving_pos)] = entering;
        state[static_cast<std::size_t>(entering)] = kBasic;
        std::fill(banned.begin(), banned.end(), 0);

        kernel.push_eta(leaving_pos, w, w[static_cast<std::size_t>(leaving_pos)]);
        just_refactored = false;
        if (++pivots_since_refactor >= options_.refactor_every ||
            kernel.eta_entries() > 64L * m + 100000) {
          refactor();
          pivots_since_refactor = 0;
          just_refactored = true;
        }
      }
    }

    out.status = Status::Optimal;
    out.iterations = iterations;
    out.x.assign(x.begin(), x.begin() + n_struct);
    return out;
  }

  Options options_;
  std::vector<Var> vars_;
  std::vector<Row> rows_;
};

}  // namespace teamcut::lp
