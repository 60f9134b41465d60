#include "fsched/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace fsched::lp {

std::string to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kNumericalFailure: return "numerical-failure";
    case Status::kLimitReached: return "limit-reached";
  }
  return "?";
}

int LinearProgram::add_variable(double cost, double lower, double upper, bool integer, std::string name) {
  if (lower > upper) throw std::invalid_argument("variable lower bound exceeds upper bound");
  vars_.push_back({lower, upper, cost, integer, std::move(name)});
  return num_variables() - 1;
}

int LinearProgram::add_column(double cost, std::span<const Entry> rows, double lower, double upper, bool integer,
                              std::string name) {
  for (const Entry& e : rows)
    if (e.index < 0 || e.index >= num_rows()) throw std::out_of_range("column refers to a missing row");
  const int j = add_variable(cost, lower, upper, integer, std::move(name));
  for (const Entry& e : rows)
    if (e.value != 0.0) rows_[e.index].entries.push_back({j, e.value});
  return j;
}

int LinearProgram::add_row(std::span<const Entry> coeffs, Sense sense, double rhs, std::string name) {
  Constraint c;
  c.sense = sense;
  c.rhs = rhs;
  c.name = std::move(name);
  for (const Entry& e : coeffs) {
    if (e.index < 0 || e.index >= num_variables()) throw std::out_of_range("row refers to a missing variable");
    if (e.value != 0.0) c.entries.push_back(e);
  }
  rows_.push_back(std::move(c));
  return num_rows() - 1;
}

void LinearProgram::set_bounds(int var, double lower, double upper) {
  if (lower > upper) throw std::invalid_argument("variable lower bound exceeds upper bound");
  vars_.at(var).lower = lower;
  vars_.at(var).upper = upper;
}

void LinearProgram::set_cost(int var, double cost) { vars_.at(var).cost = cost; }

bool LinearProgram::has_integers() const {
  return std::any_of(vars_.begin(), vars_.end(), [](const Variable& v) { return v.integer; });
}

// Rows are written as a_r x - s_r = 0 with the row bounds moved onto the
// logical variable s_r. Variables 0..n-1 are structural, n..n+m-1 logical.
class Simplex::Impl {
 public:
  Impl(const LinearProgram& lp, SimplexOptions options) : options_(options), n_(lp.num_variables()), m_(lp.num_rows()) {
    std::vector<int> counts(n_, 0);
    for (int r = 0; r < m_; ++r)
      for (const Entry& e : lp.row(r).entries) ++counts[e.index];
    col_start_.assign(n_ + 1, 0);
    for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + counts[j];
    col_row_.resize(col_start_[n_]);
    col_val_.resize(col_start_[n_]);
    std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
    row_entries_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      for (const Entry& e : lp.row(r).entries) {
        col_row_[fill[e.index]] = r;
        col_val_[fill[e.index]++] = e.value;
      }
      row_entries_[r] = lp.row(r).entries;
    }
    cost_.assign(n_ + m_, 0.0);
    model_lower_.resize(n_);
    model_upper_.resize(n_);
    for (int j = 0; j < n_; ++j) {
      cost_[j] = lp.variable(j).cost;
      model_lower_[j] = lp.variable(j).lower;
      model_upper_[j] = lp.variable(j).upper;
    }
    row_lower_.resize(m_);
    row_upper_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      const Constraint& c = lp.row(r);
      row_lower_[r] = c.sense == Sense::kLessEqual ? -kInfinity : c.rhs;
      row_upper_[r] = c.sense == Sense::kGreaterEqual ? kInfinity : c.rhs;
    }
  }

  LpSolution solve(std::span<const double> lower, std::span<const double> upper, const Basis* warm) {
    const int total = n_ + m_;
    lo_.resize(total);
    up_.resize(total);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lower[j];
      up_[j] = upper[j];
      if (lo_[j] > up_[j]) {
        LpSolution s;
        s.status = Status::kInfeasible;
        return s;
      }
    }
    for (int r = 0; r < m_; ++r) {
      lo_[n_ + r] = row_lower_[r];
      up_[n_ + r] = row_upper_[r];
    }
    if (!(warm && load_basis(*warm))) slack_basis();
    LpSolution sol = iterate();
    if (sol.status == Status::kNumericalFailure && warm) {
      // Retry cold with Bland's rule before giving up.
      slack_basis();
      force_bland_ = true;
      sol = iterate();
      force_bland_ = false;
    }
    return sol;
  }

  std::span<const double> model_lower() const { return model_lower_; }
  std::span<const double> model_upper() const { return model_upper_; }

 private:
  // ---- basis bookkeeping -------------------------------------------------

  BasisStatus default_status(int j) const {
    if (std::isfinite(lo_[j])) return BasisStatus::kAtLower;
    if (std::isfinite(up_[j])) return BasisStatus::kAtUpper;
    return BasisStatus::kFree;
  }

  void slack_basis() {
    status_.assign(n_ + m_, BasisStatus::kBasic);
    for (int j = 0; j < n_; ++j) status_[j] = default_status(j);
  }

  bool load_basis(const Basis& b) {
    if (static_cast<int>(b.columns.size()) > n_ || static_cast<int>(b.rows.size()) > m_) return false;
    status_.assign(n_ + m_, BasisStatus::kBasic);
    int basic = 0;
    for (int j = 0; j < n_; ++j) {
      status_[j] = j < static_cast<int>(b.columns.size()) ? b.columns[j] : default_status(j);
      if (status_[j] == BasisStatus::kBasic) ++basic;
    }
    for (int r = 0; r < m_; ++r) {
      status_[n_ + r] = r < static_cast<int>(b.rows.size()) ? b.rows[r] : BasisStatus::kBasic;
      if (status_[n_ + r] == BasisStatus::kBasic) ++basic;
    }
    if (basic != m_) return false;
    for (int j = 0; j < n_ + m_; ++j) {
      BasisStatus& s = status_[j];
      if (s == BasisStatus::kAtLower && !std::isfinite(lo_[j])) s = default_status(j);
      if (s == BasisStatus::kAtUpper && !std::isfinite(up_[j])) s = default_status(j);
      if (s == BasisStatus::kFree && (std::isfinite(lo_[j]) || std::isfinite(up_[j]))) s = default_status(j);
    }
    return true;
  }

  double nonbasic_value(int j) const {
    switch (status_[j]) {
      case BasisStatus::kAtLower: return lo_[j];
      case BasisStatus::kAtUpper: return up_[j];
      default: return 0.0;
    }
  }

  // Structural basics K and rows R whose logical is nonbasic; |K| == |R|.
  // The basis matrix is block triangular once rows are ordered R then S:
  //   B = [A_RK 0; A_SK -I], so only the k x k block A_RK needs factoring.
  bool factor() {
    for (int attempt = 0; attempt < 3; ++attempt) {
      basic_cols_.clear();
      tight_rows_.clear();
      row_pos_.assign(m_, -1);
      for (int j = 0; j < n_; ++j)
        if (status_[j] == BasisStatus::kBasic) basic_cols_.push_back(j);
      for (int r = 0; r < m_; ++r)
        if (status_[n_ + r] != BasisStatus::kBasic) {
          row_pos_[r] = static_cast<int>(tight_rows_.size());
          tight_rows_.push_back(r);
        }
      const int k = static_cast<int>(basic_cols_.size());
      if (k != static_cast<int>(tight_rows_.size())) return false;
      lu_.assign(static_cast<std::size_t>(k) * k, 0.0);
      for (int c = 0; c < k; ++c) {
        const int j = basic_cols_[c];
        for (int p = col_start_[j]; p < col_start_[j + 1]; ++p)
          if (row_pos_[col_row_[p]] >= 0) lu_[static_cast<std::size_t>(row_pos_[col_row_[p]]) * k + c] = col_val_[p];
      }
      std::vector<int> dependent;
      std::vector<bool> pivoted(k, false);
      // Column-by-column elimination with partial pivoting; columns with no
      // usable pivot are dependent and get swapped for logicals.
      std::vector<int> pivot_row_of_col(k, -1);
      for (int c = 0; c < k; ++c) {
        int best = -1;
        double best_abs = 1e-11;
        for (int i = 0; i < k; ++i) {
          if (pivoted[i]) continue;
          const double a = std::abs(lu_[static_cast<std::size_t>(i) * k + c]);
          if (a > best_abs) {
            best_abs = a;
            best = i;
          }
        }
        if (best < 0) {
          dependent.push_back(c);
          continue;
        }
        pivoted[best] = true;
        pivot_row_of_col[c] = best;
        const double piv = lu_[static_cast<std::size_t>(best) * k + c];
        for (int i = 0; i < k; ++i) {
          if (pivoted[i]) continue;
          double& lic = lu_[static_cast<std::size_t>(i) * k + c];
          if (lic == 0.0) continue;
          const double f = lic / piv;
          lic = f;
          for (int cc = c + 1; cc < k; ++cc)
            lu_[static_cast<std::size_t>(i) * k + cc] -= f * lu_[static_cast<std::size_t>(best) * k + cc];
        }
      }
      if (dependent.empty()) {
        // pivot order: column c pivots on row pivot_row_of_col[c].
        pivot_row_ = pivot_row_of_col;
        return true;
      }
      std::vector<int> free_rows;
      for (int i = 0; i < k; ++i)
        if (!pivoted[i]) free_rows.push_back(tight_rows_[i]);
      for (std::size_t d = 0; d < dependent.size(); ++d) {
        const int j = basic_cols_[dependent[d]];
        status_[j] = default_status(j);
        if (status_[j] == BasisStatus::kAtLower && x_.size() == static_cast<std::size_t>(n_ + m_) &&
            std::isfinite(up_[j]) && std::abs(x_[j] - up_[j]) < std::abs(x_[j] - lo_[j]))
          status_[j] = BasisStatus::kAtUpper;
        status_[n_ + free_rows[d]] = BasisStatus::kBasic;
      }
    }
    return false;
  }

  // The factorization stores, for each column c (in order), multipliers
  // below the pivot in non-pivoted rows; rows are eliminated in column order.
  // Solve A_RK w = rhs (rhs indexed by local row).
  void ftran(std::vector<double>& rhs, std::vector<double>& w) const {
    const int k = static_cast<int>(basic_cols_.size());
    std::vector<bool> done(k, false);
    // Forward: for columns in order, eliminate from rows not yet pivoted.
    for (int c = 0; c < k; ++c) {
      const int pr = pivot_row_[c];
      done[pr] = true;
      const double v = rhs[pr];
      if (v == 0.0) continue;
      for (int i = 0; i < k; ++i)
        if (!done[i]) rhs[i] -= lu_[static_cast<std::size_t>(i) * k + c] * v;
    }
    // Backward: U is given by pivot rows restricted to columns >= c.
    w.assign(k, 0.0);
    for (int c = k - 1; c >= 0; --c) {
      const int pr = pivot_row_[c];
      double v = rhs[pr];
      for (int cc = c + 1; cc < k; ++cc) v -= lu_[static_cast<std::size_t>(pr) * k + cc] * w[cc];
      w[c] = v / lu_[static_cast<std::size_t>(pr) * k + c];
    }
  }

  // Solve A_RK^T y = rhs (rhs indexed by basic column, y by local row).
  void btran(const std::vector<double>& rhs, std::vector<double>& y) const {
    const int k = static_cast<int>(basic_cols_.size());
    // U^T z = rhs, with z indexed by column / pivot row.
    std::vector<double> z(k, 0.0);
    for (int c = 0; c < k; ++c) {
      const int pr = pivot_row_[c];
      double v = rhs[c];
      for (int cc = 0; cc < c; ++cc) v -= lu_[static_cast<std::size_t>(pivot_row_[cc]) * k + c] * z[cc];
      z[c] = v / lu_[static_cast<std::size_t>(pr) * k + c];
    }
    // L^T: y[pr_c] = z[c] - sum over later-eliminated rows i of L(i,c) y[i]
    y.assign(k, 0.0);
    for (int c = k - 1; c >= 0; --c) {
      const int pr = pivot_row_[c];
      double v = z[c];
      for (int cc = c + 1; cc < k; ++cc) {
        const int i = pivot_row_[cc];
        v -= lu_[static_cast<std::size_t>(i) * k + c] * y[i];
      }
      y[pr] = v;
    }
  }

  void compute_primal() {
    const int total = n_ + m_;
    x_.assign(total, 0.0);
    for (int j = 0; j < total; ++j)
      if (status_[j] != BasisStatus::kBasic) x_[j] = nonbasic_value(j);
    const int k = static_cast<int>(basic_cols_.size());
    // A_RK x_K = s_R - A_RN x_N
    std::vector<double> rhs(k, 0.0);
    for (int i = 0; i < k; ++i) rhs[i] = x_[n_ + tight_rows_[i]];
    for (int j = 0; j < n_; ++j) {
      if (status_[j] == BasisStatus::kBasic || x_[j] == 0.0) continue;
      for (int p = col_start_[j]; p < col_start_[j + 1]; ++p)
        if (row_pos_[col_row_[p]] >= 0) rhs[row_pos_[col_row_[p]]] -= col_val_[p] * x_[j];
    }
    std::vector<double> w;
    if (k > 0) ftran(rhs, w);
    for (int c = 0; c < k; ++c) x_[basic_cols_[c]] = w[c];
    for (int r = 0; r < m_; ++r) {
      if (status_[n_ + r] != BasisStatus::kBasic) continue;
      double act = 0.0;
      for (const Entry& e : row_entries_[r]) act += e.value * x_[e.index];
      x_[n_ + r] = act;
    }
  }

  // Row duals for basic costs cb (indexed by variable).
  void compute_duals(const std::vector<double>& c) {
    y_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r)
      if (status_[n_ + r] == BasisStatus::kBasic) y_[r] = -c[n_ + r];
    const int k = static_cast<int>(basic_cols_.size());
    if (k == 0) return;
    std::vector<double> rhs(k);
    for (int ci = 0; ci < k; ++ci) {
      const int j = basic_cols_[ci];
      double v = c[j];
      for (int p = col_start_[j]; p < col_start_[j + 1]; ++p)
        if (row_pos_[col_row_[p]] < 0) v -= col_val_[p] * y_[col_row_[p]];
      rhs[ci] = v;
    }
    std::vector<double> yr;
    btran(rhs, yr);
    for (int i = 0; i < k; ++i) y_[tight_rows_[i]] = yr[i];
  }

  double reduced_cost(int j, const std::vector<double>& c) const {
    if (j >= n_) return c[j] + y_[j - n_];
    double d = c[j];
    for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) d -= col_val_[p] * y_[col_row_[p]];
    return d;
  }

  // Rate of change of every basic variable per unit increase of `q`.
  void direction(int q, std::vector<double>& rate) {
    rate.assign(n_ + m_, 0.0);
    const int k = static_cast<int>(basic_cols_.size());
    std::vector<double> aq(m_, 0.0);
    if (q < n_) {
      for (int p = col_start_[q]; p < col_start_[q + 1]; ++p) aq[col_row_[p]] = col_val_[p];
    } else {
      aq[q - n_] = -1.0;
    }
    std::vector<double> w;
    if (k > 0) {
      std::vector<double> rhs(k);
      for (int i = 0; i < k; ++i) rhs[i] = aq[tight_rows_[i]];
      ftran(rhs, w);
    }
    // basis solution column is B^{-1} a_q; basics move by minus that.
    for (int c = 0; c < k; ++c) rate[basic_cols_[c]] = -w[c];
    // logical basics: s = a_s x, so ds = a_sq + a_sK dx_K
    std::vector<double> ds(m_, 0.0);
    for (int r = 0; r < m_; ++r)
      if (status_[n_ + r] == BasisStatus::kBasic) ds[r] = aq[r];
    for (int c = 0; c < k; ++c) {
      const int j = basic_cols_[c];
      const double dxj = -w[c];
      if (dxj == 0.0) continue;
      for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) ds[col_row_[p]] += col_val_[p] * dxj;
    }
    for (int r = 0; r < m_; ++r)
      if (status_[n_ + r] == BasisStatus::kBasic) rate[n_ + r] = ds[r];
  }

  double feas_tol(int j, double bound) const {
    (void)j;
    return options_.feasibility_tol * (1.0 + std::min(std::abs(bound), 1e3));
  }

  bool below(int j) const { return std::isfinite(lo_[j]) && x_[j] < lo_[j] - feas_tol(j, lo_[j]); }
  bool above(int j) const { return std::isfinite(up_[j]) && x_[j] > up_[j] + feas_tol(j, up_[j]); }

  LpSolution iterate() {
    const int total = n_ + m_;
    const int limit = options_.max_iterations > 0 ? options_.max_iterations : 200 * (n_ + m_) + 2000;
    std::vector<double> phase_cost(total, 0.0);
    std::vector<double> rate;
    int iterations = 0;
    int degenerate_run = 0;

    for (;;) {
      if (!factor()) return failure(iterations);
      compute_primal();

      bool infeasible = false;
      for (int j = 0; j < total; ++j) {
        phase_cost[j] = 0.0;
        if (status_[j] != BasisStatus::kBasic) continue;
        if (below(j)) {
          phase_cost[j] = -1.0;
          infeasible = true;
        } else if (above(j)) {
          phase_cost[j] = 1.0;
          infeasible = true;
        }
      }
      const std::vector<double>& c = infeasible ? phase_cost : cost_;
      compute_duals(c);

      // Pricing.
      const bool bland = force_bland_ || degenerate_run > 30;
      int enter = -1;
      double enter_d = 0.0, best_score = 0.0;
      for (int j = 0; j < total; ++j) {
        if (status_[j] == BasisStatus::kBasic) continue;
        if (lo_[j] == up_[j]) continue;  // fixed
        const double d = reduced_cost(j, c);
        double score = 0.0;
        switch (status_[j]) {
          case BasisStatus::kAtLower: score = d < -options_.optimality_tol ? -d : 0.0; break;
          case BasisStatus::kAtUpper: score = d > options_.optimality_tol ? d : 0.0; break;
          case BasisStatus::kFree: score = std::abs(d) > options_.optimality_tol ? std::abs(d) : 0.0; break;
          default: break;
        }
        if (score <= 0.0) continue;
        if (bland) {
          enter = j;
          enter_d = d;
          break;
        }
        if (score > best_score) {
          best_score = score;
          enter = j;
          enter_d = d;
        }
      }

      if (enter < 0) {
        if (infeasible) {
          LpSolution s;
          s.status = Status::kInfeasible;
          s.iterations = iterations;
          return s;
        }
        return optimal(iterations);
      }
      if (++iterations > limit) {
        LpSolution s;
        s.status = Status::kLimitReached;
        s.iterations = iterations;
        return s;
      }

      const double dir = enter_d < 0.0 ? 1.0 : -1.0;
      direction(enter, rate);

      // Two-pass (Harris) ratio test; Bland mode uses the textbook test.
      const double piv_tol = 1e-9;
      double t_max = kInfinity;
      for (int j = 0; j < total; ++j) {
        if (status_[j] != BasisStatus::kBasic) continue;
        const double r = dir * rate[j];
        if (std::abs(r) <= piv_tol) continue;
        const double slack = bland ? 0.0 : 1.0;
        double t = kInfinity;
        if (below(j)) {
          if (r > 0) t = (lo_[j] - x_[j]) / r;
        } else if (above(j)) {
          if (r < 0) t = (x_[j] - up_[j]) / -r;
        } else if (r < 0 && std::isfinite(lo_[j])) {
          t = (x_[j] - lo_[j] + slack * feas_tol(j, lo_[j])) / -r;
        } else if (r > 0 && std::isfinite(up_[j])) {
          t = (up_[j] - x_[j] + slack * feas_tol(j, up_[j])) / r;
        }
        t_max = std::min(t_max, std::max(t, 0.0));
      }
      const double flip = up_[enter] - lo_[enter];
      if (std::isfinite(flip) && flip <= t_max) {
        status_[enter] = status_[enter] == BasisStatus::kAtLower ? BasisStatus::kAtUpper : BasisStatus::kAtLower;
        degenerate_run = 0;
        continue;
      }
      if (!std::isfinite(t_max)) {
        if (infeasible) return failure(iterations);
        LpSolution s;
        s.status = Status::kUnbounded;
        s.iterations = iterations;
        return s;
      }
      int leave = -1;
      double leave_abs = 0.0, leave_t = kInfinity;
      BasisStatus leave_status = BasisStatus::kAtLower;
      for (int j = 0; j < total; ++j) {
        if (status_[j] != BasisStatus::kBasic) continue;
        const double r = dir * rate[j];
        if (std::abs(r) <= piv_tol) continue;
        double t = kInfinity;
        BasisStatus to = BasisStatus::kAtLower;
        if (below(j)) {
          if (r > 0) t = (lo_[j] - x_[j]) / r;
        } else if (above(j)) {
          if (r < 0) {
            t = (x_[j] - up_[j]) / -r;
            to = BasisStatus::kAtUpper;
          }
        } else if (r < 0 && std::isfinite(lo_[j])) {
          t = (x_[j] - lo_[j]) / -r;
        } else if (r > 0 && std::isfinite(up_[j])) {
          t = (up_[j] - x_[j]) / r;
          to = BasisStatus::kAtUpper;
        }
        if (!std::isfinite(t)) continue;
        t = std::max(t, 0.0);
        if (t > t_max) continue;
        const bool better = bland ? (leave < 0 || t < leave_t - 1e-12) : std::abs(r) > leave_abs;
        if (better) {
          leave = j;
          leave_abs = std::abs(r);
          leave_t = t;
          leave_status = to;
        }
      }
      if (leave < 0) return failure(iterations);
      degenerate_run = leave_t < 1e-12 ? degenerate_run + 1 : 0;
      if (lo_[leave] == up_[leave]) leave_status = BasisStatus::kAtLower;
      status_[leave] = leave_status;
      status_[enter] = BasisStatus::kBasic;
    }
  }

  LpSolution failure(int iterations) const {
    LpSolution s;
    s.status = Status::kNumericalFailure;
    s.iterations = iterations;
    return s;
  }

  LpSolution optimal(int iterations) {
    LpSolution s;
    s.status = Status::kOptimal;
    s.iterations = iterations;
    s.primal.assign(x_.begin(), x_.begin() + n_);
    s.duals = y_;
    s.reduced_costs.resize(n_);
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) {
      s.reduced_costs[j] = status_[j] == BasisStatus::kBasic ? 0.0 : reduced_cost(j, cost_);
      obj += cost_[j] * x_[j];
    }
    s.objective = obj;
    s.basis.columns.assign(status_.begin(), status_.begin() + n_);
    s.basis.rows.assign(status_.begin() + n_, status_.end());
    return s;
  }

  SimplexOptions options_;
  int n_, m_;
  std::vector<int> col_start_, col_row_;
  std::vector<double> col_val_;
  std::vector<std::vector<Entry>> row_entries_;
  std::vector<double> cost_, model_lower_, model_upper_, row_lower_, row_upper_;

  std::vector<double> lo_, up_, x_, y_;
  std::vector<BasisStatus> status_;
  std::vector<int> basic_cols_, tight_rows_, row_pos_, pivot_row_;
  std::vector<double> lu_;
  bool force_bland_ = false;
};

Simplex::Simplex(const LinearProgram& lp, SimplexOptions options) : impl_(std::make_unique<Impl>(lp, options)) {}
Simplex::~Simplex() = default;
Simplex::Simplex(Simplex&&) noexcept = default;
Simplex& Simplex::operator=(Simplex&&) noexcept = default;

LpSolution Simplex::solve(const Basis* warm_start) {
  return impl_->solve(impl_->model_lower(), impl_->model_upper(), warm_start);
}

LpSolution Simplex::solve(std::span<const double> lower, std::span<const double> upper, const Basis* warm_start) {
  return impl_->solve(lower, upper, warm_start);
}

LpSolution solve_lp(const LinearProgram& lp, const Basis* warm_start, SimplexOptions options) {
  Simplex simplex(lp, options);
  return simplex.solve(warm_start);
}

double duality_residual(const LinearProgram& lp, const LpSolution& sol) {
  if (sol.status != Status::kOptimal) return kInfinity;
  // c x = y (A x) + d x; with A x at the active row bound on tight rows.
  double dual_obj = 0.0;
  for (int r = 0; r < lp.num_rows(); ++r)
    if (sol.duals[r] != 0.0) dual_obj += sol.duals[r] * lp.row(r).rhs;
  for (int j = 0; j < lp.num_variables(); ++j)
    if (sol.reduced_costs[j] != 0.0) dual_obj += sol.reduced_costs[j] * sol.primal[j];
  return std::abs(sol.objective - dual_obj);
}

double max_primal_violation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_variables(); ++j) {
    worst = std::max(worst, lp.variable(j).lower - x[j]);
    worst = std::max(worst, x[j] - lp.variable(j).upper);
  }
  for (int r = 0; r < lp.num_rows(); ++r) {
    const Constraint& c = lp.row(r);
    double act = 0.0;
    for (const Entry& e : c.entries) act += e.value * x[e.index];
    if (c.sense != Sense::kGreaterEqual) worst = std::max(worst, act - c.rhs);
    if (c.sense != Sense::kLessEqual) worst = std::max(worst, c.rhs - act);
  }
  return worst;
}

}  // namespace fsched::lp
