#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fsched::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

enum class Status { kOptimal, kInfeasible, kUnbounded, kNumericalFailure, kLimitReached };

std::string to_string(Status status);

struct Entry {
  int index = 0;
  double value = 0.0;
};

struct Variable {
  double lower = 0.0;
  double upper = kInfinity;
  double cost = 0.0;
  bool integer = false;
  std::string name;
};

struct Constraint {
  std::vector<Entry> entries;  // variable index -> coefficient
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

/// Minimization LP/MIP in row form. Columns and rows can be appended at any
/// time; solutions obtained before a change no longer describe the model.
class LinearProgram {
 public:
  int add_variable(double cost, double lower = 0.0, double upper = kInfinity, bool integer = false,
                   std::string name = {});
  /// Appends a variable together with its coefficients in existing rows.
  int add_column(double cost, std::span<const Entry> rows, double lower = 0.0, double upper = kInfinity,
                 bool integer = false, std::string name = {});
  /// Appends a constraint over existing variables.
  int add_row(std::span<const Entry> coeffs, Sense sense, double rhs, std::string name = {});

  void set_bounds(int var, double lower, double upper);
  void set_cost(int var, double cost);

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const Variable& variable(int j) const { return vars_.at(j); }
  const Constraint& row(int i) const { return rows_.at(i); }
  bool has_integers() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
};

enum class BasisStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

/// Simplex basis snapshot usable as a warm start. Columns or rows added
/// after the snapshot start nonbasic / with a basic slack respectively.
struct Basis {
  std::vector<BasisStatus> columns;
  std::vector<BasisStatus> rows;
  bool empty() const { return columns.empty() && rows.empty(); }
};

struct LpSolution {
  Status status = Status::kNumericalFailure;
  double objective = 0.0;
  std::vector<double> primal;
  /// Row duals; >= 0 on >= rows and <= 0 on <= rows at a minimum.
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  Basis basis;
  int iterations = 0;
};

struct SimplexOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;
  int max_iterations = 0;  // 0: scale with problem size
};

/// Bounded-variable primal simplex. Reusable across bound changes on the
/// same model, which is how branch-and-bound drives it.
class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp, SimplexOptions options = {});
  ~Simplex();
  Simplex(Simplex&&) noexcept;
  Simplex& operator=(Simplex&&) noexcept;

  LpSolution solve(const Basis* warm_start = nullptr);
  /// Solves with per-variable bounds replacing the model's.
  LpSolution solve(std::span<const double> lower, std::span<const double> upper, const Basis* warm_start = nullptr);

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

LpSolution solve_lp(const LinearProgram& lp, const Basis* warm_start = nullptr, SimplexOptions options = {});

/// Strong-duality residual |c x - (y b + d l/u)| of an optimal solution.
double duality_residual(const LinearProgram& lp, const LpSolution& sol);
/// Largest row or bound violation of `x`.
double max_primal_violation(const LinearProgram& lp, std::span<const double> x);

struct MipOptions {
  double integrality_tol = 1e-6;
  /// Nodes whose bound is within this of the incumbent are pruned.
  double absolute_gap = 1e-9;
  std::int64_t node_limit = 5'000'000;
  SimplexOptions simplex;
};

struct MipSolution {
  Status status = Status::kNumericalFailure;
  double objective = 0.0;
  std::vector<double> values;
  std::int64_t nodes = 0;
};

/// Depth-first branch-and-bound on most-fractional variables. Optimal
/// status means proven optimal within `absolute_gap`.
MipSolution solve_mip(const LinearProgram& lp, MipOptions options = {});

/// CPLEX LP text format, for debugging.
std::string to_lp_format(const LinearProgram& lp);

}  // namespace fsched::lp
