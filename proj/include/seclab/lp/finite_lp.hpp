#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "seclab/exact/rational.hpp"
#include "seclab/lp/simplex.hpp"

namespace seclab::lp {

using exact::Rational;

inline constexpr std::size_t kDefaultMaxVariables = 50000;
inline constexpr std::size_t kExactMaxVariables = 2000;
inline constexpr std::size_t kDenseMaxCells = 25000000;  // rows * cols for the floating solver

// Coefficient sign / den in one constraint row.
struct RowEntry {
  std::size_t col;
  long num;
  long den;
};

// Finite relaxation LP_n(J, K) over z_{j|k}(i), i in [n].
class FiniteLPInstance {
 public:
  FiniteLPInstance(int n, int J, int K);

  int n() const { return n_; }
  int J() const { return J_; }
  int K() const { return K_; }
  std::size_t num_vars() const { return static_cast<std::size_t>(n_) * J_ * K_; }
  std::size_t num_rows() const { return num_vars(); }

  // 1-based (j, k, i); the constraint for the same triple shares the index.
  std::size_t var_index(int j, int k, int i) const;

  // (1/n) sum_{l=k}^{K} C(n-i, l-k) C(i-1, k-1) / C(n-1, l-1), 0/0 read as 0.
  const Rational& objective_exact(int k, int i) const;
  double objective(std::size_t var) const;

  // Row entries generated on demand; rows are never stored.
  std::vector<RowEntry> row(std::size_t r) const;
  int rhs(std::size_t r) const;

 private:
  int n_, J_, K_;
  std::vector<Rational> obj_exact_;  // [(k-1) * n + (i-1)]
  std::vector<double> obj_;
};

FiniteLPInstance build_lp(int n, int J, int K, std::size_t max_vars = kDefaultMaxVariables);

enum class SolveMode { exact, floating };

struct LPSolution {
  LpStatus status = LpStatus::iteration_limit;
  std::vector<double> values;
  double objective = 0;
  double dual_objective = 0;
  double max_primal_violation = 0;
  std::size_t iterations = 0;
  std::optional<Rational> exact_objective;
  std::vector<Rational> exact_values;
};

LPSolution solve_lp(const FiniteLPInstance& inst, SolveMode mode, const SimplexOptions& options = {});

double evaluate_objective(const FiniteLPInstance& inst, std::span<const double> z);
Rational evaluate_objective_exact(const FiniteLPInstance& inst, std::span<const Rational> z);
// Largest positive violation of the constraints (0 when feasible).
double max_constraint_violation(const FiniteLPInstance& inst, std::span<const double> z);

// CPLEX LP text format.
void write_lp_format(const FiniteLPInstance& inst, std::ostream& out);

struct ConvergenceRow {
  int n;
  double optimum;
  double gap;  // optimum - cp_star
  double duality_gap;
};

// Solves LP_n for each n (optionally on worker threads); rows keep the order of n_list.
std::vector<ConvergenceRow> convergence_experiment(int J, int K, std::span<const int> n_list, double cp_star,
                                                   unsigned threads = 1);

}  // namespace seclab::lp
