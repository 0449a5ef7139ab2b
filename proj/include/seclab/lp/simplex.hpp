#pragma once

#include <cstddef>
#include <vector>

#include "seclab/exact/rational.hpp"

namespace seclab::lp {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(LpStatus s);

// maximize c.x subject to A x <= b, x >= 0, with b >= 0 (slack basis is feasible).
struct DenseLp {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // column-major, a[col * rows + row]
  std::vector<double> b;
  std::vector<double> c;
};

struct ExactLp {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<exact::Rational> a;  // row-major, a[row * cols + col]
  std::vector<exact::Rational> b;
  std::vector<exact::Rational> c;
};

struct SimplexOptions {
  std::size_t max_iterations = 200000;
  std::size_t refactor_every = 100;
  std::size_t stall_limit = 50;  // consecutive degenerate pivots before switching to Bland's rule
  double pricing_tol = 1e-10;
  double pivot_tol = 1e-9;
};

struct SimplexResult {
  LpStatus status = LpStatus::iteration_limit;
  std::vector<double> x;
  std::vector<double> duals;  // one per row
  double objective = 0;
  double dual_objective = 0;
  std::size_t iterations = 0;
};

struct ExactSimplexResult {
  LpStatus status = LpStatus::iteration_limit;
  std::vector<exact::Rational> x;
  std::vector<exact::Rational> duals;
  exact::Rational objective;
  exact::Rational dual_objective;
  std::size_t iterations = 0;
};

// Revised primal simplex with a dense basis inverse, partial Dantzig pricing and a Bland fallback.
SimplexResult solve_revised_simplex(const DenseLp& lp, const SimplexOptions& options = {});

// Dense tableau simplex over the rationals with Bland's rule.
ExactSimplexResult solve_exact_simplex(const ExactLp& lp, std::size_t max_iterations = 1000000);

}  // namespace seclab::lp
