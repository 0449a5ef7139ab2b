#include "seclab/lp/finite_lp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <thread>

#include "seclab/errors.hpp"

namespace seclab::lp {

namespace {

mpz_class binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace

FiniteLPInstance::FiniteLPInstance(int n, int J, int K) : n_(n), J_(J), K_(K) {
  obj_exact_.reserve(static_cast<std::size_t>(K) * n);
  for (int k = 1; k <= K; ++k)
    for (int i = 1; i <= n; ++i) {
      mpq_class sum = 0;
      for (int l = k; l <= K; ++l) {
        const mpz_class den = binom(n - 1, l - 1);
        if (den == 0) continue;
        mpq_class term(binom(n - i, l - k) * binom(i - 1, k - 1), den);
        term.canonicalize();
        sum += term;
      }
      sum /= n;
      obj_exact_.emplace_back(mpq_class(sum));
    }
  obj_.resize(num_vars());
  for (int j = 1; j <= J; ++j)
    for (int k = 1; k <= K; ++k)
      for (int i = 1; i <= n; ++i) obj_[var_index(j, k, i)] = objective_exact(k, i).to_double();
}

std::size_t FiniteLPInstance::var_index(int j, int k, int i) const {
  if (j < 1 || j > J_ || k < 1 || k > K_ || i < 1 || i > n_) throw std::out_of_range("var_index out of range");
  return (static_cast<std::size_t>(j - 1) * K_ + static_cast<std::size_t>(k - 1)) * n_ + static_cast<std::size_t>(i - 1);
}

const Rational& FiniteLPInstance::objective_exact(int k, int i) const {
  return obj_exact_.at(static_cast<std::size_t>(k - 1) * n_ + static_cast<std::size_t>(i - 1));
}

double FiniteLPInstance::objective(std::size_t var) const { return obj_.at(var); }

std::vector<RowEntry> FiniteLPInstance::row(std::size_t r) const {
  const int i = static_cast<int>(r % n_) + 1;
  const int k = static_cast<int>((r / n_) % K_) + 1;
  const int j = static_cast<int>(r / (static_cast<std::size_t>(n_) * K_)) + 1;
  std::vector<RowEntry> out;
  out.push_back({var_index(j, k, i), 1, 1});
  for (int m = 1; m < i; ++m)
    for (int l = 1; l <= K_; ++l) {
      out.push_back({var_index(j, l, m), 1, m});
      if (j < J_) out.push_back({var_index(j + 1, l, m), -1, m});
    }
  return out;
}

int FiniteLPInstance::rhs(std::size_t r) const {
  return r / (static_cast<std::size_t>(n_) * K_) == static_cast<std::size_t>(J_ - 1) ? 1 : 0;
}

FiniteLPInstance build_lp(int n, int J, int K, std::size_t max_vars) {
  if (n < 1 || J < 1 || K < 1) throw std::invalid_argument("build_lp: n, J, K must be >= 1");
  const auto vars = static_cast<std::size_t>(n) * J * K;
  if (vars > max_vars)
    throw SizeLimitError("build_lp: " + std::to_string(vars) + " variables exceed the limit " + std::to_string(max_vars));
  return FiniteLPInstance(n, J, K);
}

double evaluate_objective(const FiniteLPInstance& inst, std::span<const double> z) {
  if (z.size() != inst.num_vars()) throw std::invalid_argument("evaluate_objective: dimension mismatch");
  double s = 0.0;
  for (std::size_t v = 0; v < z.size(); ++v) s += inst.objective(v) * z[v];
  return s;
}

Rational evaluate_objective_exact(const FiniteLPInstance& inst, std::span<const Rational> z) {
  if (z.size() != inst.num_vars()) throw std::invalid_argument("evaluate_objective_exact: dimension mismatch");
  Rational s;
  for (int j = 1; j <= inst.J(); ++j)
    for (int k = 1; k <= inst.K(); ++k)
      for (int i = 1; i <= inst.n(); ++i) s += inst.objective_exact(k, i) * z[inst.var_index(j, k, i)];
  return s;
}

double max_constraint_violation(const FiniteLPInstance& inst, std::span<const double> z) {
  if (z.size() != inst.num_vars()) throw std::invalid_argument("max_constraint_violation: dimension mismatch");
  double worst = 0.0;
  for (double v : z) worst = std::max(worst, -v);
  for (std::size_t r = 0; r < inst.num_rows(); ++r) {
    double s = 0.0;
    for (const auto& e : inst.row(r)) s += static_cast<double>(e.num) / e.den * z[e.col];
    worst = std::max(worst, s - inst.rhs(r));
  }
  return worst;
}

LPSolution solve_lp(const FiniteLPInstance& inst, SolveMode mode, const SimplexOptions& options) {
  const std::size_t m = inst.num_rows();
  const std::size_t n = inst.num_vars();
  LPSolution sol;
  if (mode == SolveMode::exact) {
    if (n > kExactMaxVariables)
      throw SizeLimitError("solve_lp: exact mode is limited to " + std::to_string(kExactMaxVariables) + " variables");
    ExactLp lp;
    lp.rows = m;
    lp.cols = n;
    lp.a.assign(m * n, Rational());
    lp.b.resize(m);
    lp.c.resize(n);
    for (std::size_t r = 0; r < m; ++r) {
      for (const auto& e : inst.row(r)) lp.a[r * n + e.col] += Rational(e.num, e.den);
      lp.b[r] = Rational(inst.rhs(r));
    }
    for (int j = 1; j <= inst.J(); ++j)
      for (int k = 1; k <= inst.K(); ++k)
        for (int i = 1; i <= inst.n(); ++i) lp.c[inst.var_index(j, k, i)] = inst.objective_exact(k, i);
    ExactSimplexResult res = solve_exact_simplex(lp);
    sol.status = res.status;
    sol.iterations = res.iterations;
    sol.exact_values = res.x;
    sol.exact_objective = evaluate_objective_exact(inst, res.x);
    for (const auto& v : res.x) sol.values.push_back(v.to_double());
    sol.objective = sol.exact_objective->to_double();
    sol.dual_objective = res.dual_objective.to_double();
  } else {
    if (m * n > kDenseMaxCells) throw SizeLimitError("solve_lp: instance too large for the dense floating solver");
    DenseLp lp;
    lp.rows = m;
    lp.cols = n;
    lp.a.assign(m * n, 0.0);
    lp.b.resize(m);
    lp.c.resize(n);
    for (std::size_t r = 0; r < m; ++r) {
      for (const auto& e : inst.row(r)) lp.a[e.col * m + r] += static_cast<double>(e.num) / e.den;
      lp.b[r] = inst.rhs(r);
    }
    for (std::size_t v = 0; v < n; ++v) lp.c[v] = inst.objective(v);
    SimplexResult res = solve_revised_simplex(lp, options);
    sol.status = res.status;
    sol.iterations = res.iterations;
    sol.values = std::move(res.x);
    sol.objective = evaluate_objective(inst, sol.values);
    sol.dual_objective = res.dual_objective;
  }
  sol.max_primal_violation = max_constraint_violation(inst, sol.values);
  return sol;
}

void write_lp_format(const FiniteLPInstance& inst, std::ostream& out) {
  auto name = [&inst](std::size_t v) {
    const int i = static_cast<int>(v % inst.n()) + 1;
    const int k = static_cast<int>((v / inst.n()) % inst.K()) + 1;
    const int j = static_cast<int>(v / (static_cast<std::size_t>(inst.n()) * inst.K())) + 1;
    return "z_" + std::to_string(j) + "_" + std::to_string(k) + "_" + std::to_string(i);
  };
  char buf[64];
  out << "\\ LP_n(J,K) with n=" << inst.n() << " J=" << inst.J() << " K=" << inst.K() << "\n";
  out << "Maximize\n obj:";
  for (std::size_t v = 0; v < inst.num_vars(); ++v) {
    if (inst.objective(v) == 0.0) continue;
    std::snprintf(buf, sizeof buf, " + %.17g %s", inst.objective(v), name(v).c_str());
    out << buf;
  }
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < inst.num_rows(); ++r) {
    out << " c_" << name(r).substr(2) << ":";
    for (const auto& e : inst.row(r)) {
      const double coef = static_cast<double>(e.num) / e.den;
      std::snprintf(buf, sizeof buf, " %s %.17g %s", coef < 0 ? "-" : "+", std::abs(coef), name(e.col).c_str());
      out << buf;
    }
    out << " <= " << inst.rhs(r) << "\n";
  }
  out << "End\n";
}

std::vector<ConvergenceRow> convergence_experiment(int J, int K, std::span<const int> n_list, double cp_star,
                                                   unsigned threads) {
  std::vector<ConvergenceRow> rows(n_list.size());
  std::vector<std::exception_ptr> errors(n_list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t idx = next++; idx < n_list.size(); idx = next++) {
      try {
        const LPSolution s = solve_lp(build_lp(n_list[idx], J, K), SolveMode::floating);
        if (s.status != LpStatus::optimal)
          throw NumericalError(std::string("finite LP solver ended with status ") + to_string(s.status));
        rows[idx] = {n_list[idx], s.objective, s.objective - cp_star, std::abs(s.objective - s.dual_objective)};
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_list.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

}  // namespace seclab::lp
