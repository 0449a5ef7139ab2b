#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "seclab/errors.hpp"
#include "seclab/lp/finite_lp.hpp"

using namespace seclab::lp;

TEST_CASE("instance structure for n = 2, J = K = 1") {
  const auto inst = build_lp(2, 1, 1);
  CHECK(inst.num_vars() == 2);
  CHECK(inst.objective_exact(1, 1) == Rational(1, 2));
  CHECK(inst.objective_exact(1, 2) == Rational(1, 2));
  CHECK(inst.row(0).size() == 1);
  const auto r1 = inst.row(1);  // z(2) + z(1) <= 1
  REQUIRE(r1.size() == 2);
  CHECK(inst.rhs(1) == 1);
}

TEST_CASE("objective coefficients") {
  const auto inst = build_lp(3, 1, 1);
  for (int i = 1; i <= 3; ++i) CHECK(inst.objective_exact(1, i) == Rational(1, 3));
  // (1,2), n = 3: o_{1,i} = (1/n)[1 + (n-i)/(n-1)], o_{2,i} = (1/n)(i-1)/(n-1)
  const auto k2 = build_lp(3, 1, 2);
  CHECK(k2.objective_exact(1, 1) == Rational(2, 3));
  CHECK(k2.objective_exact(2, 3) == Rational(1, 3));
  CHECK(k2.objective_exact(2, 1) == Rational(0));
}

TEST_CASE("row-sum identity sum_k o_{k,i} = K/n on random instances") {
  std::mt19937_64 rng(99);
  int cases = 0;
  for (int c = 0; c < 150; ++c) {
    const int K = 1 + static_cast<int>(rng() % 5);
    const int n = K + static_cast<int>(rng() % 40);
    const auto inst = build_lp(n, 1, K);
    const int i = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    Rational sum;
    for (int k = 1; k <= K; ++k) sum += inst.objective_exact(k, i);
    CHECK(sum * Rational(n) == Rational(K));
    ++cases;
  }
  CHECK(cases >= 100);
}

TEST_CASE("exact simplex on tiny instances") {
  CHECK(*solve_lp(build_lp(2, 1, 1), SolveMode::exact).exact_objective == Rational(1, 2));
  CHECK(*solve_lp(build_lp(3, 1, 1), SolveMode::exact).exact_objective == Rational(1, 2));
  CHECK(*solve_lp(build_lp(1, 1, 1), SolveMode::exact).exact_objective == Rational(1));
}

TEST_CASE("LP optimum equals the optimal stopping recursion") {
  for (int J = 1; J <= 3; ++J)
    for (int K = 1; K <= 3; ++K)
      for (int n : {2, 3, 5, 8}) {
        const auto sol = solve_lp(build_lp(n, J, K), SolveMode::exact);
        INFO("n=" << n << " J=" << J << " K=" << K);
        REQUIRE(sol.status == LpStatus::optimal);
        const mpq_class dp = oracle::dp_optimum(n, J, K);
        CHECK(sol.exact_objective->raw() == dp);
      }
}

TEST_CASE("floating simplex agrees with exact simplex and the recursion") {
  for (int J = 1; J <= 2; ++J)
    for (int K = 1; K <= 2; ++K) {
      const auto inst = build_lp(12, J, K);
      const auto fl = solve_lp(inst, SolveMode::floating);
      const auto ex = solve_lp(inst, SolveMode::exact);
      CHECK(fl.status == LpStatus::optimal);
      CHECK(fl.objective == doctest::Approx(ex.exact_objective->to_double()).epsilon(1e-12));
      CHECK(ex.exact_objective->raw() == oracle::dp_optimum(12, J, K));
      CHECK(fl.max_primal_violation <= 1e-9);
      CHECK(std::abs(fl.objective - fl.dual_objective) <= 1e-9);
    }
  const auto big = solve_lp(build_lp(60, 2, 2), SolveMode::floating);
  CHECK(big.objective == doctest::Approx(oracle::dp_optimum(60, 2, 2).get_d()).epsilon(1e-10));
}

TEST_CASE("evaluate_objective") {
  const auto inst = build_lp(2, 1, 1);
  CHECK(evaluate_objective(inst, std::vector<double>{1.0, 0.0}) == doctest::Approx(0.5));
  CHECK(evaluate_objective(inst, std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(evaluate_objective(inst, std::vector<double>{1.0}), std::invalid_argument);
  const auto sol = solve_lp(build_lp(30, 1, 2), SolveMode::floating);
  CHECK(evaluate_objective(build_lp(30, 1, 2), sol.values) == doctest::Approx(sol.objective).epsilon(1e-12));
}

TEST_CASE("convergence for (1,1)") {
  const std::vector<int> ns{10, 50, 200};
  const auto rows = convergence_experiment(1, 1, ns, std::exp(-1.0), 2);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.gap > 0.0);
  CHECK(rows[2].gap < 0.01);
  CHECK(rows[0].optimum == doctest::Approx(3349.0 / 8400.0).epsilon(1e-12));
}

TEST_CASE("size caps") {
  CHECK_THROWS_AS(build_lp(50001, 1, 1), seclab::SizeLimitError);
  CHECK_THROWS_AS(build_lp(10, 1, 1, 5), seclab::SizeLimitError);
  CHECK_THROWS_AS(solve_lp(build_lp(2001, 1, 1), SolveMode::exact), seclab::SizeLimitError);
  CHECK_THROWS_AS(build_lp(0, 1, 1), std::invalid_argument);
}

TEST_CASE("LP export") {
  std::ostringstream s;
  write_lp_format(build_lp(3, 2, 1), s);
  const std::string text = s.str();
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("c_2_1_3:") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
  std::size_t rows = 0;
  for (std::size_t p = text.find("<="); p != std::string::npos; p = text.find("<=", p + 1)) ++rows;
  CHECK(rows == 6);
}
