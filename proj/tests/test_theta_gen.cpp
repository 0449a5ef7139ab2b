#include <doctest.h>

#include <chrono>

#include "oracles.hpp"
#include "seclab/theta/theta_gen.hpp"

using namespace seclab::theta;
using seclab::exact::Rational;

TEST_CASE("generator reproduces the published theta fractions") {
  const ThetaSequence ts = generate_thetas(8);
  REQUIRE(ts.J() == 8);
  for (int j = 1; j <= 8; ++j) CHECK(ts[j] == Rational::parse(oracle::kTable1Thetas[static_cast<std::size_t>(j - 1)]));
}

TEST_CASE("small cases") {
  CHECK(generate_thetas(1).thetas == std::vector<Rational>{Rational(1)});
  const auto t3 = generate_thetas(3);
  CHECK(t3[2] == Rational(3, 2));
  CHECK(t3[3] == Rational(47, 24));
  CHECK(generate_thetas(5)[5] == Rational(4162637, 1474560));
}

TEST_CASE("sequence is increasing and prefix-stable") {
  const auto big = generate_thetas(12);
  CHECK(big.is_valid());
  for (int J = 1; J <= 11; ++J) {
    const auto small = generate_thetas(J);
    for (int j = 1; j <= J; ++j) CHECK(small[j] == big[j]);
  }
}

TEST_CASE("J cap and invalid J") {
  CHECK_THROWS_AS(generate_thetas(0), std::invalid_argument);
  CHECK_THROWS_AS(generate_thetas(17), std::invalid_argument);
  CHECK_NOTHROW(generate_thetas(17, 17));
}

TEST_CASE("thresholds and payoffs") {
  const auto th = thresholds(generate_thetas(2));
  CHECK(th[0].to_fixed(6) == "0.367879");
  CHECK(th[1].to_fixed(6) == "0.223130");
  CHECK(thresholds(ThetaSequence{{Rational(0)}})[0].to_double() == 1.0);
  for (int J = 1; J <= 8; ++J)
    CHECK(payoff_k1(generate_thetas(J)).to_fixed(6) == oracle::kTable1Payoffs[static_cast<std::size_t>(J - 1)]);
}

TEST_CASE("thresholds agree with an independent numerical integration") {
  const auto numeric = oracle::k1_thresholds_numeric(6);
  const auto th = thresholds(generate_thetas(6));
  for (std::size_t j = 0; j < 6; ++j) CHECK(th[j].to_double() == doctest::Approx(numeric[j]).epsilon(1e-6));
}

TEST_CASE("certificate pieces") {
  const auto c1 = build_dual_certificate(generate_thetas(1));
  REQUIRE(c1.row(1).size() == 1);
  CHECK(c1.row(1)[0].poly == seclab::exact::LogPolynomial({1, 1}, 2));

  const auto ts2 = generate_thetas(2);
  const auto c2 = build_dual_certificate(ts2);
  REQUIRE(c2.row(2).size() == 2);
  CHECK(c2.row(2)[0].poly == seclab::exact::LogPolynomial({1, 0, Rational(-1, 2)}, 3));
  CHECK(c2.row(2)[1].poly == seclab::exact::LogPolynomial({Rational(3, 2), 1}, 3));
  CHECK(q_at_theta(c2, ts2, 2, Rational(3, 2)).is_zero());
  CHECK(q_at_theta(c2, ts2, 2, Rational(0)) == Rational(1));
  CHECK(q_at_theta(c2, ts2, 2, Rational(2)).is_zero());

  CHECK_THROWS_AS(build_dual_certificate(ThetaSequence{{Rational(1), Rational(2)}}), std::invalid_argument);
}

TEST_CASE("dual objective equals payoff") {
  for (int J = 1; J <= 8; ++J) {
    const auto ts = generate_thetas(J);
    const auto cert = build_dual_certificate(ts);
    const auto diff = (dual_objective_k1(cert, 256) - payoff_k1(ts, 256)).abs();
    CHECK(diff.to_double() < 1e-60);
  }
  CHECK(dual_objective_k1(build_dual_certificate(generate_thetas(1))).to_fixed(6) == "0.367879");
  CHECK(dual_objective_k1(build_dual_certificate(generate_thetas(3))).to_fixed(6) == "0.732103");
}

TEST_CASE("exact and high-precision certificate properties") {
  for (int J = 1; J <= 8; ++J) {
    const auto ts = generate_thetas(J);
    const K1CheckReport rep = check_certificate_k1(build_dual_certificate(ts), ts, 400);
    INFO("J = " << J << " " << rep.first_failure);
    CHECK(rep.passed);
    CHECK(rep.zeros_exact);
    CHECK(rep.ones_exact);
    CHECK(rep.min_dominance > 0.0);
    CHECK(rep.min_feasibility_slack >= 1e-12);
  }
}

TEST_CASE("generation is fast") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ts = generate_thetas(8);
  (void)payoff_k1(ts);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(dt < 1.0);
}
