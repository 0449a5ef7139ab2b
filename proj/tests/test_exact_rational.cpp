#include <doctest.h>

#include <random>

#include "seclab/exact/big_float.hpp"
#include "seclab/exact/log_polynomial.hpp"
#include "seclab/exact/rational.hpp"

using namespace seclab::exact;

TEST_CASE("rational normalizes and parses") {
  CHECK(Rational(6, -4).to_string() == "-3/2");
  CHECK(Rational(4, 2).to_string() == "2");
  CHECK(Rational::parse("47/24") == Rational(47, 24));
  CHECK(Rational::parse("-5") == Rational(-5));
  CHECK(Rational::parse("10/4").to_string() == "5/2");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(), std::domain_error);
  CHECK_THROWS_AS(Rational::parse("1/x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("3/0"), std::domain_error);
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(1, 2) < Rational(2, 3));
}

TEST_CASE("rational serialization round-trips") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-1000000000L, 1000000000L), den(1, 1000000000L);
  for (int c = 0; c < 200; ++c) {
    const Rational r(num(rng), den(rng));
    CHECK(Rational::parse(r.to_string()) == r);
  }
}

TEST_CASE("eval_at_theta substitutes ln x = -theta") {
  CHECK(eval_at_theta(LogPolynomial({1, 1}, 2), Rational(1)) == Rational());
  CHECK(eval_at_theta(LogPolynomial({Rational(3, 2), 1}, 2), Rational(3, 2)) == Rational());
  // 1 - L^2/2 at theta = 1
  CHECK(eval_at_theta(LogPolynomial({1, 0, Rational(-1, 2)}, 3), Rational(1)) == Rational(1, 2));
}

TEST_CASE("antiderivative_over_x") {
  CHECK(antiderivative_over_x(LogPolynomial({1, 1}, 3)) == LogPolynomial({0, 1, Rational(1, 2)}, 3));
  CHECK(antiderivative_over_x(LogPolynomial({0, 0, 3}, 4)) == LogPolynomial({0, 0, 0, 1}, 4));
  CHECK(antiderivative_over_x(LogPolynomial(3)).degree() == -1);
  CHECK_THROWS_AS(antiderivative_over_x(LogPolynomial({0, 0, 3}, 3)), std::length_error);
}

TEST_CASE("definite_integral_over_x") {
  // integral of (1 + ln x)/x over [1/e, 1] = 1/2
  CHECK(definite_integral_over_x(LogPolynomial({1, 1}, 3), Rational(0), Rational(1)) == Rational(1, 2));
  CHECK(definite_integral_over_x(LogPolynomial({1}, 2), Rational(0), Rational(2)) == Rational(2));
  CHECK_THROWS_AS(definite_integral_over_x(LogPolynomial({1}, 2), Rational(2), Rational(1)), std::invalid_argument);
}

TEST_CASE("exact round-trip integral identity on random polynomials") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 40), deg(0, 8);
  for (int c = 0; c < 200; ++c) {
    const std::size_t d = static_cast<std::size_t>(deg(rng));
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i <= d; ++i) coeffs.emplace_back(num(rng), den(rng));
    const LogPolynomial p(coeffs, d + 2);
    Rational a(std::abs(num(rng)), den(rng));
    Rational b(std::abs(num(rng)), den(rng));
    if (b < a) std::swap(a, b);
    const LogPolynomial P = antiderivative_over_x(p);
    CHECK(definite_integral_over_x(p, a, b) == eval_at_theta(P, a) - eval_at_theta(P, b));
    // Additivity over a split point.
    const Rational mid = (a + b) / Rational(2);
    CHECK(definite_integral_over_x(p, a, b) == definite_integral_over_x(p, a, mid) + definite_integral_over_x(p, mid, b));
  }
}

TEST_CASE("dx kernel satisfies Q + Q' = p") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  for (int c = 0; c < 100; ++c) {
    std::vector<Rational> coeffs;
    for (int i = 0; i < 6; ++i) coeffs.emplace_back(num(rng), den(rng));
    const LogPolynomial p(coeffs, 7);
    const LogPolynomial q = antiderivative_dx_kernel(p);
    for (std::size_t m = 0; m < 7; ++m) CHECK(q.coefficient(m) + Rational(static_cast<long>(m) + 1) * q.coefficient(m + 1) == p.coefficient(m));
  }
  // integral of (1 + ln x) dx over [1/e, 1] = 1/e
  const BigFloat v = definite_integral_dx(LogPolynomial({1, 1}, 2), Rational(0), Rational(1), 128);
  CHECK(v.to_fixed(6) == "0.367879");
}

TEST_CASE("big float rounding and arithmetic") {
  CHECK(BigFloat::exp_neg(Rational(1), 64).to_fixed(6) == "0.367879");
  CHECK(BigFloat::exp_neg(Rational(3, 2), 64).to_fixed(6) == "0.223130");
  const BigFloat a(Rational(1, 3), 200);
  const BigFloat b = a * BigFloat(3.0, 200) - BigFloat(1.0, 200);
  CHECK(std::abs(b.to_double()) < 1e-59);
  CHECK(BigFloat(2.0, 64).log().exp().to_fixed(12) == "2.000000000000");
  CHECK(eval_at_x(LogPolynomial({1, 1}, 2), BigFloat::exp_neg(Rational(1), 128)).abs().to_double() < 1e-35);
}
