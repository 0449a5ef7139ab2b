#pragma once

#include <cstddef>
#include <vector>

#include "seclab/exact/big_float.hpp"
#include "seclab/exact/rational.hpp"

namespace seclab::exact {

// p(L) = sum_i c_i L^i with L = ln x, stored densely up to a fixed capacity.
class LogPolynomial {
 public:
  explicit LogPolynomial(std::size_t capacity);
  LogPolynomial(std::vector<Rational> coefficients, std::size_t capacity);

  std::size_t capacity() const { return coeffs_.size(); }
  // -1 for the zero polynomial.
  int degree() const;
  const Rational& coefficient(std::size_t i) const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  friend LogPolynomial operator+(const LogPolynomial& a, const LogPolynomial& b);
  friend LogPolynomial operator-(const LogPolynomial& a, const LogPolynomial& b);
  friend LogPolynomial operator*(const Rational& s, const LogPolynomial& p);
  friend bool operator==(const LogPolynomial& a, const LogPolynomial& b);

 private:
  std::vector<Rational> coeffs_;
};

// p(ln x) at x = e^{-theta}.
Rational eval_at_theta(const LogPolynomial& p, const Rational& theta);

// P with P' = p in L and zero constant term, so d/dx P(ln x) = p(ln x)/x.
// Throws std::length_error when the result would exceed the capacity.
LogPolynomial antiderivative_over_x(const LogPolynomial& p);

// Integral of p(ln x)/x dx over x in [e^{-theta_hi}, e^{-theta_lo}].
Rational definite_integral_over_x(const LogPolynomial& p, const Rational& theta_lo,
                                  const Rational& theta_hi);

// Q with d/dx [x Q(ln x)] = p(ln x).
LogPolynomial antiderivative_dx_kernel(const LogPolynomial& p);

// Integral of p(ln x) dx over x in [e^{-theta_hi}, e^{-theta_lo}].
BigFloat definite_integral_dx(const LogPolynomial& p, const Rational& theta_lo,
                              const Rational& theta_hi, mpfr_prec_t bits);

// p(ln x) for a floating x > 0.
BigFloat eval_at_x(const LogPolynomial& p, const BigFloat& x);

// Polynomial of one function on an x-interval [e^{-theta_hi}, e^{-theta_lo}].
struct IntervalPiece {
  Rational theta_lo;
  Rational theta_hi;
  LogPolynomial poly;
};

}  // namespace seclab::exact
