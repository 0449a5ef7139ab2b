#include "seclab/exact/log_polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace seclab::exact {

namespace {
const Rational kZero{};
}

LogPolynomial::LogPolynomial(std::size_t capacity) : coeffs_(capacity) {}

LogPolynomial::LogPolynomial(std::vector<Rational> coefficients, std::size_t capacity)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.size() > capacity) throw std::length_error("LogPolynomial: more coefficients than capacity");
  coeffs_.resize(capacity);
}

int LogPolynomial::degree() const {
  for (std::size_t i = coeffs_.size(); i-- > 0;)
    if (!coeffs_[i].is_zero()) return static_cast<int>(i);
  return -1;
}

const Rational& LogPolynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

LogPolynomial operator+(const LogPolynomial& a, const LogPolynomial& b) {
  LogPolynomial out(std::max(a.capacity(), b.capacity()));
  for (std::size_t i = 0; i < out.capacity(); ++i) out.coeffs_[i] = a.coefficient(i) + b.coefficient(i);
  return out;
}

LogPolynomial operator-(const LogPolynomial& a, const LogPolynomial& b) {
  LogPolynomial out(std::max(a.capacity(), b.capacity()));
  for (std::size_t i = 0; i < out.capacity(); ++i) out.coeffs_[i] = a.coefficient(i) - b.coefficient(i);
  return out;
}

LogPolynomial operator*(const Rational& s, const LogPolynomial& p) {
  LogPolynomial out = p;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

bool operator==(const LogPolynomial& a, const LogPolynomial& b) {
  const std::size_t n = std::max(a.capacity(), b.capacity());
  for (std::size_t i = 0; i < n; ++i)
    if (a.coefficient(i) != b.coefficient(i)) return false;
  return true;
}

Rational eval_at_theta(const LogPolynomial& p, const Rational& theta) {
  const Rational L = -theta;
  Rational acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * L + p.coefficient(static_cast<std::size_t>(i));
  return acc;
}

LogPolynomial antiderivative_over_x(const LogPolynomial& p) {
  const int d = p.degree();
  if (d + 1 >= static_cast<int>(p.capacity()))
    throw std::length_error("antiderivative_over_x: degree overflow beyond capacity");
  std::vector<Rational> out(p.capacity());
  for (int i = 0; i <= d; ++i)
    out[static_cast<std::size_t>(i) + 1] = p.coefficient(static_cast<std::size_t>(i)) / Rational(i + 1);
  return LogPolynomial(std::move(out), p.capacity());
}

Rational definite_integral_over_x(const LogPolynomial& p, const Rational& theta_lo,
                                  const Rational& theta_hi) {
  if (theta_hi < theta_lo) throw std::invalid_argument("definite_integral_over_x: theta_lo > theta_hi");
  const LogPolynomial P = antiderivative_over_x(p);
  return eval_at_theta(P, theta_lo) - eval_at_theta(P, theta_hi);
}

LogPolynomial antiderivative_dx_kernel(const LogPolynomial& p) {
  // Q + Q' = p, solved from the top coefficient down.
  const int d = p.degree();
  std::vector<Rational> q(p.capacity());
  for (int m = d; m >= 0; --m) {
    const auto um = static_cast<std::size_t>(m);
    q[um] = p.coefficient(um);
    if (m < d) q[um] -= Rational(m + 1) * q[um + 1];
  }
  return LogPolynomial(std::move(q), p.capacity());
}

namespace {
BigFloat eval_kernel_term(const LogPolynomial& q, const Rational& theta, mpfr_prec_t bits) {
  const BigFloat x = BigFloat::exp_neg(theta, bits);
  const BigFloat qv(eval_at_theta(q, theta), bits);
  return x * qv;
}
}  // namespace

BigFloat definite_integral_dx(const LogPolynomial& p, const Rational& theta_lo, const Rational& theta_hi,
                              mpfr_prec_t bits) {
  if (theta_hi < theta_lo) throw std::invalid_argument("definite_integral_dx: theta_lo > theta_hi");
  const LogPolynomial q = antiderivative_dx_kernel(p);
  return eval_kernel_term(q, theta_lo, bits) - eval_kernel_term(q, theta_hi, bits);
}

BigFloat eval_at_x(const LogPolynomial& p, const BigFloat& x) {
  const BigFloat L = x.log();
  BigFloat acc(x.precision());
  for (int i = p.degree(); i >= 0; --i)
    acc = acc * L + BigFloat(p.coefficient(static_cast<std::size_t>(i)), x.precision());
  return acc;
}

}  // namespace seclab::exact
