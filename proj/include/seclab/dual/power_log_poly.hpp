#pragma once

#include <initializer_list>
#include <vector>

namespace seclab::dual {

// One term coef * x^power * (ln x)^log_power.
struct PowerLogTerm {
  int power = 0;
  int log_power = 0;
  double coef = 0;
};

// Finite sum of PowerLogTerm, kept sorted by (power, log_power) without duplicates.
class PowerLogPoly {
 public:
  PowerLogPoly() = default;
  PowerLogPoly(std::initializer_list<PowerLogTerm> terms);
  explicit PowerLogPoly(std::vector<PowerLogTerm> terms);

  static PowerLogPoly constant(double c) { return PowerLogPoly({{0, 0, c}}); }
  // sum_i coeffs[i] x^i
  static PowerLogPoly polynomial(const std::vector<double>& coeffs);

  const std::vector<PowerLogTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double operator()(double x) const;

  PowerLogPoly shifted(int dpower) const;  // times x^dpower
  PowerLogPoly derivative() const;
  // Closed-form antiderivative, zero constant.
  PowerLogPoly antiderivative() const;

  friend PowerLogPoly operator+(const PowerLogPoly& a, const PowerLogPoly& b);
  friend PowerLogPoly operator-(const PowerLogPoly& a, const PowerLogPoly& b);
  friend PowerLogPoly operator*(double s, const PowerLogPoly& p);
  friend PowerLogPoly operator+(const PowerLogPoly& a, double c) { return a + constant(c); }

 private:
  void normalize();
  std::vector<PowerLogTerm> terms_;
};

}  // namespace seclab::dual
