#pragma once

#include <mpfr.h>

#include <string>

#include "seclab/exact/rational.hpp"

namespace seclab::exact {

// RAII handle for an MPFR value with a fixed binary precision.
class BigFloat {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 64;

  explicit BigFloat(mpfr_prec_t bits = kDefaultPrecision);
  BigFloat(double value, mpfr_prec_t bits);
  BigFloat(const Rational& value, mpfr_prec_t bits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  // e^{-theta}
  static BigFloat exp_neg(const Rational& theta, mpfr_prec_t bits);

  BigFloat exp() const;
  BigFloat log() const;
  BigFloat abs() const;

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // Fixed-point decimal string, round-to-nearest.
  std::string to_fixed(int decimals) const;
  int sign() const { return mpfr_sgn(value_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }

  mpfr_srcptr raw() const { return value_; }
  mpfr_ptr raw() { return value_; }

 private:
  mpfr_t value_;
};

}  // namespace seclab::exact
