#pragma once

#include <vector>

#include "seclab/dual/power_log_poly.hpp"

namespace seclab::dual {

// Function on (0, 1] given by closed-form segments on a contiguous support; zero outside it.
class PiecewiseFunction {
 public:
  struct Segment {
    double lo;
    double hi;
    PowerLogPoly f;
  };

  PiecewiseFunction() = default;
  // Segments must be ascending and contiguous; empty segments are dropped.
  explicit PiecewiseFunction(std::vector<Segment> segments);

  bool empty() const { return segments_.empty(); }
  double lower() const;
  double upper() const;
  const std::vector<Segment>& segments() const { return segments_; }
  std::vector<double> breakpoints() const;

  // Inside the support the segment with lo <= x < hi is used; the last segment includes hi.
  double operator()(double x) const;

  // Integral of f(y) / y^inv_power over [a, b] from the closed-form antiderivatives.
  double integral(double a, double b, int inv_power = 0) const;

  PiecewiseFunction restricted(double lo, double hi) const;

  friend PiecewiseFunction operator+(const PiecewiseFunction& a, const PiecewiseFunction& b);
  friend PiecewiseFunction operator-(const PiecewiseFunction& a, const PiecewiseFunction& b);

 private:
  std::vector<Segment> segments_;
};

}  // namespace seclab::dual
