#pragma once

#include <functional>

namespace seclab::dual {

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  int evaluations = 0;
};

// Adaptive Gauss-Kronrod (G7/K15) with an absolute tolerance on [a, b].
// Throws QuadratureError naming the unresolved subinterval when max_depth is exhausted.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-12, int max_depth = 30);

}  // namespace seclab::dual
