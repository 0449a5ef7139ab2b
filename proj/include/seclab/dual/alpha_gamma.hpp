#pragma once

#include "seclab/dual/power_log_poly.hpp"

namespace seclab::dual {

// alpha_k(x) = sum_{l=k}^{K} C(l-1, k-1) (1-x)^{l-k} x^{k-1}, with 0^0 = 1; zero for k > K.
double alpha(int k, int K, double x);
// gamma_k(x) = sum_{l<=k} alpha_l(x); gamma_K == K.
double gamma(int k, int K, double x);

// Same functions expanded as polynomials in x.
PowerLogPoly alpha_poly(int k, int K);
PowerLogPoly gamma_poly(int k, int K);

double binomial(int n, int k);

}  // namespace seclab::dual
