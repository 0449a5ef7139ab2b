#include "seclab/dual/alpha_gamma.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace seclab::dual {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

namespace {
void check_indices(int k, int K) {
  if (K < 1 || k < 1) throw std::invalid_argument("alpha/gamma: indices must be >= 1");
}
}  // namespace

double alpha(int k, int K, double x) {
  check_indices(k, K);
  double sum = 0.0;
  for (int l = k; l <= K; ++l) sum += binomial(l - 1, k - 1) * std::pow(1.0 - x, l - k) * std::pow(x, k - 1);
  return sum;
}

double gamma(int k, int K, double x) {
  check_indices(k, K);
  double sum = 0.0;
  for (int l = 1; l <= std::min(k, K); ++l) sum += alpha(l, K, x);
  return sum;
}

PowerLogPoly alpha_poly(int k, int K) {
  check_indices(k, K);
  std::vector<double> c(static_cast<std::size_t>(std::max(K, k)), 0.0);
  for (int l = k; l <= K; ++l)
    for (int s = 0; s <= l - k; ++s)
      c[static_cast<std::size_t>(k - 1 + s)] += binomial(l - 1, k - 1) * binomial(l - k, s) * (s % 2 ? -1.0 : 1.0);
  return PowerLogPoly::polynomial(c);
}

PowerLogPoly gamma_poly(int k, int K) {
  check_indices(k, K);
  PowerLogPoly sum;
  for (int l = 1; l <= std::min(k, K); ++l) sum = sum + alpha_poly(l, K);
  return sum;
}

}  // namespace seclab::dual
