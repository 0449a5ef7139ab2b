#include "seclab/dual/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace seclab::dual {

double lambert_w_principal(double z) {
  constexpr double kBranch = -0.36787944117144233;  // -1/e rounded
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (!(z <= 0.0) || z < kBranch - 4 * kEps) throw std::domain_error("lambert_w_principal: z outside [-1/e, 0]");
  if (z == 0.0) return 0.0;

  double w;
  if (z < -0.25) {
    // Series about the branch point in p = sqrt(2(ez + 1)).
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::exp(1.0) * z + 1.0)));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    if (p < 1e-6) return w;
  } else {
    w = z * (1.0 - z + 1.5 * z * z);
  }

  for (int iter = 0; iter < 50; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 4 * kEps * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

}  // namespace seclab::dual
