#include "seclab/dual/quadrature.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "seclab/errors.hpp"

namespace seclab::dual {

namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes 1, 3, 5 and the centre.
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = kKronrod[7] * fc;
  double g = kGauss[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kNodes[i];
    const double s = f(c - dx) + f(c + dx);
    k += kKronrod[i] * s;
    if (i % 2 == 1) g += kGauss[i / 2] * s;
  }
  return {k * h, std::abs((k - g) * h)};
}

void refine(const std::function<double(double)>& f, double a, double b, double tol, int depth,
            QuadratureResult& acc) {
  const Panel p = gk15(f, a, b);
  acc.evaluations += 15;
  if (p.error <= tol || b - a <= 4 * std::abs(b) * 2.2e-16) {
    acc.value += p.kronrod;
    acc.error_estimate += p.error;
    return;
  }
  if (depth == 0) {
    char msg[160];
    std::snprintf(msg, sizeof msg, "quadrature did not converge on [%.17g, %.17g], error estimate %.3g", a, b, p.error);
    throw QuadratureError(msg, a, b);
  }
  const double m = 0.5 * (a + b);
  refine(f, a, m, 0.5 * tol, depth - 1, acc);
  refine(f, m, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                    int max_depth) {
  QuadratureResult out;
  if (a == b) return out;
  if (b < a) {
    out = integrate_adaptive(f, b, a, abs_tol, max_depth);
    out.value = -out.value;
    return out;
  }
  refine(f, a, b, abs_tol, max_depth, out);
  return out;
}

}  // namespace seclab::dual
