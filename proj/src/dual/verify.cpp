#include <algorithm>
#include <cmath>

#include "seclab/dual/alpha_gamma.hpp"
#include "seclab/dual/dual_general.hpp"
#include "seclab/dual/quadrature.hpp"

namespace seclab::dual {

namespace {

std::vector<double> verification_grid(const DualCertificateJK& cert, int j, int n) {
  std::vector<double> xs;
  for (int i = 1; i <= n; ++i) xs.push_back(static_cast<double>(i) / n);
  for (int jj = std::max(1, j - 1); jj <= j; ++jj) {
    for (int k = 1; k <= cert.K(); ++k) xs.push_back(cert.tau(jj, k));
    for (double p : cert.total_fn(jj).breakpoints()) xs.push_back(p);
  }
  std::erase_if(xs, [](double x) { return !(x > 0.0 && x <= 1.0); });
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

CertificateReport verify_certificate(const DualCertificateJK& cert, const VerifyOptions& opt) {
  CertificateReport rep;
  const int J = cert.J();
  const int K = cert.K();
  bool first_slack = true;
  bool first_dom = true;
  bool first_qdom = true;
  bool first_q = true;

  auto violate = [&rep](const char* what, int j, int k, double x, double residual) {
    if (!rep.first_violation) rep.first_violation = Violation{what, j, k, x, residual};
    rep.passed = false;
  };

  for (int j = 1; j <= J; ++j) {
    for (int k = 1; k <= K; ++k) {
      const double t = cert.tau(j, k);
      const double v = std::abs(cert.q_fn(j, k)(t));
      rep.max_threshold_value = std::max(rep.max_threshold_value, v);
      if (v > opt.tolerance) violate("threshold_zero", j, k, t, v);
    }

    const PiecewiseFunction& cur = cert.total_fn(j);
    const PiecewiseFunction* prev = j > 1 ? &cert.total_fn(j - 1) : nullptr;
    auto diff = [&](double y) { return cur(y) - (prev ? (*prev)(y) : 0.0); };

    const std::vector<double> xs = verification_grid(cert, j, opt.grid);
    rep.grid_points += static_cast<int>(xs.size());
    std::vector<double> tail(xs.size(), 0.0);  // int_{x_i}^1 diff
    for (std::size_t i = xs.size() - 1; i-- > 0;)
      tail[i] = tail[i + 1] + integrate_adaptive(diff, xs[i], xs[i + 1], opt.quad_tol).value;

    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = xs[i];
      const double drift = tail[i] / x;
      double q_prev_level = 0.0;
      for (int k = 1; k <= K; ++k) {
        const double q = cert.q_fn(j, k)(x);
        const double lhs = q + drift - alpha(k, K, x);
        if (x >= cert.tau(j, k)) {
          rep.max_equality_residual = std::max(rep.max_equality_residual, std::abs(lhs));
          if (std::abs(lhs) > opt.tolerance) violate("equality", j, k, x, lhs);
        } else {
          if (first_slack || lhs < rep.min_slack) rep.min_slack = lhs;
          first_slack = false;
          if (lhs < -opt.tolerance) violate("feasibility", j, k, x, lhs);
          if (std::abs(q) > opt.tolerance) violate("support", j, k, x, q);
        }
        if (first_q || q < rep.min_q) rep.min_q = q;
        first_q = false;
        if (q < -opt.tolerance) violate("nonnegativity", j, k, x, q);
        if (k > 1) {
          const double d = q_prev_level - q;
          if (first_qdom || d < rep.min_q_dominance) rep.min_q_dominance = d;
          first_qdom = false;
          if (d < -opt.tolerance) violate("q_dominance", j, k, x, d);
        }
        q_prev_level = q;
      }
      if (x > cert.tau(j, 1) && x < 1.0) {
        const double d = diff(x);
        if (first_dom || d < rep.min_total_dominance) rep.min_total_dominance = d;
        first_dom = false;
        if (d < -opt.tolerance) violate("total_dominance", j, 0, x, d);
      }
    }
  }

  const PiecewiseFunction& last = cert.total_fn(J);
  const std::vector<double> bps = last.breakpoints();
  for (std::size_t i = 0; i + 1 < bps.size(); ++i)
    rep.dual_objective += integrate_adaptive([&last](double y) { return last(y); }, bps[i], bps[i + 1], opt.quad_tol).value;
  rep.payoff = payoff_jk(cert.tau);
  rep.objective_gap = std::abs(rep.dual_objective - rep.payoff);
  if (rep.objective_gap > opt.objective_tolerance) violate("dual_objective", J, 0, 0.0, rep.objective_gap);
  return rep;
}

}  // namespace seclab::dual
