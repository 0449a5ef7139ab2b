#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seclab/dual/piecewise_function.hpp"
#include "seclab/dual/power_log_poly.hpp"

namespace seclab::dual {

// tau(j, k) for j in [1, J], k in [1, K]; 1-based accessors.
class ThresholdMatrix {
 public:
  ThresholdMatrix() = default;
  ThresholdMatrix(int J, int K, double fill = 1.0);

  int J() const { return J_; }
  int K() const { return K_; }
  double operator()(int j, int k) const { return values_[index(j, k)]; }
  double& operator()(int j, int k) { return values_[index(j, k)]; }

  // Entries in (0, 1], strictly decreasing in j for fixed k and strictly increasing in k for fixed j.
  bool is_valid(std::string* reason = nullptr) const;

 private:
  std::size_t index(int j, int k) const;
  int J_ = 0;
  int K_ = 0;
  std::vector<double> values_;
};

struct DualOptions {
  double scan_step = 1e-3;
  double root_tol = 1e-13;
};

struct DualCertificateJK {
  ThresholdMatrix tau;
  std::vector<PiecewiseFunction> q;      // q[(j-1)*K + (k-1)], support [tau(j,k), 1]
  std::vector<PiecewiseFunction> total;  // total[j-1] = r_{j|K}, support [tau(j,1), 1]

  int J() const { return tau.J(); }
  int K() const { return tau.K(); }
  const PiecewiseFunction& q_fn(int j, int k) const;
  const PiecewiseFunction& total_fn(int j) const;
  // r_{j|k}(x) = sum_{l<=k} q_{j|l}(x); j = 0 gives 0.
  double r(int j, int k, double x) const;
  // Integral of total_J over [0, 1] from the closed forms.
  double dual_objective() const;
};

// f(x) + (N/x) int_x^b (f - g) dy + c/x = gamma(x) on (0, b]; closed form on (0, b].
PiecewiseFunction solve_integral_equation(double b, double c, int N, const PiecewiseFunction& g,
                                          const PowerLogPoly& gamma);

// Residual of the integral equation at x, using adaptive quadrature.
double integral_equation_residual(const PiecewiseFunction& f, double b, double c, int N,
                                  const PiecewiseFunction& g, const PowerLogPoly& gamma, double x);

DualCertificateJK construct_dual(int J, int K, const DualOptions& options = {});

// J - sum_j (1 - tau(j,1))^K
double payoff_jk(const ThresholdMatrix& tau);

struct ClosedForm12 {
  double tau11;
  double tau12;
  double payoff;
};
struct ClosedForm22 {
  double tau11;
  double tau12;
  double tau21;
  double tau22;
  double payoff;
};
ClosedForm12 closed_form_12();
ClosedForm22 closed_form_22();

struct VerifyOptions {
  int grid = 2000;
  double tolerance = 1e-8;            // pointwise residual and slack tolerance
  double objective_tolerance = 1e-6;  // dual objective versus payoff_jk
  double quad_tol = 1e-12;
};

struct Violation {
  std::string constraint;
  int j = 0;
  int k = 0;
  double x = 0;
  double residual = 0;
};

struct CertificateReport {
  bool passed = true;
  double max_equality_residual = 0;
  double min_slack = 0;              // min slack below thresholds (should be >= 0)
  double max_threshold_value = 0;    // max |q_{j|k}(tau(j,k))|
  double min_total_dominance = 0;    // min total_j - total_{j-1} on (tau(j,1), 1)
  double min_q_dominance = 0;        // min q_{j|k} - q_{j|k+1}
  double min_q = 0;
  double dual_objective = 0;         // by quadrature
  double payoff = 0;
  double objective_gap = 0;
  int grid_points = 0;
  std::optional<Violation> first_violation;
};

CertificateReport verify_certificate(const DualCertificateJK& cert, const VerifyOptions& options = {});

}  // namespace seclab::dual
