#include "seclab/dual/dual_general.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "seclab/dual/alpha_gamma.hpp"
#include "seclab/dual/lambert_w.hpp"
#include "seclab/dual/quadrature.hpp"
#include "seclab/errors.hpp"

namespace seclab::dual {

ThresholdMatrix::ThresholdMatrix(int J, int K, double fill) : J_(J), K_(K) {
  if (J < 1 || K < 1) throw std::invalid_argument("ThresholdMatrix: J and K must be >= 1");
  values_.assign(static_cast<std::size_t>(J) * static_cast<std::size_t>(K), fill);
}

std::size_t ThresholdMatrix::index(int j, int k) const {
  if (j < 1 || j > J_ || k < 1 || k > K_) throw std::out_of_range("ThresholdMatrix: index out of range");
  return static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(K_) + static_cast<std::size_t>(k - 1);
}

bool ThresholdMatrix::is_valid(std::string* reason) const {
  auto bad = [reason](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  for (int j = 1; j <= J_; ++j)
    for (int k = 1; k <= K_; ++k) {
      const double t = (*this)(j, k);
      const std::string at = "(" + std::to_string(j) + "," + std::to_string(k) + ")";
      if (!(t > 0.0 && t <= 1.0)) return bad("tau" + at + " outside (0,1]");
      if (j > 1 && !(t < (*this)(j - 1, k))) return bad("tau" + at + " not below the previous row");
      if (k > 1 && !((*this)(j, k - 1) < t)) return bad("tau" + at + " not above tau at k-1");
    }
  return true;
}

const PiecewiseFunction& DualCertificateJK::q_fn(int j, int k) const {
  return q.at(static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(K()) + static_cast<std::size_t>(k - 1));
}

const PiecewiseFunction& DualCertificateJK::total_fn(int j) const { return total.at(static_cast<std::size_t>(j - 1)); }

double DualCertificateJK::r(int j, int k, double x) const {
  if (j == 0) return 0.0;
  double s = 0.0;
  for (int l = 1; l <= k; ++l) s += q_fn(j, l)(x);
  return s;
}

double DualCertificateJK::dual_objective() const { return total_fn(J()).integral(0.0, 1.0); }

PiecewiseFunction solve_integral_equation(double b, double c, int N, const PiecewiseFunction& g,
                                          const PowerLogPoly& gamma) {
  if (!(b > 0.0 && b <= 1.0)) throw std::invalid_argument("solve_integral_equation: b must lie in (0, 1]");
  if (N < 1) throw std::invalid_argument("solve_integral_equation: N must be >= 1");

  // f(x) = x^{N-1} [ A - int_x^b h ],  h = ((y gamma)' - N g) / y^N.
  const double A = (b * gamma(b) - c) / std::pow(b, N);
  const PowerLogPoly dyg = gamma.shifted(1).derivative();

  std::vector<double> cuts{b};
  for (double p : g.breakpoints())
    if (p > 0.0 && p < b) cuts.push_back(p);
  cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end(), std::greater<>());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<PiecewiseFunction::Segment> segs;
  double above = 0.0;  // int_v^b h
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double v = cuts[i];
    const double u = cuts[i + 1];
    const double mid = 0.5 * (u + v);
    PowerLogPoly gs;
    for (const auto& s : g.segments())
      if (s.lo <= mid && mid <= s.hi) gs = s.f;
    const PowerLogPoly H = (dyg - static_cast<double>(N) * gs).shifted(-N).antiderivative();
    const double Hv = H(v);
    segs.push_back({u, v, (H + (A - above - Hv)).shifted(N - 1)});
    if (u > 0.0) above += Hv - H(u);
  }
  std::reverse(segs.begin(), segs.end());
  return PiecewiseFunction(std::move(segs));
}

double integral_equation_residual(const PiecewiseFunction& f, double b, double c, int N,
                                  const PiecewiseFunction& g, const PowerLogPoly& gamma, double x) {
  std::vector<double> cuts{x, b};
  for (const auto* fn : {&f, &g})
    for (double p : fn->breakpoints())
      if (p > x && p < b) cuts.push_back(p);
  std::sort(cuts.begin(), cuts.end());
  double integral = 0.0;
  auto diff = [&](double y) { return f(y) - g(y); };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) integral += integrate_adaptive(diff, cuts[i], cuts[i + 1]).value;
  return f(x) + N / x * integral + c / x - gamma(x);
}

namespace {

// Largest x in (0, upper) with f(x) <= 0, given f(upper) > 0.
double largest_root(const std::function<double(double)>& f, double upper, const DualOptions& opt,
                    const std::string& where) {
  double hi = upper;
  if (!(f(hi) > 0.0)) throw NumericalError("construct_dual: candidate not positive at scan start for " + where);
  constexpr double kFloor = 1e-12;
  while (true) {
    const double step = std::min(opt.scan_step, 0.01 * hi);
    const double lo = hi - step;
    if (lo < kFloor) throw NumericalError("construct_dual: root bracket not found for " + where);
    if (f(lo) <= 0.0) {
      double a = lo;
      double b = hi;
      while (b - a > opt.root_tol) {
        const double m = 0.5 * (a + b);
        (f(m) > 0.0 ? b : a) = m;
      }
      return 0.5 * (a + b);
    }
    hi = lo;
  }
}

struct RowPiece {
  int k;
  PiecewiseFunction::Segment seg;
};

}  // namespace

DualCertificateJK construct_dual(int J, int K, const DualOptions& options) {
  if (J < 1 || K < 1) throw std::invalid_argument("construct_dual: J and K must be >= 1");
  DualCertificateJK cert;
  cert.tau = ThresholdMatrix(J, K);
  std::vector<PowerLogPoly> gam, alp;
  for (int k = 1; k <= K; ++k) {
    gam.push_back(gamma_poly(k, K));
    alp.push_back(alpha_poly(k, K));
  }
  auto gamma_k = [&](int k) -> const PowerLogPoly& { return gam[static_cast<std::size_t>(k - 1)]; };
  auto alpha_k = [&](int k) -> const PowerLogPoly& { return alp[static_cast<std::size_t>(k - 1)]; };

  PiecewiseFunction prev_total;
  for (int j = 1; j <= J; ++j) {
    std::vector<RowPiece> pieces;
    for (int k = K; k >= 1; --k) {
      const double b = k == K ? 1.0 : cert.tau(j, k + 1);
      const double c = k == K ? 0.0 : k * b * alpha(k + 1, K, b);
      const PiecewiseFunction R = solve_integral_equation(b, c, k, prev_total, gamma_k(k));
      double root;
      if (j == 1 && k == K && K >= 2) {
        root = std::pow(static_cast<double>(K) / (2.0 * K - 1.0), 1.0 / (K - 1.0));
      } else {
        const double upper = std::min(b, j > 1 ? cert.tau(j - 1, k) : 1.0);
        auto candidate = [&](double x) { return (R(x) - gamma_k(k)(x)) / k + alpha_k(k)(x); };
        root = largest_root(candidate, upper, options,
                           "tau(" + std::to_string(j) + "," + std::to_string(k) + ")");
      }
      cert.tau(j, k) = root;
      const PiecewiseFunction kept = R.restricted(root, b);
      for (const auto& s : kept.segments()) pieces.push_back({k, s});
    }
    std::sort(pieces.begin(), pieces.end(), [](const RowPiece& a, const RowPiece& b) { return a.seg.lo < b.seg.lo; });

    std::vector<PiecewiseFunction::Segment> tot;
    for (const auto& p : pieces) tot.push_back(p.seg);
    PiecewiseFunction total_j(std::move(tot));

    for (int l = 1; l <= K; ++l) {
      std::vector<PiecewiseFunction::Segment> segs;
      for (const auto& p : pieces) {
        if (p.k < l) continue;
        const PowerLogPoly f = (1.0 / p.k) * (p.seg.f - gamma_k(p.k)) + alpha_k(l);
        segs.push_back({p.seg.lo, p.seg.hi, f});
      }
      cert.q.emplace_back(std::move(segs));
    }
    cert.total.push_back(total_j);
    prev_total = std::move(total_j);
  }

  std::string why;
  if (!cert.tau.is_valid(&why)) throw NumericalError("construct_dual: monotonicity violation: " + why);
  return cert;
}

double payoff_jk(const ThresholdMatrix& tau) {
  double s = tau.J();
  for (int j = 1; j <= tau.J(); ++j) s -= std::pow(1.0 - tau(j, 1), tau.K());
  return s;
}

ClosedForm12 closed_form_12() {
  ClosedForm12 out{};
  out.tau12 = 2.0 / 3.0;
  out.tau11 = -lambert_w_principal(-2.0 / (3.0 * std::exp(1.0)));
  out.payoff = 1.0 - (1.0 - out.tau11) * (1.0 - out.tau11);
  return out;
}

ClosedForm22 closed_form_22() {
  const ClosedForm12 first = closed_form_12();
  const double l23 = std::log(2.0 / 3.0);
  // tau22 solves x ln x + ln x - (2 + 3 ln(2/3)) x + 1 - ln(2/3) = 0, increasing on (0, 1).
  auto h = [l23](double x) { return x * std::log(x) + std::log(x) - (2.0 + 3.0 * l23) * x + 1.0 - l23; };
  double a = 1e-9;
  double b = 1.0;
  while (b - a > 1e-15) {
    const double m = 0.5 * (a + b);
    (h(m) > 0.0 ? b : a) = m;
  }
  ClosedForm22 out{};
  out.tau11 = first.tau11;
  out.tau12 = first.tau12;
  out.tau22 = 0.5 * (a + b);
  const double l11 = std::log(out.tau11);
  const double l22 = std::log(out.tau22);
  const double c = -l11 * l11 + 2.0 * l23 * l11 + l22 * l22 - 2.0 * l23 * l22 - 2.0 * out.tau22 + 4.0 - 2.0 * l23;
  out.tau21 = -lambert_w_principal(-std::exp(-c / 2.0));
  out.payoff = 2.0 - (1.0 - out.tau11) * (1.0 - out.tau11) - (1.0 - out.tau21) * (1.0 - out.tau21);
  return out;
}

}  // namespace seclab::dual
