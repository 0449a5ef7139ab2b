#include "seclab/theta/theta_gen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace seclab::theta {

namespace {

struct Generated {
  ThetaSequence ts;
  std::vector<std::vector<LogPolynomial>> rows;  // rows[j-1][k-1] = c_{j,k}
};

// theta_0 = 0 prepended so that piece k spans [theta_{k-1}, theta_k].
Rational theta_or_zero(const std::vector<Rational>& thetas, int k) {
  return k == 0 ? Rational() : thetas[static_cast<std::size_t>(k - 1)];
}

Generated run_generator(int J, bool keep_rows) {
  const std::size_t cap = static_cast<std::size_t>(J) + 1;
  const LogPolynomial one_plus_L({Rational(1), Rational(1)}, cap);

  Generated g;
  g.ts.thetas.push_back(Rational(1));
  std::vector<LogPolynomial> row{one_plus_L};
  if (keep_rows) g.rows.push_back(row);

  for (int j = 1; j < J; ++j) {
    const auto& th = g.ts.thetas;
    std::vector<LogPolynomial> next;
    next.reserve(static_cast<std::size_t>(j) + 1);
    Rational alpha;
    for (int k = 1; k <= j; ++k) {
      const LogPolynomial P = antiderivative_over_x(row[static_cast<std::size_t>(k - 1)]);
      const Rational at_top = eval_at_theta(P, theta_or_zero(th, k - 1));
      next.push_back(one_plus_L + LogPolynomial({alpha + at_top}, cap) - P);
      alpha += at_top - eval_at_theta(P, theta_or_zero(th, k));
    }
    const Rational theta_next = Rational(1) + alpha;
    next.push_back(LogPolynomial({theta_next, Rational(1)}, cap));
    g.ts.thetas.push_back(theta_next);
    row = std::move(next);
    if (keep_rows) g.rows.push_back(row);
  }
  return g;
}

}  // namespace

bool ThetaSequence::is_valid() const {
  if (thetas.empty() || thetas.front() != Rational(1)) return false;
  for (std::size_t i = 1; i < thetas.size(); ++i)
    if (!(thetas[i - 1] < thetas[i])) return false;
  return true;
}

ThetaSequence generate_thetas(int J, int max_J) {
  if (J < 1) throw std::invalid_argument("generate_thetas: J must be >= 1");
  if (J > max_J) throw std::invalid_argument("generate_thetas: J exceeds the configured limit " + std::to_string(max_J));
  return run_generator(J, false).ts;
}

DualCertificateK1 build_dual_certificate(const ThetaSequence& ts) {
  if (!ts.is_valid()) throw std::invalid_argument("build_dual_certificate: invalid theta sequence");
  Generated g = run_generator(ts.J(), true);
  if (g.ts.thetas != ts.thetas) throw std::invalid_argument("build_dual_certificate: sequence is not generator output");
  DualCertificateK1 cert;
  cert.J = ts.J();
  for (int j = 1; j <= ts.J(); ++j) {
    std::vector<IntervalPiece> pieces;
    for (int k = 1; k <= j; ++k)
      pieces.push_back({theta_or_zero(ts.thetas, k - 1), theta_or_zero(ts.thetas, k),
                        g.rows[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)]});
    cert.pieces.push_back(std::move(pieces));
  }
  return cert;
}

std::vector<BigFloat> thresholds(const ThetaSequence& ts, mpfr_prec_t bits) {
  std::vector<BigFloat> out;
  out.reserve(ts.thetas.size());
  for (const auto& th : ts.thetas) out.push_back(BigFloat::exp_neg(th, bits));
  return out;
}

BigFloat payoff_k1(const ThetaSequence& ts, mpfr_prec_t bits) {
  BigFloat sum(bits);
  for (const auto& th : ts.thetas) sum += BigFloat::exp_neg(th, bits + 16);
  BigFloat out(bits);
  mpfr_set(out.raw(), sum.raw(), MPFR_RNDN);
  return out;
}

namespace {
BigFloat integral_of_row(const std::vector<IntervalPiece>& row, mpfr_prec_t bits) {
  BigFloat sum(bits);
  for (const auto& p : row) sum += exact::definite_integral_dx(p.poly, p.theta_lo, p.theta_hi, bits);
  return sum;
}
}  // namespace

BigFloat dual_objective_k1(const DualCertificateK1& cert, mpfr_prec_t bits) {
  if (cert.J < 1) throw std::invalid_argument("dual_objective_k1: empty certificate");
  BigFloat wide = integral_of_row(cert.row(cert.J), bits + 32);
  BigFloat out(bits);
  mpfr_set(out.raw(), wide.raw(), MPFR_RNDN);
  return out;
}

Rational q_at_theta(const DualCertificateK1& cert, const ThetaSequence& ts, int j, const Rational& theta) {
  if (theta > ts[j]) return Rational();
  for (const auto& p : cert.row(j))
    if (theta <= p.theta_hi) return eval_at_theta(p.poly, theta);
  return Rational();
}

namespace {

// q_j at x, selecting the piece by comparing x against the thresholds.
BigFloat q_at_x(const DualCertificateK1& cert, const std::vector<BigFloat>& t, int j, const BigFloat& x) {
  if (x < t[static_cast<std::size_t>(j - 1)]) return BigFloat(x.precision());
  for (int k = 1; k <= j; ++k)
    if (!(x < t[static_cast<std::size_t>(k - 1)])) return eval_at_x(cert.row(j)[static_cast<std::size_t>(k - 1)].poly, x);
  return BigFloat(x.precision());
}

}  // namespace

K1CheckReport check_certificate_k1(const DualCertificateK1& cert, const ThetaSequence& ts, int grid,
                                   mpfr_prec_t bits) {
  K1CheckReport rep;
  auto fail = [&rep](const std::string& msg) {
    if (rep.passed) rep.first_failure = msg;
    rep.passed = false;
  };
  const std::vector<BigFloat> t = thresholds(ts, bits);
  const BigFloat one(1.0, bits);
  const double recursion_tol = std::ldexp(1.0, -static_cast<int>(bits) + 40);
  bool first_grid = true;

  BigFloat prev_integral(bits);
  for (int j = 1; j <= cert.J; ++j) {
    const auto& row = cert.row(j);
    if (!eval_at_theta(row.back().poly, ts[j]).is_zero()) {
      rep.zeros_exact = false;
      fail("q_" + std::to_string(j) + "(t_" + std::to_string(j) + ") != 0");
    }
    if (eval_at_theta(row.front().poly, Rational()) != Rational(1)) {
      rep.ones_exact = false;
      fail("q_" + std::to_string(j) + "(1) != 1");
    }

    const BigFloat integral = integral_of_row(row, bits);
    const double rec = (integral - prev_integral - t[static_cast<std::size_t>(j - 1)]).abs().to_double();
    rep.max_recursion_error = std::max(rep.max_recursion_error, rec);
    if (rec > recursion_tol) fail("recursion identity at j = " + std::to_string(j));

    const BigFloat& tj = t[static_cast<std::size_t>(j - 1)];
    const BigFloat width = one - tj;
    for (int i = 1; i <= grid; ++i) {
      const BigFloat frac(static_cast<double>(i) / (grid + 1), bits);
      const BigFloat x = tj + width * frac;
      const BigFloat d = q_at_x(cert, t, j, x) - (j > 1 ? q_at_x(cert, t, j - 1, x) : BigFloat(bits));
      const double dv = d.to_double();
      if (first_grid || dv < rep.min_dominance) rep.min_dominance = dv;
      first_grid = false;
      if (d.sign() <= 0) fail("dominance q_" + std::to_string(j) + " > q_" + std::to_string(j - 1));

      // Below t_j the constraint reads (1/x) * int_x^1 (q_j - q_{j-1}) - 1 >= 0.
      const BigFloat xb = tj * frac;
      const BigFloat slack = (integral - prev_integral) / xb - one;
      const double sv = slack.to_double();
      if ((j == 1 && i == 1) || sv < rep.min_feasibility_slack) rep.min_feasibility_slack = sv;
      if (sv < 1e-12) fail("feasibility below t_" + std::to_string(j));
    }
    prev_integral = integral;
  }
  return rep;
}

}  // namespace seclab::theta
