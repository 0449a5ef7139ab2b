#pragma once

#include <vector>

#include "seclab/exact/big_float.hpp"
#include "seclab/exact/log_polynomial.hpp"
#include "seclab/exact/rational.hpp"

namespace seclab::theta {

using exact::BigFloat;
using exact::IntervalPiece;
using exact::LogPolynomial;
using exact::Rational;

inline constexpr int kDefaultMaxJ = 16;

// theta_j = -ln t_j for the optimal K = 1 thresholds t_1 > ... > t_J.
struct ThetaSequence {
  std::vector<Rational> thetas;

  int J() const { return static_cast<int>(thetas.size()); }
  const Rational& operator[](int j) const { return thetas.at(static_cast<std::size_t>(j - 1)); }
  // theta_1 = 1 and strictly increasing.
  bool is_valid() const;
};

// q_j on each interval [t_k, t_{k-1}], k = 1..j (t_0 = 1, theta_0 = 0).
struct DualCertificateK1 {
  int J = 0;
  std::vector<std::vector<IntervalPiece>> pieces;  // pieces[j-1][k-1]

  const std::vector<IntervalPiece>& row(int j) const { return pieces.at(static_cast<std::size_t>(j - 1)); }
};

ThetaSequence generate_thetas(int J, int max_J = kDefaultMaxJ);
DualCertificateK1 build_dual_certificate(const ThetaSequence& ts);

std::vector<BigFloat> thresholds(const ThetaSequence& ts, mpfr_prec_t bits = BigFloat::kDefaultPrecision);
BigFloat payoff_k1(const ThetaSequence& ts, mpfr_prec_t bits = BigFloat::kDefaultPrecision);
// Integral of q_J over [t_J, 1].
BigFloat dual_objective_k1(const DualCertificateK1& cert, mpfr_prec_t bits = BigFloat::kDefaultPrecision);

// Exact value of q_j at x = e^{-theta}; zero below t_j.
Rational q_at_theta(const DualCertificateK1& cert, const ThetaSequence& ts, int j, const Rational& theta);

struct K1CheckReport {
  bool passed = true;
  bool zeros_exact = true;        // q_j(t_j) == 0 as a Rational
  bool ones_exact = true;         // q_j(1) == 1 as a Rational
  double max_recursion_error = 0; // |int q_j - int q_{j-1} - e^{-theta_j}|
  double min_dominance = 0;       // min over grids of q_j - q_{j-1} on (t_j, 1)
  double min_feasibility_slack = 0;  // min of q_j + (1/x) int_x^1 (q_j - q_{j-1}) - 1 below t_j
  std::string first_failure;
};

// Exact and high-precision checks of the K = 1 certificate.
K1CheckReport check_certificate_k1(const DualCertificateK1& cert, const ThetaSequence& ts, int grid = 1000,
                                   mpfr_prec_t bits = 256);

}  // namespace seclab::theta
