#pragma once

// Reference values and independent oracles shared by the test binaries.

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace oracle {

// Reference optimal K = 1 payoffs and theta_J fractions for J = 1..8.
inline const std::array<std::string, 8> kTable1Thetas = {
    "1",
    "3/2",
    "47/24",
    "2761/1152",
    "4162637/1474560",
    "380537052235603/117413668454400",
    "705040594914523588948186792543/193003573558876719588311040000",
    "302500210177484374840641189918370275991590974715547528765249/"
    "74500758812993473612938854416966977838930799571763200000000",
};
inline const std::array<std::string, 8> kTable1Payoffs = {"0.367879", "0.591010", "0.732103", "0.823121",
                                                          "0.882550", "0.921675", "0.947588", "0.964831"};

// Reference K = 2 values.
inline constexpr double kPayoff12 = 0.573567;
inline constexpr double kTau11K2 = 0.346982;
inline constexpr double kPayoff22 = 0.977256;
inline constexpr double kTau22K2 = 0.517291;
inline constexpr double kTau21K2 = 0.227788;

inline mpz_class binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

// Optimal expected number of top-K items among J picks, by backward induction over positions.
// An arrival at position i with relative rank r ends with overall rank <= K with probability
// sum_{s=r}^{K} C(s-1, r-1) C(n-s, i-r) / C(n, i); future relative ranks are independent of the past.
inline mpq_class dp_optimum(int n, int J, int K) {
  auto in_top = [&](int i, int r) {
    mpq_class p = 0;
    for (int s = r; s <= K; ++s) {
      mpq_class term(binom(s - 1, r - 1) * binom(n - s, i - r), binom(n, i));
      term.canonicalize();
      p += term;
    }
    return p;
  };
  // value[c] = expected payoff from positions after i with c picks left.
  std::vector<mpq_class> value(static_cast<std::size_t>(J) + 1, 0);
  for (int i = n; i >= 1; --i) {
    std::vector<mpq_class> next(value.size(), 0);
    for (int c = 0; c <= J; ++c) {
      mpq_class total = 0;
      for (int r = 1; r <= i; ++r) {
        mpq_class keep = value[static_cast<std::size_t>(c)];
        if (c > 0 && r <= K) {
          mpq_class take = in_top(i, r) + value[static_cast<std::size_t>(c - 1)];
          if (take > keep) keep = take;
        }
        total += keep;
      }
      next[static_cast<std::size_t>(c)] = total / i;
    }
    value = std::move(next);
  }
  return value[static_cast<std::size_t>(J)];
}

// K = 1 thresholds from q_j(x) = 1 + ln x + int_x^1 q_{j-1}(y)/y dy, integrated on a uniform
// grid in u = -ln x with the trapezoid rule and Richardson extrapolation; roots by interpolation.
inline std::vector<double> k1_thresholds_numeric(int J, int steps_per_unit = 4000, double umax = 12.0) {
  auto run = [&](int spu) {
    const int m = static_cast<int>(umax * spu);
    const double h = 1.0 / spu;
    std::vector<double> prev(static_cast<std::size_t>(m) + 1, 0.0), cur(prev.size());
    std::vector<double> out;
    for (int j = 1; j <= J; ++j) {
      double integral = 0.0;
      double root = 0.0;
      double raw_prev = 1.0;
      for (int i = 0; i <= m; ++i) {
        if (i > 0) integral += 0.5 * h * (prev[static_cast<std::size_t>(i - 1)] + prev[static_cast<std::size_t>(i)]);
        const double u = i * h;
        const double raw = 1.0 - u + integral;
        cur[static_cast<std::size_t>(i)] = std::max(0.0, raw);
        if (root == 0.0 && i > 0 && raw <= 0.0) root = (u - h) + h * raw_prev / (raw_prev - raw);
        raw_prev = raw;
      }
      out.push_back(std::exp(-root));
      prev = cur;
    }
    return out;
  };
  const auto coarse = run(steps_per_unit);
  const auto fine = run(2 * steps_per_unit);
  std::vector<double> out(coarse.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fine[i] + (fine[i] - coarse[i]) / 3.0;
  return out;
}

}  // namespace oracle
