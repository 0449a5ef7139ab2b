#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "seclab/dual/dual_general.hpp"
#include "seclab/sim/simulate.hpp"

using namespace seclab::sim;
using seclab::dual::construct_dual;
using seclab::dual::payoff_jk;

namespace {

ThresholdMatrix random_thresholds(std::mt19937_64& rng) {
  const int J = 1 + static_cast<int>(rng() % 4);
  const int K = 1 + static_cast<int>(rng() % 4);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  std::vector<double> cols;
  // Draw J*K distinct values and lay them out so rows decrease and columns increase.
  for (int i = 0; i < J * K; ++i) cols.push_back(u(rng));
  std::sort(cols.begin(), cols.end());
  ThresholdMatrix t(J, K);
  std::size_t idx = 0;
  for (int k = 1; k <= K; ++k)
    for (int j = J; j >= 1; --j) t(j, k) = cols[idx++];
  return t;
}

}  // namespace

TEST_CASE("sample_arrivals basics") {
  TrialRng rng(1);
  const auto one = sample_arrivals(1, rng);
  CHECK(one.ranks == std::vector<int>{1});
  TrialRng a = TrialRng::for_trial(5, 9), b = TrialRng::for_trial(5, 9);
  const auto ia = sample_arrivals(50, a), ib = sample_arrivals(50, b);
  CHECK(ia.times == ib.times);
  CHECK(ia.ranks == ib.ranks);
  CHECK(std::is_sorted(ia.times.begin(), ia.times.end()));
  std::vector<int> sorted = ia.ranks;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i + 1);
  CHECK_THROWS_AS(sample_arrivals(0, rng), std::invalid_argument);
}

TEST_CASE("first position holds the best item with probability 1/n") {
  const int n = 10;
  const int draws = 100000;
  int hits = 0;
  for (int t = 0; t < draws; ++t) {
    TrialRng rng = TrialRng::for_trial(123, static_cast<std::uint64_t>(t));
    if (sample_arrivals(n, rng).ranks[0] == 1) ++hits;
  }
  const double p = 1.0 / n;
  const double sigma = std::sqrt(p * (1 - p) / draws);
  CHECK(std::abs(static_cast<double>(hits) / draws - p) < 3 * sigma);
}

TEST_CASE("bounded integers are uniform") {
  TrialRng rng(77);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.below(7)];
  for (int c : counts) CHECK(std::abs(c - 10000) < 400);
}

TEST_CASE("threshold algorithm on constructed instances") {
  ThresholdMatrix ones(2, 2, 1.0);
  ones(1, 1) = 0.999999;
  ones(2, 1) = 0.999998;
  ones(2, 2) = 0.999999;
  ArrivalInstance inst{{0.1, 0.5, 0.9}, {2, 1, 3}};
  CHECK(run_threshold_algorithm(ones, inst).payoff == 0);

  // (1,1), t_1 = 0, n = 2: the first arrival is always taken.
  ThresholdMatrix zero(1, 1, 1e-300);
  CHECK(run_threshold_algorithm(zero, {{0.2, 0.6}, {1, 2}}).payoff == 1);
  CHECK(run_threshold_algorithm(zero, {{0.2, 0.6}, {2, 1}}).payoff == 0);

  // Best item before t_1 and no later potential.
  ThresholdMatrix t1(1, 1, std::exp(-1.0));
  const auto miss = run_threshold_algorithm(t1, {{0.1, 0.5, 0.8}, {1, 2, 3}});
  CHECK(miss.payoff == 0);
  CHECK(miss.selections.empty());
  const auto hit = run_threshold_algorithm(t1, {{0.1, 0.5, 0.8}, {2, 1, 3}});
  CHECK(hit.payoff == 1);
  REQUIRE(hit.selections.size() == 1);
  CHECK(hit.selections[0].position == 1);
}

TEST_CASE("quota order and replay audit on random instances") {
  std::mt19937_64 rng(4242);
  int cases = 0;
  for (int c = 0; c < 300; ++c) {
    const ThresholdMatrix tau = random_thresholds(rng);
    REQUIRE(tau.is_valid());
    TrialRng trng = TrialRng::for_trial(31, static_cast<std::uint64_t>(c));
    const int n = 1 + static_cast<int>(rng() % 200);
    const ArrivalInstance inst = sample_arrivals(n, trng);
    const RunResult res = run_threshold_algorithm(tau, inst);
    CHECK(static_cast<int>(res.selections.size()) <= tau.J());
    int payoff = 0;
    int last_quota = tau.J() + 1;
    int last_position = -1;
    for (const auto& s : res.selections) {
      CHECK(s.quota < last_quota);
      CHECK(s.position > last_position);
      last_quota = s.quota;
      last_position = s.position;
      CHECK(s.k <= tau.K());
      CHECK(s.time >= tau(s.quota, s.k));
      // Replay: exactly k-1 earlier arrivals have a better rank.
      int better = 0;
      for (int p = 0; p < s.position; ++p) better += inst.ranks[static_cast<std::size_t>(p)] < s.rank;
      CHECK(better == s.k - 1);
      if (s.rank <= tau.K()) ++payoff;
    }
    CHECK(payoff == res.payoff);
    CHECK(res.payoff <= std::min(tau.J(), tau.K()));
    ++cases;
  }
  CHECK(cases >= 100);
}

TEST_CASE("monte carlo report invariants and thread determinism") {
  const auto cert = construct_dual(2, 2);
  const SimReport a = monte_carlo(cert.tau, 2000, 20000, 7, {1, Engine::potential_skipping});
  const SimReport b = monte_carlo(cert.tau, 2000, 20000, 7, {4, Engine::potential_skipping});
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
  CHECK(a.mean >= 0.0);
  CHECK(a.mean <= 2.0);
  CHECK(a.ci_hi - a.mean == doctest::Approx(2.576 * a.stderr_));
  const SimReport e1 = monte_carlo(cert.tau, 300, 3000, 9, {1, Engine::explicit_instances});
  const SimReport e3 = monte_carlo(cert.tau, 300, 3000, 9, {3, Engine::explicit_instances});
  CHECK(e1.mean == e3.mean);
  CHECK_THROWS_AS(monte_carlo(cert.tau, 10, 0, 1), std::invalid_argument);
  ThresholdMatrix bad(1, 2);
  bad(1, 1) = 0.5;
  bad(1, 2) = 0.4;
  CHECK_THROWS_AS(monte_carlo(bad, 10, 10, 1), std::invalid_argument);
}

TEST_CASE("skipping and explicit engines agree in distribution") {
  for (auto [J, K] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{2, 3}}) {
    const auto tau = construct_dual(J, K).tau;
    const SimReport s = monte_carlo(tau, 400, 40000, 3, {1, Engine::potential_skipping});
    const SimReport e = monte_carlo(tau, 400, 40000, 4, {1, Engine::explicit_instances});
    INFO("(J,K) = (" << J << "," << K << ") " << s.mean << " vs " << e.mean);
    CHECK(std::abs(s.mean - e.mean) < 4.0 * std::hypot(s.stderr_, e.stderr_));
  }
}

TEST_CASE("optimal thresholds are locally optimal") {
  const auto tau = construct_dual(1, 2).tau;
  const std::uint64_t trials = 60000;
  const SimReport base = monte_carlo(tau, 10000, trials, 11);
  CHECK(base.mean > payoff_jk(tau) - 3 * base.stderr_ - 0.01);
  for (int k = 1; k <= 2; ++k)
    for (double d : {-0.1, 0.1}) {
      ThresholdMatrix p = tau;
      p(1, k) += d;
      if (!p.is_valid()) continue;
      const SimReport r = monte_carlo(p, 10000, trials, 11);
      CHECK(r.mean <= base.mean + 3 * std::hypot(base.stderr_, r.stderr_));
    }
}
