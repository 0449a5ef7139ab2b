#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "seclab/dual/dual_general.hpp"

namespace seclab::sim {

using dual::ThresholdMatrix;

// SplitMix64 stream; satisfies UniformRandomBitGenerator.
class TrialRng {
 public:
  using result_type = std::uint64_t;
  explicit TrialRng(std::uint64_t state) : state_(state) {}
  // Independent stream for (seed, trial).
  static TrialRng for_trial(std::uint64_t seed, std::uint64_t trial);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  double uniform01();       // [0, 1), 53 bits
  double uniform_open();    // (0, 1)
  std::uint64_t below(std::uint64_t bound);  // [0, bound)

 private:
  std::uint64_t state_;
};

struct ArrivalInstance {
  std::vector<double> times;  // ascending
  std::vector<int> ranks;     // ranks[p] = rank of the p-th arrival, 1 = best
  int n() const { return static_cast<int>(times.size()); }
};

ArrivalInstance sample_arrivals(int n, TrialRng& rng);

// Quota bookkeeping; quotas are consumed largest index first.
class QuotaState {
 public:
  explicit QuotaState(int J) : used_(static_cast<std::size_t>(J), false) {}
  bool used(int j) const { return used_.at(static_cast<std::size_t>(j - 1)); }
  // Largest unused quota index, or 0 when all are used.
  int largest_unused() const;
  void consume(int j);

 private:
  std::vector<bool> used_;
};

// Quota consumed for a k-potential arriving at time x, or nullopt when it is not selected.
std::optional<int> select_quota(const ThresholdMatrix& tau, QuotaState& quotas, double x, int k);

struct Selection {
  int position;  // 0-based arrival index
  double time;
  int k;
  int quota;
  int rank;
};

struct RunResult {
  int payoff = 0;
  std::vector<Selection> selections;
};

RunResult run_threshold_algorithm(const ThresholdMatrix& tau, const ArrivalInstance& inst);

enum class Engine { potential_skipping, explicit_instances };

struct MonteCarloOptions {
  unsigned threads = 1;
  Engine engine = Engine::potential_skipping;
};

struct SimReport {
  int J = 0;
  int K = 0;
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double mean = 0;
  double stderr_ = 0;
  double ci_lo = 0;
  double ci_hi = 0;
};

// Payoff of one trial under the chosen engine.
int simulate_trial(const ThresholdMatrix& tau, int n, std::uint64_t seed, std::uint64_t trial, Engine engine);

SimReport monte_carlo(const ThresholdMatrix& tau, int n, std::uint64_t trials, std::uint64_t seed,
                      const MonteCarloOptions& options = {});

}  // namespace seclab::sim
