#include "seclab/sim/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace seclab::sim {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

TrialRng TrialRng::for_trial(std::uint64_t seed, std::uint64_t trial) {
  return TrialRng(mix64(mix64(seed + 0x9E3779B97F4A7C15ULL) + trial));
}

TrialRng::result_type TrialRng::operator()() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

double TrialRng::uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double TrialRng::uniform_open() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

std::uint64_t TrialRng::below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = (*this)();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

ArrivalInstance sample_arrivals(int n, TrialRng& rng) {
  if (n < 1) throw std::invalid_argument("sample_arrivals: n must be >= 1");
  ArrivalInstance inst;
  inst.times.resize(static_cast<std::size_t>(n));
  for (auto& t : inst.times) t = rng.uniform01();
  std::sort(inst.times.begin(), inst.times.end());
  inst.ranks.resize(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) inst.ranks[static_cast<std::size_t>(p)] = p + 1;
  for (std::size_t p = inst.ranks.size() - 1; p > 0; --p) std::swap(inst.ranks[p], inst.ranks[rng.below(p + 1)]);
  return inst;
}

int QuotaState::largest_unused() const {
  for (std::size_t j = used_.size(); j > 0; --j)
    if (!used_[j - 1]) return static_cast<int>(j);
  return 0;
}

void QuotaState::consume(int j) {
  if (used(j)) throw std::logic_error("QuotaState: quota already used");
  used_[static_cast<std::size_t>(j - 1)] = true;
}

std::optional<int> select_quota(const ThresholdMatrix& tau, QuotaState& quotas, double x, int k) {
  if (k < 1 || k > tau.K()) return std::nullopt;
  for (int j = tau.J(); j >= 1; --j)
    if (!quotas.used(j) && x >= tau(j, k)) {
      quotas.consume(j);
      return j;
    }
  return std::nullopt;
}

RunResult run_threshold_algorithm(const ThresholdMatrix& tau, const ArrivalInstance& inst) {
  const int K = tau.K();
  QuotaState quotas(tau.J());
  std::vector<int> best;  // ascending ranks of the best K arrivals so far
  best.reserve(static_cast<std::size_t>(K) + 1);
  RunResult out;
  for (int p = 0; p < inst.n(); ++p) {
    const int r = inst.ranks[static_cast<std::size_t>(p)];
    const auto pos = std::lower_bound(best.begin(), best.end(), r);
    const int k = static_cast<int>(pos - best.begin()) + 1;
    if (k <= K) {
      best.insert(pos, r);
      if (static_cast<int>(best.size()) > K) best.pop_back();
      const double x = inst.times[static_cast<std::size_t>(p)];
      if (auto j = select_quota(tau, quotas, x, k)) {
        out.selections.push_back({p, x, k, *j, r});
        if (r <= K) ++out.payoff;
      }
    }
  }
  return out;
}

namespace {

// log of P(no k<=K potential in (i, m]) = C(i,K)/C(m,K).
double log_survival(long i, long m, int K) {
  double s = 0.0;
  for (int q = 0; q < K; ++q) s += std::log(static_cast<double>(i - q)) - std::log(static_cast<double>(m - q));
  return s;
}

// Index of the next arrival whose relative rank is <= K, given i >= K arrivals so far; n + 1 if none.
long next_potential(long i, long n, int K, double log_u) {
  if (log_survival(i, n, K) >= log_u) return n + 1;
  double guess = static_cast<double>(i) * std::exp(-log_u / K);
  long m = std::clamp(static_cast<long>(guess), i + 1, n);
  while (m > i + 1 && log_survival(i, m - 1, K) < log_u) --m;
  while (log_survival(i, m, K) >= log_u) ++m;
  return m;
}

int trial_skipping(const ThresholdMatrix& tau, int n, TrialRng& rng) {
  const int K = tau.K();
  QuotaState quotas(tau.J());
  // Flags of the current best K arrivals in merit order: true when selected.
  std::vector<char> best;
  best.reserve(static_cast<std::size_t>(K) + 1);
  long i = 0;
  double t = 0.0;
  while (true) {
    const long next = i < K ? i + 1 : next_potential(i, n, K, std::log(rng.uniform_open()));
    if (next > n) break;
    const int r = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min<long>(next, K))));
    // Time of the next-th order statistic given the i-th.
    std::gamma_distribution<double> ga(static_cast<double>(next - i), 1.0);
    std::gamma_distribution<double> gb(static_cast<double>(n - next + 1), 1.0);
    const double a = ga(rng);
    const double b = gb(rng);
    t += (1.0 - t) * (a / (a + b));
    const bool chosen = select_quota(tau, quotas, t, r).has_value();
    best.insert(best.begin() + (r - 1), chosen ? 1 : 0);
    if (static_cast<int>(best.size()) > K) best.pop_back();
    i = next;
  }
  return static_cast<int>(std::count(best.begin(), best.end(), 1));
}

}  // namespace

int simulate_trial(const ThresholdMatrix& tau, int n, std::uint64_t seed, std::uint64_t trial, Engine engine) {
  TrialRng rng = TrialRng::for_trial(seed, trial);
  if (engine == Engine::explicit_instances) return run_threshold_algorithm(tau, sample_arrivals(n, rng)).payoff;
  return trial_skipping(tau, n, rng);
}

SimReport monte_carlo(const ThresholdMatrix& tau, int n, std::uint64_t trials, std::uint64_t seed,
                      const MonteCarloOptions& options) {
  std::string why;
  if (!tau.is_valid(&why)) throw std::invalid_argument("monte_carlo: invalid thresholds: " + why);
  if (n < 1) throw std::invalid_argument("monte_carlo: n must be >= 1");
  if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");

  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> sums(chunks), squares(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      std::uint64_t s = 0, ss = 0;
      for (std::uint64_t t = c * kChunk; t < std::min(trials, (c + 1) * kChunk); ++t) {
        const auto p = static_cast<std::uint64_t>(simulate_trial(tau, n, seed, t, options.engine));
        s += p;
        ss += p * p;
      }
      sums[c] = s;
      squares[c] = ss;
    }
  };
  const unsigned count = static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, chunks));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < count; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::uint64_t s = 0, ss = 0;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    s += sums[c];
    ss += squares[c];
  }
  SimReport rep;
  rep.J = tau.J();
  rep.K = tau.K();
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  const double T = static_cast<double>(trials);
  rep.mean = static_cast<double>(s) / T;
  if (trials > 1) {
    const double var = (static_cast<double>(ss) - static_cast<double>(s) * rep.mean) / (T - 1.0);
    rep.stderr_ = std::sqrt(std::max(0.0, var) / T);
  }
  rep.ci_lo = rep.mean - 2.576 * rep.stderr_;
  rep.ci_hi = rep.mean + 2.576 * rep.stderr_;
  return rep;
}

}  // namespace seclab::sim
