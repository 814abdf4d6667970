/**
 * Seeded Monte Carlo over uniform m-subsets A of G.
 *
 * Every trial draws its own generator from splitmix64(master seed, trial
 * index), so results do not depend on which worker ran which trial. The
 * aggregates are folded in trial order afterwards.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "sumcx/errors.hpp"
#include "sumcx/group.hpp"
#include "sumcx/spectra.hpp"
#include "sumcx/sum_complex.hpp"

namespace sumcx {

inline constexpr std::int64_t kDenseMuLimit = 4000;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64(splitmix64(master) ^ splitmix64(trial ^ 0xd1b54a32d192ed03ULL));
}

// m = ceil(4 k^2 ln n / eps^2).
inline int auto_m(int n, int k, double epsilon) {
  if (n < 2) throw ParameterError("auto m needs n >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  const double raw = std::ceil(4.0 * k * k * std::log(double(n)) / (epsilon * epsilon));
  if (raw > n) {
    const auto m = static_cast<long long>(raw);
    throw RegimeError("m = ceil(4 k^2 ln n / eps^2) = " + std::to_string(m) +
                          " exceeds the group order n = " + std::to_string(n),
                      m, n);
  }
  return static_cast<int>(raw);
}

// Uniform m-subset by a partial Fisher-Yates shuffle of [0, n).
inline SubsetA sample_subset(const GroupSpec& spec, int m, std::uint64_t seed) {
  const int n = spec.order();
  if (m < 0 || m > n) {
    throw ParameterError("subset size m=" + std::to_string(m) + " not in [0, " + std::to_string(n) + "]");
  }
  std::mt19937_64 rng(seed);
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < m; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(m);
  return SubsetA(spec, std::move(pool));
}

// n > 2^10 k^8 / eps^8, the group-size hypothesis of the log-n theorem.
inline bool in_theorem_regime(int n, int k, double epsilon) {
  return double(n) > std::pow(2.0, 10) * std::pow(double(k), 8) / std::pow(epsilon, 8);
}

struct ExperimentConfig {
  GroupSpec spec{std::vector<int>{2}};
  int k = 1;
  std::optional<int> m;  // empty: auto_m
  double epsilon = 0.5;
  int trials = 1;
  std::uint64_t seed = 0;
  std::optional<bool> compute_mu;  // empty: only when C(n, k) <= kDenseMuLimit
  ReportOptions report;
};

struct TrialRecord {
  int trial = 0;
  SubsetA A;
  double max_char_sum = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;  // m + k
  std::optional<double> mu;
  std::optional<std::int64_t> homology_dim;
};

struct TrialBatch {
  // config echo
  std::string group;
  int n = 0;
  int k = 0;
  int m = 0;
  bool m_auto = false;
  double epsilon = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  bool compute_mu = false;

  std::vector<TrialRecord> records;

  double char_sum_threshold = 0.0;  // eps m / k
  double mu_threshold = 0.0;        // (1 - eps) m
  double pr_char_sum_exceeds = 0.0;
  std::optional<double> pr_mu_below;
  std::optional<double> mu_min, mu_mean, mu_max;
  double char_sum_mean = 0.0;
  double char_sum_max = 0.0;
  double lower_bound_min = 0.0;
  bool theorem_regime = false;
  double theorem_probability_bound = 0.0;  // 6 / n, informational
  std::optional<std::int64_t> predicted_homology_dim;
  int homology_mismatches = 0;
  int sandwich_violations = 0;
  std::string note;
};

namespace detail {

inline TrialRecord run_trial(const ExperimentConfig& cfg, int m, bool compute_mu, int trial) {
  TrialRecord rec;
  rec.trial = trial;
  rec.A = sample_subset(cfg.spec, m, trial_seed(cfg.seed, std::uint64_t(trial)));
  rec.max_char_sum = max_nontrivial_character_sum(cfg.spec, rec.A);
  rec.lower_bound = double(m) - double(cfg.k) * rec.max_char_sum;
  rec.upper_bound = double(m + cfg.k);
  if (compute_mu) {
    // full_report enforces lower_bound <= mu <= m + k
    const SpectralReport report = full_report(cfg.spec, rec.A, cfg.k, cfg.report);
    rec.mu = report.mu;
    rec.homology_dim = report.homology_dim;
  }
  return rec;
}

[[noreturn]] inline void rethrow_tagged(std::exception_ptr error, int trial) {
  const std::string tag = "trial " + std::to_string(trial) + ": ";
  try {
    std::rethrow_exception(error);
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(tag + e.what());
  } catch (const SolverError& e) {
    throw SolverError(tag + e.what(), e.best_estimate(), e.residual(), e.iterations());
  } catch (const ParameterError& e) {
    throw ParameterError(tag + e.what());
  }
}

}  // namespace detail

// threads == 0 uses the available hardware parallelism.
inline TrialBatch run_experiment(const ExperimentConfig& cfg, unsigned threads = 0) {
  const int n = cfg.spec.order();
  if (cfg.k < 1 || cfg.k >= n) throw ParameterError("k must satisfy 1 <= k < n");
  if (cfg.trials < 1) throw ParameterError("trials must be >= 1");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  const int m = cfg.m ? *cfg.m : auto_m(n, cfg.k, cfg.epsilon);
  if (m < 0 || m > n) throw ParameterError("m must lie in [0, n]");

  TrialBatch batch;
  batch.group = cfg.spec.to_string();
  batch.n = n;
  batch.k = cfg.k;
  batch.m = m;
  batch.m_auto = !cfg.m.has_value();
  batch.epsilon = cfg.epsilon;
  batch.trials = cfg.trials;
  batch.seed = cfg.seed;
  const std::int64_t cochain_dim = binomial(n, cfg.k);
  batch.compute_mu = cfg.compute_mu.value_or(cochain_dim <= kDenseMuLimit);
  if (!batch.compute_mu) {
    batch.note = cfg.compute_mu ? "mu not computed: disabled; bound-only batch"
                                : "mu not computed: C(n,k) = " + std::to_string(cochain_dim) + " exceeds " +
                                      std::to_string(kDenseMuLimit) + "; bound-only batch";
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cfg.trials));

  batch.records.resize(cfg.trials);
  std::vector<std::exception_ptr> errors(cfg.trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < cfg.trials; t = next++) {
      try {
        batch.records[t] = detail::run_trial(cfg, m, batch.compute_mu, t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (int t = 0; t < cfg.trials; ++t) {
    if (errors[t]) detail::rethrow_tagged(errors[t], t);
  }

  // Deterministic fold in trial order.
  batch.char_sum_threshold = cfg.epsilon * m / cfg.k;
  batch.mu_threshold = (1.0 - cfg.epsilon) * m;
  batch.theorem_regime = in_theorem_regime(n, cfg.k, cfg.epsilon);
  batch.theorem_probability_bound = 6.0 / n;
  batch.predicted_homology_dim = predicted_homology_dim(cfg.spec, cfg.k, m);
  int exceeds = 0, below = 0;
  double cs_sum = 0.0, mu_sum = 0.0;
  batch.lower_bound_min = std::numeric_limits<double>::infinity();
  for (const auto& rec : batch.records) {
    if (rec.max_char_sum > batch.char_sum_threshold) ++exceeds;
    cs_sum += rec.max_char_sum;
    batch.char_sum_max = std::max(batch.char_sum_max, rec.max_char_sum);
    batch.lower_bound_min = std::min(batch.lower_bound_min, rec.lower_bound);
    if (rec.mu) {
      if (*rec.mu < batch.mu_threshold) ++below;
      mu_sum += *rec.mu;
      batch.mu_min = std::min(batch.mu_min.value_or(*rec.mu), *rec.mu);
      batch.mu_max = std::max(batch.mu_max.value_or(*rec.mu), *rec.mu);
      if (rec.lower_bound > *rec.mu + cfg.report.sandwich_slack ||
          *rec.mu > rec.upper_bound + cfg.report.sandwich_slack) {
        ++batch.sandwich_violations;
      }
    }
    if (rec.homology_dim && batch.predicted_homology_dim &&
        *rec.homology_dim != *batch.predicted_homology_dim) {
      ++batch.homology_mismatches;
    }
  }
  batch.pr_char_sum_exceeds = double(exceeds) / cfg.trials;
  batch.char_sum_mean = cs_sum / cfg.trials;
  if (batch.compute_mu) {
    batch.pr_mu_below = double(below) / cfg.trials;
    batch.mu_mean = mu_sum / cfg.trials;
  }
  return batch;
}

}  // namespace sumcx
