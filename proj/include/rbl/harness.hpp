#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rbl/env.hpp"
#include "rbl/policy.hpp"

namespace rbl {

struct ScenarioConfig {
  std::vector<BandSpec> bands;
  std::uint64_t horizon = 1u << 15;
  std::vector<PolicyConfig> policies;
  std::uint64_t runs = 1000;
  std::uint64_t master_seed = 1;
  std::vector<std::uint64_t> checkpoints;  // sorted, within [1, horizon]

  bool operator==(const ScenarioConfig&) const = default;
};

/// Dyadic slots 2^7, 2^8, ... up to the horizon, plus the horizon itself
/// when it is not a power of two.
std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon);

/// Throws std::invalid_argument on any violated scenario invariant.
void validate_scenario(const ScenarioConfig& scenario);

struct RunTrace {
  std::vector<std::uint64_t> checkpoints;
  std::vector<std::vector<std::uint64_t>> counts;  // [checkpoint][band]
  std::vector<std::uint64_t> suboptimal;           // [checkpoint]
  std::vector<double> regret;                      // from counts and gaps
  std::vector<double> regret_by_slot;              // running sum of per-slot gaps
  std::vector<std::uint32_t> selections;           // optional, band per slot

  bool operator==(const RunTrace&) const = default;
};

struct EpisodeOptions {
  bool record_selections = false;
};

/// Simulates `scenario.horizon` slots of one policy. Each slot advances the
/// environment, asks the policy for a band, observes it, and feeds the
/// observation back. Deterministic in (scenario, policy, run_seed).
RunTrace run_episode(const ScenarioConfig& scenario, const PolicyConfig& policy,
                     std::uint64_t run_seed, EpisodeOptions options = {});

/// sum over bands with mu_k != mu* of (mu* - mu_k) * M_k.
double weak_regret(std::span<const std::uint64_t> counts, std::span<const double> mus);

struct CheckpointStats {
  std::uint64_t n = 0;
  double mean_subopt = 0.0;
  double std_subopt = 0.0;
  double mean_subopt_over_ln_n = 0.0;
  double std_subopt_over_ln_n = 0.0;
  double mean_regret = 0.0;
  double std_regret = 0.0;
  std::vector<double> mean_counts;  // per band; not part of the CSV schema

  bool operator==(const CheckpointStats&) const = default;
};

struct PolicySeries {
  std::string label;
  std::uint64_t runs = 0;
  std::vector<CheckpointStats> points;

  bool operator==(const PolicySeries&) const = default;
};

struct MetricSeries {
  std::vector<PolicySeries> policies;  // in scenario order

  const PolicySeries& at(std::string_view label) const;
  bool operator==(const MetricSeries&) const = default;
};

/// Folds traces in the given order into means and sample standard
/// deviations (zero for a single run).
PolicySeries aggregate(std::string label, std::span<const RunTrace> traces);

struct MonteCarloOptions {
  unsigned workers = 1;
};

/// Runs `scenario.runs` episodes per policy. Run r of policy p uses
/// derive_run_seed(master_seed, p, r); results do not depend on `workers`.
MetricSeries monte_carlo(const ScenarioConfig& scenario, MonteCarloOptions options = {});

/// All traces of one policy, in run order (exposed for analysis and tests).
std::vector<RunTrace> run_policy(const ScenarioConfig& scenario, std::size_t policy_index,
                                 MonteCarloOptions options = {});

}  // namespace rbl
