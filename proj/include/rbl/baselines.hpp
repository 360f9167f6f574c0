#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rbl/policy.hpp"
#include "rbl/recency.hpp"

namespace rbl {

/// UCB1: argmax mean_k + sqrt(2 ln n / M_k) after one sensing per band.
class Ucb1Policy final : public Policy {
 public:
  explicit Ucb1Policy(std::size_t num_bands);

  std::size_t select(std::uint64_t n) override;
  void update(std::size_t band, const Observation& obs, std::uint64_t n) override;
  std::size_t num_bands() const noexcept override { return counts_.size(); }

  double index(std::size_t band, std::uint64_t n) const;
  std::uint64_t count(std::size_t band) const { return counts_.at(band); }
  /// Test hook: overwrite one band's statistics.
  void set_statistics(std::size_t band, double sum, std::uint64_t count);

 private:
  std::vector<double> sums_;
  std::vector<std::uint64_t> counts_;
  std::vector<double> scratch_;
};

/// KL-UCB with the Bernoulli divergence.
class KlUcbPolicy final : public Policy {
 public:
  KlUcbPolicy(std::size_t num_bands, double c_loglog);

  std::size_t select(std::uint64_t n) override;
  void update(std::size_t band, const Observation& obs, std::uint64_t n) override;
  std::size_t num_bands() const noexcept override { return counts_.size(); }

  double index(std::size_t band, std::uint64_t n) const;
  std::uint64_t count(std::size_t band) const { return counts_.at(band); }

 private:
  double c_loglog_;
  std::vector<double> sums_;
  std::vector<std::uint64_t> counts_;
};

/// Deterministic sequencing of exploration and exploitation.
///
/// Slot n explores (next band in round-robin order) whenever some band has
/// never been explored or the smallest exploration count is below D(n);
/// otherwise it exploits argmax of the sample means.
class DseePolicy final : public Policy {
 public:
  DseePolicy(std::size_t num_bands, Schedule d, DseeMeanSource mean_source);

  std::size_t select(std::uint64_t n) override;
  void update(std::size_t band, const Observation& obs, std::uint64_t n) override;
  std::size_t num_bands() const noexcept override { return explore_counts_.size(); }

  std::uint64_t exploration_count(std::size_t band) const { return explore_counts_.at(band); }
  std::uint64_t exploration_slots() const noexcept { return exploration_slots_; }
  bool last_was_exploration() const noexcept { return exploring_; }
  double sample_mean(std::size_t band) const;

 private:
  Schedule d_;
  DseeMeanSource mean_source_;
  std::vector<double> explore_sums_;
  std::vector<std::uint64_t> explore_counts_;
  std::vector<double> all_sums_;
  std::vector<std::uint64_t> all_counts_;
  std::size_t cursor_ = 0;
  bool exploring_ = false;
  std::uint64_t exploration_slots_ = 0;
  std::vector<double> scratch_;
};

/// Regenerative cycle algorithm.
///
/// Each band's regenerative state is the first state ever observed on it.
/// A visit first waits for that state (pre-cycle segment, discarded), then
/// senses until the state recurs; only observations inside completed cycles
/// enter the statistics. At each completion the policy picks
///   argmax mean_k + sqrt(L(t) ln t / M_k)
/// with t the number of slots spent inside completed cycles.
class RcaPolicy final : public Policy {
 public:
  RcaPolicy(std::size_t num_bands, Schedule l);

  std::size_t select(std::uint64_t n) override;
  void update(std::size_t band, const Observation& obs, std::uint64_t n) override;
  std::size_t num_bands() const noexcept override { return counts_.size(); }

  RegenDecision step(int observed_state, double reward, std::uint64_t n);

  std::size_t current_band() const noexcept { return current_; }
  std::optional<int> anchor(std::size_t band) const { return anchors_.at(band); }
  std::uint64_t cycle_count(std::size_t band) const { return counts_.at(band); }
  std::uint64_t cycle_slots() const noexcept { return cycle_slots_; }
  double sample_mean(std::size_t band) const;
  double index(std::size_t band) const;

 private:
  enum class Phase { AwaitAnchor, InCycle };

  Schedule l_;
  std::vector<std::optional<int>> anchors_;
  std::vector<double> sums_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t cycle_slots_ = 0;
  std::size_t current_ = 0;
  Phase phase_ = Phase::AwaitAnchor;
  double pending_sum_ = 0.0;
  std::uint64_t pending_count_ = 0;
  std::size_t startup_cursor_ = 0;
  std::vector<double> scratch_;
};

}  // namespace rbl
