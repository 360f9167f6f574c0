#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rbl/bonus.hpp"
#include "rbl/policy.hpp"

namespace rbl {

/// Recency index policy for i.i.d. rewards.
///
/// After one startup sensing per band (in index order), slot n senses
///   argmax_k  mean_k + g(n / tau_k)
/// where tau_k is the last slot band k was sensed. Indices are recomputed
/// every slot.
class RecencyIidPolicy final : public Policy {
 public:
  RecencyIidPolicy(std::size_t num_bands, BonusFn bonus);

  std::size_t select(std::uint64_t n) override;
  void update(std::size_t band, const Observation& obs, std::uint64_t n) override;
  std::size_t num_bands() const noexcept override { return counts_.size(); }

  /// Records one sensing of `band` at slot n. Throws std::invalid_argument
  /// for rewards outside [0,1].
  void record(std::size_t band, double reward, std::uint64_t n);

  bool in_startup() const noexcept { return startup_cursor_ < counts_.size(); }
  double index(std::size_t band, std::uint64_t n) const;
  double sample_mean(std::size_t band) const;
  std::uint64_t count(std::size_t band) const { return counts_.at(band); }
  std::uint64_t last_sensed(std::size_t band) const { return last_sensed_.at(band); }
  const BonusFn& bonus() const noexcept { return bonus_; }

 private:
  BonusFn bonus_;
  std::vector<double> sums_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> last_sensed_;
  std::size_t startup_cursor_ = 0;
  std::vector<double> scratch_;
};

enum class RegenDecisionKind {
  Continue,     ///< mid-cycle, keep sensing the current band
  CycleClosed,  ///< a regenerative cycle closed and indices were recomputed
};

struct RegenDecision {
  RegenDecisionKind kind = RegenDecisionKind::Continue;
  std::size_t band = 0;  ///< band to sense in the next slot
  bool operator==(const RegenDecision&) const = default;
};

/// Recency index policy for Markov (Gilbert-Elliot) rewards.
///
/// Every visit to a band lasts a whole number of regenerative cycles: the
/// state seen at the first sensing of the visit is the anchor, and a cycle
/// closes when the anchor state is observed again. Indices are recomputed
/// only at cycle closings. If the policy stays, the closing observation
/// also opens the next cycle and enters the sample mean; if it hops, the
/// closing reward is collected but left out of the mean.
///
/// Startup senses one full cycle on each band in index order.
class RecencyRegenPolicy final : public Policy {
 public:
  RecencyRegenPolicy(std::size_t num_bands, BonusFn bonus);

  std::size_t select(std::uint64_t n) override;
  void update(std::size_t band, const Observation& obs, std::uint64_t n) override;
  std::size_t num_bands() const noexcept override { return counts_.size(); }

  /// Consumes the observation of the current band at slot n and returns the
  /// band for slot n + 1. Indices are evaluated at n + 1. Throws
  /// std::invalid_argument for a negative state or a reward outside [0,1].
  RegenDecision step(int observed_state, double reward, std::uint64_t n);

  std::size_t current_band() const noexcept { return current_; }
  bool in_startup() const noexcept { return startup_cursor_ < counts_.size(); }
  std::optional<int> visit_anchor() const noexcept { return anchor_; }
  double index(std::size_t band, std::uint64_t n) const;
  double sample_mean(std::size_t band) const;
  /// Observations that entered the sample mean.
  std::uint64_t count(std::size_t band) const { return counts_.at(band); }
  /// Cycle-closing observations collected on a hop and kept out of the mean.
  std::uint64_t excluded(std::size_t band) const { return excluded_.at(band); }
  std::uint64_t last_sensed(std::size_t band) const { return last_sensed_.at(band); }

 private:
  BonusFn bonus_;
  std::vector<double> sums_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> excluded_;
  std::vector<std::uint64_t> last_sensed_;
  std::size_t current_ = 0;
  std::optional<int> anchor_;
  std::size_t startup_cursor_ = 0;  // bands [0, cursor) finished their startup cycle
  std::vector<double> scratch_;
};

}  // namespace rbl
