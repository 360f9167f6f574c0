#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "rbl/rng.hpp"

namespace rbl {

/// I.i.d. rewards uniform on [lo, hi]; lo == hi gives a constant reward.
struct IidUniform {
  double lo = 0.0;
  double hi = 1.0;
  bool operator==(const IidUniform&) const = default;
};

/// I.i.d. rewards from a finite PMF on [0, 1]. The observed state is the
/// index of the drawn support point.
struct IidDiscrete {
  std::vector<double> support;
  std::vector<double> probs;
  bool operator==(const IidDiscrete&) const = default;
};

/// Reward 1 with probability p, else 0. Success is reported as state 0
/// (idle), failure as state 1 (occupied), matching the two-state channel.
struct Bernoulli {
  double p = 0.5;
  bool operator==(const Bernoulli&) const = default;
};

/// Two-state Gilbert-Elliot channel. State 0 is idle, state 1 occupied.
/// p01 is the idle -> occupied transition probability, p10 the reverse.
struct GilbertElliot {
  double p01 = 0.5;
  double p10 = 0.5;
  double r_idle = 1.0;
  double r_occ = 0.0;
  bool operator==(const GilbertElliot&) const = default;
};

using BandSpec = std::variant<IidUniform, IidDiscrete, Bernoulli, GilbertElliot>;

/// Throws std::invalid_argument if the spec violates its invariants.
void validate(const BandSpec& spec);

struct Occupancy {
  double idle = 0.0;
  double occupied = 0.0;
};

/// Unique stationary distribution of the two-state chain. Rejects p01 or
/// p10 outside the open interval (0, 1).
Occupancy stationary_occupancy(const GilbertElliot& spec);

/// Stationary expected reward of one band.
double stationary_mean(const BandSpec& spec);

std::vector<double> stationary_means(std::span<const BandSpec> bands);

struct Observation {
  double reward = 0.0;
  int state = 0;
};

/// K independent restless bands. Every Markov band transitions on every
/// advance(), sensed or not.
class Environment {
 public:
  explicit Environment(std::vector<BandSpec> bands);

  std::size_t num_bands() const noexcept { return bands_.size(); }
  std::uint64_t slot() const noexcept { return slot_; }
  const std::vector<BandSpec>& bands() const noexcept { return bands_; }

  /// Draws each Markov band's state from its stationary distribution.
  void init_states(Rng& rng);

  /// One Markov transition for every Gilbert-Elliot band; slot += 1.
  void advance(Rng& rng);

  /// Senses `band` in the current slot. Throws std::out_of_range.
  Observation observe(std::size_t band, Rng& rng) const;

  /// Hidden state of a Gilbert-Elliot band, nullopt for i.i.d. bands.
  std::optional<int> markov_state(std::size_t band) const;

 private:
  struct MarkovBand {
    std::size_t band;
    double p01;
    double p10;
    double pi_idle;
    int state;
  };

  std::vector<BandSpec> bands_;
  std::vector<MarkovBand> markov_;
  std::vector<int> markov_slot_;  // band -> index into markov_, -1 if i.i.d.
  std::vector<std::vector<double>> cdf_;  // per band, IidDiscrete only
  std::uint64_t slot_ = 0;
};

}  // namespace rbl
