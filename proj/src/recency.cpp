#include "rbl/recency.hpp"

#include <stdexcept>

namespace rbl {
namespace {

void check_reward(double reward) {
  if (!(reward >= 0.0 && reward <= 1.0)) throw std::invalid_argument("reward outside [0,1]");
}

void check_band(std::size_t band, std::size_t k) {
  if (band >= k) throw std::out_of_range("band index out of range");
}

}  // namespace

RecencyIidPolicy::RecencyIidPolicy(std::size_t num_bands, BonusFn bonus)
    : bonus_(bonus),
      sums_(num_bands, 0.0),
      counts_(num_bands, 0),
      last_sensed_(num_bands, 0),
      scratch_(num_bands, 0.0) {
  if (num_bands == 0) throw std::invalid_argument("policy needs at least one band");
}

double RecencyIidPolicy::sample_mean(std::size_t band) const {
  check_band(band, counts_.size());
  return counts_[band] == 0 ? 0.0 : sums_[band] / static_cast<double>(counts_[band]);
}

double RecencyIidPolicy::index(std::size_t band, std::uint64_t n) const {
  check_band(band, counts_.size());
  if (counts_[band] == 0) throw std::logic_error("index of a band that was never sensed");
  return sums_[band] / static_cast<double>(counts_[band]) + bonus_.at(n, last_sensed_[band]);
}

std::size_t RecencyIidPolicy::select(std::uint64_t n) {
  if (in_startup()) return startup_cursor_;
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    scratch_[k] = sums_[k] / static_cast<double>(counts_[k]) + bonus_.at(n, last_sensed_[k]);
  }
  return argmax_lowest(scratch_);
}

void RecencyIidPolicy::record(std::size_t band, double reward, std::uint64_t n) {
  check_band(band, counts_.size());
  check_reward(reward);
  sums_[band] += reward;
  ++counts_[band];
  last_sensed_[band] = n;
  while (startup_cursor_ < counts_.size() && counts_[startup_cursor_] > 0) ++startup_cursor_;
}

void RecencyIidPolicy::update(std::size_t band, const Observation& obs, std::uint64_t n) {
  record(band, obs.reward, n);
}

RecencyRegenPolicy::RecencyRegenPolicy(std::size_t num_bands, BonusFn bonus)
    : bonus_(bonus),
      sums_(num_bands, 0.0),
      counts_(num_bands, 0),
      excluded_(num_bands, 0),
      last_sensed_(num_bands, 0),
      scratch_(num_bands, 0.0) {
  if (num_bands == 0) throw std::invalid_argument("policy needs at least one band");
}

double RecencyRegenPolicy::sample_mean(std::size_t band) const {
  check_band(band, counts_.size());
  return counts_[band] == 0 ? 0.0 : sums_[band] / static_cast<double>(counts_[band]);
}

double RecencyRegenPolicy::index(std::size_t band, std::uint64_t n) const {
  check_band(band, counts_.size());
  if (counts_[band] == 0) throw std::logic_error("index of a band that was never sensed");
  return sample_mean(band) + bonus_.at(n, last_sensed_[band]);
}

std::size_t RecencyRegenPolicy::select(std::uint64_t /*n*/) { return current_; }

void RecencyRegenPolicy::update(std::size_t band, const Observation& obs, std::uint64_t n) {
  if (band != current_) throw std::logic_error("regenerative policy updated with a foreign band");
  step(obs.state, obs.reward, n);
}

RegenDecision RecencyRegenPolicy::step(int observed_state, double reward, std::uint64_t n) {
  if (observed_state < 0) throw std::invalid_argument("observed state must be non-negative");
  check_reward(reward);

  const std::size_t band = current_;
  last_sensed_[band] = n;

  if (!anchor_ || observed_state != *anchor_) {
    if (!anchor_) anchor_ = observed_state;
    sums_[band] += reward;
    ++counts_[band];
    return {RegenDecisionKind::Continue, band};
  }

  // The anchor state recurred: one regenerative cycle is complete.
  std::size_t next = band;
  if (in_startup()) ++startup_cursor_;
  if (in_startup()) {
    next = startup_cursor_;
  } else {
    for (std::size_t k = 0; k < counts_.size(); ++k) scratch_[k] = index(k, n + 1);
    next = argmax_lowest(scratch_);
  }

  if (next == band) {
    sums_[band] += reward;
    ++counts_[band];
  } else {
    ++excluded_[band];
    current_ = next;
    anchor_.reset();
  }
  return {RegenDecisionKind::CycleClosed, next};
}

}  // namespace rbl
