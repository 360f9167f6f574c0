#include "rbl/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rbl/kl.hpp"

namespace rbl {
namespace {

void check_reward(double reward) {
  if (!(reward >= 0.0 && reward <= 1.0)) throw std::invalid_argument("reward outside [0,1]");
}

void check_band(std::size_t band, std::size_t k) {
  if (band >= k) throw std::out_of_range("band index out of range");
}

void check_nonempty(std::size_t k) {
  if (k == 0) throw std::invalid_argument("policy needs at least one band");
}

std::size_t first_unsensed(const std::vector<std::uint64_t>& counts) {
  return static_cast<std::size_t>(std::find(counts.begin(), counts.end(), 0u) - counts.begin());
}

}  // namespace

// ---- UCB1 ------------------------------------------------------------------

Ucb1Policy::Ucb1Policy(std::size_t num_bands)
    : sums_(num_bands, 0.0), counts_(num_bands, 0), scratch_(num_bands, 0.0) {
  check_nonempty(num_bands);
}

double Ucb1Policy::index(std::size_t band, std::uint64_t n) const {
  check_band(band, counts_.size());
  const double m = static_cast<double>(counts_[band]);
  return sums_[band] / m + std::sqrt(2.0 * std::log(static_cast<double>(n)) / m);
}

std::size_t Ucb1Policy::select(std::uint64_t n) {
  if (const auto k = first_unsensed(counts_); k < counts_.size()) return k;
  for (std::size_t k = 0; k < counts_.size(); ++k) scratch_[k] = index(k, n);
  return argmax_lowest(scratch_);
}

void Ucb1Policy::update(std::size_t band, const Observation& obs, std::uint64_t) {
  check_band(band, counts_.size());
  check_reward(obs.reward);
  sums_[band] += obs.reward;
  ++counts_[band];
}

void Ucb1Policy::set_statistics(std::size_t band, double sum, std::uint64_t count) {
  check_band(band, counts_.size());
  sums_[band] = sum;
  counts_[band] = count;
}

// ---- KL-UCB ----------------------------------------------------------------

KlUcbPolicy::KlUcbPolicy(std::size_t num_bands, double c_loglog)
    : c_loglog_(c_loglog), sums_(num_bands, 0.0), counts_(num_bands, 0) {
  check_nonempty(num_bands);
  if (!(c_loglog >= 0.0)) throw std::invalid_argument("klucb: c must be >= 0");
}

double KlUcbPolicy::index(std::size_t band, std::uint64_t n) const {
  check_band(band, counts_.size());
  const double mean = std::clamp(sums_[band] / static_cast<double>(counts_[band]), 0.0, 1.0);
  return klucb_index(mean, counts_[band], n, c_loglog_);
}

std::size_t KlUcbPolicy::select(std::uint64_t n) {
  if (const auto k = first_unsensed(counts_); k < counts_.size()) return k;

  // Start from the best sample mean. Bisection keeps d(mean||lo) <= level, so
  // a band with d(mean||best_value) > level has an index strictly below
  // best_value and is skipped without changing the argmax.
  const double budget = klucb_budget(n, c_loglog_);
  const std::size_t k_num = counts_.size();
  std::size_t start = 0;
  double start_mean = -1.0;
  for (std::size_t k = 0; k < k_num; ++k) {
    const double m = sums_[k] / static_cast<double>(counts_[k]);
    if (m > start_mean) {
      start_mean = m;
      start = k;
    }
  }
  std::size_t best = start;
  double best_value = index(start, n);
  for (std::size_t k = 0; k < k_num; ++k) {
    if (k == start) continue;
    const double m = sums_[k] / static_cast<double>(counts_[k]);
    if (m < best_value && kl_bernoulli(m, best_value) > budget / static_cast<double>(counts_[k])) continue;
    const double v = index(k, n);
    if (v > best_value || (v == best_value && k < best)) {
      best_value = v;
      best = k;
    }
  }
  return best;
}

void KlUcbPolicy::update(std::size_t band, const Observation& obs, std::uint64_t) {
  check_band(band, counts_.size());
  check_reward(obs.reward);
  sums_[band] += obs.reward;
  ++counts_[band];
}

// ---- DSEE ------------------------------------------------------------------

DseePolicy::DseePolicy(std::size_t num_bands, Schedule d, DseeMeanSource mean_source)
    : d_(d),
      mean_source_(mean_source),
      explore_sums_(num_bands, 0.0),
      explore_counts_(num_bands, 0),
      all_sums_(num_bands, 0.0),
      all_counts_(num_bands, 0),
      scratch_(num_bands, 0.0) {
  check_nonempty(num_bands);
}

double DseePolicy::sample_mean(std::size_t band) const {
  check_band(band, explore_counts_.size());
  const bool explore_only = mean_source_ == DseeMeanSource::ExploreOnly;
  const double sum = explore_only ? explore_sums_[band] : all_sums_[band];
  const auto count = explore_only ? explore_counts_[band] : all_counts_[band];
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

std::size_t DseePolicy::select(std::uint64_t n) {
  const auto min_count = *std::min_element(explore_counts_.begin(), explore_counts_.end());
  exploring_ = min_count == 0 || static_cast<double>(min_count) < d_(static_cast<double>(n));
  if (exploring_) {
    const std::size_t band = cursor_;
    cursor_ = (cursor_ + 1) % explore_counts_.size();
    ++exploration_slots_;
    return band;
  }
  for (std::size_t k = 0; k < scratch_.size(); ++k) scratch_[k] = sample_mean(k);
  return argmax_lowest(scratch_);
}

void DseePolicy::update(std::size_t band, const Observation& obs, std::uint64_t) {
  check_band(band, explore_counts_.size());
  check_reward(obs.reward);
  if (exploring_) {
    explore_sums_[band] += obs.reward;
    ++explore_counts_[band];
  }
  all_sums_[band] += obs.reward;
  ++all_counts_[band];
}

// ---- RCA -------------------------------------------------------------------

RcaPolicy::RcaPolicy(std::size_t num_bands, Schedule l)
    : l_(l),
      anchors_(num_bands),
      sums_(num_bands, 0.0),
      counts_(num_bands, 0),
      scratch_(num_bands, 0.0) {
  check_nonempty(num_bands);
}

double RcaPolicy::sample_mean(std::size_t band) const {
  check_band(band, counts_.size());
  return counts_[band] == 0 ? 0.0 : sums_[band] / static_cast<double>(counts_[band]);
}

double RcaPolicy::index(std::size_t band) const {
  check_band(band, counts_.size());
  if (counts_[band] == 0) throw std::logic_error("rca: index of a band without a completed cycle");
  const double t = static_cast<double>(cycle_slots_);
  const double width = std::max(0.0, l_(t) * std::log(t)) / static_cast<double>(counts_[band]);
  return sample_mean(band) + std::sqrt(width);
}

std::size_t RcaPolicy::select(std::uint64_t) { return current_; }

void RcaPolicy::update(std::size_t band, const Observation& obs, std::uint64_t n) {
  if (band != current_) throw std::logic_error("regenerative policy updated with a foreign band");
  step(obs.state, obs.reward, n);
}

RegenDecision RcaPolicy::step(int observed_state, double reward, std::uint64_t) {
  if (observed_state < 0) throw std::invalid_argument("observed state must be non-negative");
  check_reward(reward);

  const std::size_t band = current_;
  auto& anchor = anchors_[band];
  if (!anchor) {
    anchor = observed_state;
    phase_ = Phase::InCycle;
    return {RegenDecisionKind::Continue, band};
  }
  if (phase_ == Phase::AwaitAnchor) {
    if (observed_state == *anchor) phase_ = Phase::InCycle;
    return {RegenDecisionKind::Continue, band};
  }

  pending_sum_ += reward;
  ++pending_count_;
  if (observed_state != *anchor) return {RegenDecisionKind::Continue, band};

  sums_[band] += pending_sum_;
  counts_[band] += pending_count_;
  cycle_slots_ += pending_count_;
  pending_sum_ = 0.0;
  pending_count_ = 0;

  std::size_t next = band;
  if (startup_cursor_ < counts_.size()) ++startup_cursor_;
  if (startup_cursor_ < counts_.size()) {
    next = startup_cursor_;
  } else {
    for (std::size_t k = 0; k < counts_.size(); ++k) scratch_[k] = index(k);
    next = argmax_lowest(scratch_);
  }
  if (next != band) {
    current_ = next;
    phase_ = Phase::AwaitAnchor;
  }
  return {RegenDecisionKind::CycleClosed, next};
}

}  // namespace rbl
