#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rbl/env.hpp"
#include "rbl/harness.hpp"

namespace rbl {

/// Inclusive slot range selecting checkpoints for a fit.
struct FitWindow {
  std::uint64_t from = 0;
  std::uint64_t to = 0;
};

struct SlopeEstimate {
  double slope = 0.0;      // dM / d ln n
  double intercept = 0.0;
  double r_squared = 0.0;  // 1 when the data have no spread
  FitWindow window;
  std::size_t points = 0;
};

/// Least squares of y against ln x. Needs at least three points.
SlopeEstimate fit_log_slope(std::span<const double> x, std::span<const double> y);

/// Top half of the checkpoint list: [cps[size / 2], cps.back()].
FitWindow default_fit_window(std::span<const std::uint64_t> checkpoints);

/// Slope of the mean sensing count of `band` against ln n over `window`.
SlopeEstimate slope_estimate(const PolicySeries& series, std::size_t band, FitWindow window);
SlopeEstimate slope_estimate(const PolicySeries& series, std::size_t band);

/// KL divergence of two PMFs on a shared support, with 0 ln 0 = 0 and
/// +infinity when q vanishes where p does not.
double kl_divergence(std::span<const double> p, std::span<const double> q);

struct PinskerCheck {
  double delta = 0.0;  // |E X - E Y|
  double kl = 0.0;     // d(X || Y)
  bool holds = false;
};

/// delta^2 / 2 <= d(X || Y) for [0,1] valued PMFs on a shared support.
/// Throws std::invalid_argument on mismatched lengths, support outside
/// [0,1] or PMFs not summing to one.
PinskerCheck pinsker_check_general(std::span<const double> support, std::span<const double> pmf_x,
                                   std::span<const double> pmf_y);

/// 2 delta^2 <= d(p_x || p_y) for Bernoulli variables; p in (0,1).
PinskerCheck pinsker_check_bernoulli(double p_x, double p_y);

struct CycleStats {
  double mean_length = 0.0;
  double std_length = 0.0;  // sample standard deviation, 0 for one cycle
  std::size_t count = 0;
};

/// Lengths of the completed regenerative cycles between successive visits
/// to `anchor_state`. Throws std::invalid_argument if no cycle completes.
CycleStats cycle_stats(std::span<const int> state_trace, int anchor_state);

/// Simulates the hidden state path of one Gilbert-Elliot band for `slots`
/// slots, starting from the stationary distribution.
std::vector<int> simulate_state_trace(const GilbertElliot& band, std::size_t slots, std::uint64_t seed);

/// 1 / d(theta_k || theta*) for each band below the best mean, nullopt for
/// the best band(s) and for bands whose divergence to the best is zero.
/// Bands must be Bernoulli or IidDiscrete.
std::vector<std::optional<double>> lai_robbins_constants(std::span<const BandSpec> bands);

/// Asymptotic sensing-rate constant 1 / ln(g^-1(delta)) of the recency policy.
double recency_rate_constant(double bonus_c, double delta);

}  // namespace rbl
