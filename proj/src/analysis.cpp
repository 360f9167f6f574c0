#include "rbl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "rbl/bonus.hpp"
#include "rbl/kl.hpp"
#include "rbl/rng.hpp"

namespace rbl {

SlopeEstimate fit_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_log_slope: size mismatch");
  if (x.size() < 3) throw std::invalid_argument("fit_log_slope: need at least three points");
  const double m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw std::invalid_argument("fit_log_slope: x must be positive");
    sx += std::log(x[i]);
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_log_slope: x values are all equal");
  SlopeEstimate est;
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (est.intercept + est.slope * std::log(x[i]));
    ss_res += r * r;
  }
  est.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  est.points = x.size();
  return est;
}

FitWindow default_fit_window(std::span<const std::uint64_t> checkpoints) {
  if (checkpoints.empty()) throw std::invalid_argument("no checkpoints");
  return {checkpoints[checkpoints.size() / 2], checkpoints.back()};
}

SlopeEstimate slope_estimate(const PolicySeries& series, std::size_t band, FitWindow window) {
  std::vector<double> xs, ys;
  for (const auto& p : series.points) {
    if (p.n < window.from || p.n > window.to) continue;
    if (band >= p.mean_counts.size()) throw std::out_of_range("slope_estimate: no counts for band");
    xs.push_back(static_cast<double>(p.n));
    ys.push_back(p.mean_counts[band]);
  }
  if (xs.size() < 3) throw std::invalid_argument("slope_estimate: window holds fewer than three checkpoints");
  auto est = fit_log_slope(xs, ys);
  est.window = window;
  return est;
}

SlopeEstimate slope_estimate(const PolicySeries& series, std::size_t band) {
  std::vector<std::uint64_t> cps;
  for (const auto& p : series.points) cps.push_back(p.n);
  return slope_estimate(series, band, default_fit_window(cps));
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(d, 0.0);
}

namespace {

void check_pmf(std::span<const double> pmf) {
  double total = 0.0;
  for (double v : pmf) {
    if (!(v >= 0.0)) throw std::invalid_argument("pmf has a negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("pmf does not sum to one");
}

}  // namespace

PinskerCheck pinsker_check_general(std::span<const double> support, std::span<const double> pmf_x,
                                   std::span<const double> pmf_y) {
  if (support.size() != pmf_x.size() || support.size() != pmf_y.size()) {
    throw std::invalid_argument("pinsker_check_general: mismatched supports");
  }
  for (double s : support) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("support outside [0,1]");
  }
  check_pmf(pmf_x);
  check_pmf(pmf_y);
  double ex = 0.0, ey = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    ex += support[i] * pmf_x[i];
    ey += support[i] * pmf_y[i];
  }
  PinskerCheck c;
  c.delta = std::abs(ex - ey);
  c.kl = kl_divergence(pmf_x, pmf_y);
  c.holds = 0.5 * c.delta * c.delta <= c.kl;
  return c;
}

PinskerCheck pinsker_check_bernoulli(double p_x, double p_y) {
  if (!(p_x > 0.0 && p_x < 1.0 && p_y > 0.0 && p_y < 1.0)) {
    throw std::invalid_argument("pinsker_check_bernoulli: probabilities must lie in (0,1)");
  }
  PinskerCheck c;
  c.delta = std::abs(p_x - p_y);
  c.kl = kl_bernoulli(p_x, p_y);
  c.holds = 2.0 * c.delta * c.delta <= c.kl;
  return c;
}

CycleStats cycle_stats(std::span<const int> state_trace, int anchor_state) {
  std::vector<double> lengths;
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < state_trace.size(); ++i) {
    if (state_trace[i] != anchor_state) continue;
    if (last) lengths.push_back(static_cast<double>(i - *last));
    last = i;
  }
  if (lengths.empty()) throw std::invalid_argument("cycle_stats: no completed cycle in trace");
  CycleStats s;
  s.count = lengths.size();
  double sum = 0.0;
  for (double l : lengths) sum += l;
  s.mean_length = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double l : lengths) ss += (l - s.mean_length) * (l - s.mean_length);
    s.std_length = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  return s;
}

std::vector<int> simulate_state_trace(const GilbertElliot& band, std::size_t slots, std::uint64_t seed) {
  Environment env({band});
  Rng rng(seed);
  env.init_states(rng);
  std::vector<int> trace;
  trace.reserve(slots);
  for (std::size_t i = 0; i < slots; ++i) {
    env.advance(rng);
    trace.push_back(*env.markov_state(0));
  }
  return trace;
}

std::vector<std::optional<double>> lai_robbins_constants(std::span<const BandSpec> bands) {
  if (bands.empty()) throw std::invalid_argument("lai_robbins_constants: no bands");
  std::vector<std::map<double, double>> pmfs;
  for (const auto& b : bands) {
    validate(b);
    std::map<double, double> pmf;
    if (const auto* bern = std::get_if<Bernoulli>(&b)) {
      pmf[0.0] += 1.0 - bern->p;
      pmf[1.0] += bern->p;
    } else if (const auto* d = std::get_if<IidDiscrete>(&b)) {
      for (std::size_t i = 0; i < d->support.size(); ++i) pmf[d->support[i]] += d->probs[i];
    } else {
      throw std::invalid_argument("lai_robbins_constants: bands must be Bernoulli or discrete");
    }
    pmfs.push_back(std::move(pmf));
  }
  const auto mus = stationary_means(bands);
  const std::size_t star = argmax_lowest(mus);

  std::vector<std::optional<double>> out(bands.size());
  for (std::size_t k = 0; k < bands.size(); ++k) {
    if (mus[k] >= mus[star]) continue;
    std::map<double, double> merged;
    for (const auto& [s, _] : pmfs[k]) merged[s] = 0.0;
    for (const auto& [s, _] : pmfs[star]) merged[s] = 0.0;
    std::vector<double> p, q;
    for (const auto& [s, _] : merged) {
      p.push_back(pmfs[k].contains(s) ? pmfs[k].at(s) : 0.0);
      q.push_back(pmfs[star].contains(s) ? pmfs[star].at(s) : 0.0);
    }
    const double d = kl_divergence(p, q);
    if (d > 0.0) out[k] = 1.0 / d;
  }
  return out;
}

double recency_rate_constant(double bonus_c, double delta) {
  return 1.0 / std::log(BonusFn(bonus_c).inverse(delta));
}

}  // namespace rbl
