#include "rbl/validation.hpp"

#include <cmath>
#include <sstream>

#include "rbl/analysis.hpp"
#include "rbl/bonus.hpp"
#include "rbl/env.hpp"
#include "rbl/kl.hpp"
#include "rbl/rng.hpp"

namespace rbl {
namespace {

constexpr std::size_t kGridPoints = 101;

std::vector<double> unit_grid() {
  std::vector<double> g(kGridPoints);
  for (std::size_t i = 0; i < kGridPoints; ++i) g[i] = static_cast<double>(i) / 100.0;
  return g;
}

// Random PMF on the grid. Mixes flat, peaked and sparse shapes so that the
// pairs cover both near-identical and nearly disjoint distributions.
std::vector<double> random_pmf(Rng& rng) {
  std::vector<double> w(kGridPoints);
  const double u = uniform01(rng);
  const double power = u < 0.3 ? 1.0 : (u < 0.6 ? 4.0 : 12.0);
  const double zero_rate = uniform01(rng) < 0.25 ? 0.8 : 0.0;
  double total = 0.0;
  for (auto& v : w) {
    v = uniform01(rng) < zero_rate ? 0.0 : std::pow(uniform01(rng), power);
    total += v;
  }
  if (total == 0.0) {
    w[static_cast<std::size_t>(uniform01(rng) * kGridPoints)] = 1.0;
    total = 1.0;
  }
  for (auto& v : w) v /= total;
  return w;
}

std::string describe(std::uint64_t cases, std::uint64_t violations) {
  std::ostringstream os;
  os << violations << " violations in " << cases << " cases";
  return os.str();
}

SuiteResult finish(std::string name, std::uint64_t cases, std::uint64_t violations) {
  return {std::move(name), violations == 0, cases, violations, describe(cases, violations)};
}

}  // namespace

SuiteResult pinsker_general_suite(std::uint64_t pairs, std::uint64_t seed) {
  Rng rng(seed);
  const auto grid = unit_grid();
  std::uint64_t violations = 0;
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const auto p = random_pmf(rng);
    const auto q = random_pmf(rng);
    if (!pinsker_check_general(grid, p, q).holds) ++violations;
  }
  return finish("pinsker_general", pairs, violations);
}

SuiteResult pinsker_bernoulli_suite() {
  std::uint64_t cases = 0, violations = 0;
  for (int i = 1; i <= 99; ++i) {
    for (int j = 1; j <= 99; ++j) {
      const auto c = pinsker_check_bernoulli(i / 100.0, j / 100.0);
      ++cases;
      if (!c.holds || 2.0 * c.delta * c.delta < 0.5 * c.delta * c.delta) ++violations;
    }
  }
  return finish("pinsker_bernoulli", cases, violations);
}

SuiteResult bonus_shape_suite() {
  std::uint64_t cases = 0, violations = 0;
  for (double c : {2.0, 0.5}) {
    const BonusFn g(c);
    const double h = 0.01;
    for (int i = 1; 1.0 + (i + 1) * h <= 100.0 + 1e-9; ++i) {
      const double x = 1.0 + i * h;
      const double lo = g(x - h), mid = g(x), hi = g(x + h);
      ++cases;
      if (hi - 2.0 * mid + lo > 0.0 || !(hi > mid) || !(mid > lo)) ++violations;
    }
    ++cases;
    if (g(1.0) != 0.0) ++violations;
  }
  return finish("bonus_shape", cases, violations);
}

SuiteResult bonus_inverse_suite() {
  std::uint64_t cases = 0, violations = 0;
  for (double c : {2.0, 0.5}) {
    const BonusFn g(c);
    for (int i = 0; i <= 300; ++i) {
      const double y = i / 100.0;
      ++cases;
      if (std::abs(g(g.inverse(y)) - y) > 1e-12) ++violations;
    }
    ++cases;
    if (g.inverse(0.0) != 1.0) ++violations;
  }
  return finish("bonus_inverse", cases, violations);
}

SuiteResult slope_constant_suite() {
  std::uint64_t cases = 0, violations = 0;
  for (int i = 1; i <= 20; ++i) {
    const double delta = 0.05 * i;
    const double from_inverse = recency_rate_constant(2.0, delta);
    const double closed_form = 2.0 / (delta * delta);
    ++cases;
    if (std::abs(from_inverse - closed_form) > 1e-12 * closed_form) ++violations;
  }
  return finish("slope_constant", cases, violations);
}

SuiteResult cycle_law_suite(std::uint64_t seed) {
  struct Case {
    GilbertElliot chain;
    int anchor;
  };
  const Case cases[] = {
      {{0.5, 0.5, 1.0, 0.0}, 0},   {{0.5, 0.5, 1.0, 0.0}, 1},   {{0.08, 0.01, 1.0, 0.0}, 0},
      {{0.02, 0.04, 1.0, 0.0}, 0}, {{0.94, 0.95, 1.0, 0.0}, 0}, {{0.01, 0.05, 1.0, 0.0}, 1},
  };
  std::uint64_t violations = 0, i = 0;
  std::ostringstream detail;
  for (const auto& c : cases) {
    const auto trace = simulate_state_trace(c.chain, 100000, splitmix64(seed + i++));
    const auto stats = cycle_stats(trace, c.anchor);
    const auto occ = stationary_occupancy(c.chain);
    const double pi = c.anchor == 0 ? occ.idle : occ.occupied;
    const double se = stats.std_length / std::sqrt(static_cast<double>(stats.count));
    if (std::abs(stats.mean_length - 1.0 / pi) > 3.0 * se) ++violations;
  }
  detail << describe(std::size(cases), violations) << " (3 standard errors, 1e5 slots)";
  return {"cycle_law", violations == 0, std::size(cases), violations, detail.str()};
}

double klucb_grid_oracle(double mean, std::uint64_t count, std::uint64_t n, double c_loglog, double step) {
  // For q >= mean the divergence is increasing, so the feasible q form an
  // interval starting at mean; the scan stops at its first infeasible point.
  const double level = klucb_budget(n, c_loglog);
  const double m = static_cast<double>(count);
  double best = mean;
  for (auto i = static_cast<std::uint64_t>(std::ceil(mean / step));; ++i) {
    const double q = static_cast<double>(i) * step;
    if (q > 1.0) break;
    if (q < mean) continue;
    if (m * kl_bernoulli(mean, q) <= level) {
      best = q;
    } else {
      break;
    }
  }
  return best;
}

SuiteResult klucb_oracle_suite(std::uint64_t triples, std::uint64_t seed) {
  Rng rng(seed);
  std::uint64_t violations = 0;
  double worst = 0.0;
  for (std::uint64_t t = 0; t < triples; ++t) {
    const double mean = uniform01(rng);
    const auto count = 1 + static_cast<std::uint64_t>(uniform01(rng) * 1000.0);
    const auto n = 2 + static_cast<std::uint64_t>(uniform01(rng) * 99999.0);
    const double got = klucb_index(mean, count, n, 0.0);
    const double want = klucb_grid_oracle(mean, count, n, 0.0);
    worst = std::max(worst, std::abs(got - want));
    if (std::abs(got - want) > 2e-6) ++violations;
  }
  std::ostringstream detail;
  detail << describe(triples, violations) << ", max |bisection - grid| = " << worst;
  return {"klucb_oracle", violations == 0, triples, violations, detail.str()};
}

std::vector<SuiteResult> run_validation_suites() {
  return {pinsker_general_suite(), pinsker_bernoulli_suite(), bonus_shape_suite(),
          bonus_inverse_suite(),   slope_constant_suite(),    cycle_law_suite(),
          klucb_oracle_suite()};
}

}  // namespace rbl
