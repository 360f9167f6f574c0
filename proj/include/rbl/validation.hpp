#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rbl {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::string detail;
};

// Property suites backing the `validate` subcommand. Each is deterministic
// for a given seed.

/// Pinsker bound delta^2 / 2 <= KL on random PMF pairs over the 101-point grid.
SuiteResult pinsker_general_suite(std::uint64_t pairs = 10000, std::uint64_t seed = 7);

/// Bernoulli Pinsker bound on the 99 x 99 grid {0.01..0.99}^2, plus
/// 2 delta^2 >= delta^2 / 2 everywhere.
SuiteResult pinsker_bernoulli_suite();

/// g concave (second differences <= 0) and strictly increasing on
/// [1.01, 100] with step 0.01, for c = 2 and c = 1/2.
SuiteResult bonus_shape_suite();

/// g(g^-1(y)) = y within 1e-12 on y in [0, 3].
SuiteResult bonus_inverse_suite();

/// 1 / ln(g^-1(delta)) equals 2 / delta^2 (c = 2) to 1e-12 relative.
SuiteResult slope_constant_suite();

/// Mean cycle length * stationary probability of the anchor is 1 within
/// three standard errors at 1e5 slots.
SuiteResult cycle_law_suite(std::uint64_t seed = 11);

/// KL-UCB bisection against a grid scan of step 1e-6 on random triples.
SuiteResult klucb_oracle_suite(std::uint64_t triples = 1000, std::uint64_t seed = 13);

/// Largest grid point q = i * step (q >= mean) with count * d(mean||q) <= budget,
/// scanning upwards from mean. Independent of the bisection in klucb_index.
double klucb_grid_oracle(double mean, std::uint64_t count, std::uint64_t n, double c_loglog,
                         double step = 1e-6);

std::vector<SuiteResult> run_validation_suites();

}  // namespace rbl
