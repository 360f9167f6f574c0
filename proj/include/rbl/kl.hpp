#pragma once

#include <cstdint>

namespace rbl {

/// Bernoulli divergence d(p || q) with 0 ln 0 = 0. Returns +infinity when q
/// is 0 or 1 and p != q. Throws std::domain_error outside [0,1].
double kl_bernoulli(double p, double q);

/// KL-UCB upper index: the largest q in [mean, 1] with
///   count * d(mean || q) <= ln n + c_loglog * ln ln n,
/// located by bisection to absolute tolerance `tol`. The returned q is
/// always feasible.
double klucb_index(double mean, std::uint64_t count, std::uint64_t n, double c_loglog = 0.0,
                   double tol = 1e-6);

/// Right-hand side of the KL-UCB constraint; ln ln n is taken as 0 for n <= e.
double klucb_budget(std::uint64_t n, double c_loglog);

}  // namespace rbl
