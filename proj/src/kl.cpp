#include "rbl/kl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rbl {

double kl_bernoulli(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("kl_bernoulli: arguments must lie in [0,1]");
  }
  if (p == q) return 0.0;
  if (q == 0.0 || q == 1.0) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  if (p > 0.0) d += p * std::log(p / q);
  if (p < 1.0) d += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  // Rounding can leave a tiny negative value when p ~ q.
  return d > 0.0 ? d : 0.0;
}

double klucb_budget(std::uint64_t n, double c_loglog) {
  const double ln_n = std::log(static_cast<double>(n));
  const double loglog = ln_n > 1.0 ? std::log(ln_n) : 0.0;
  return ln_n + c_loglog * loglog;
}

double klucb_index(double mean, std::uint64_t count, std::uint64_t n, double c_loglog, double tol) {
  if (count == 0) throw std::invalid_argument("klucb_index: count must be >= 1");
  if (!(mean >= 0.0 && mean <= 1.0)) throw std::domain_error("klucb_index: mean outside [0,1]");
  if (mean >= 1.0) return 1.0;
  const double level = klucb_budget(n, c_loglog) / static_cast<double>(count);
  // Pinsker, d(p||q) >= 2 (q - p)^2, brackets the root from above.
  double lo = mean;
  double hi = std::min(1.0, mean + std::sqrt(0.5 * level));
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (kl_bernoulli(mean, mid) <= level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace rbl
