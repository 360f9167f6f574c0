#include "rbl/bonus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbl {

BonusFn::BonusFn(double c) : c_(c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("bonus coefficient must be > 0");
}

double BonusFn::operator()(double x) const {
  if (!(x >= 1.0)) throw std::domain_error("bonus argument must be >= 1");
  return std::sqrt(c_ * std::log(x));
}

double BonusFn::inverse(double delta) const {
  if (!(delta >= 0.0)) throw std::domain_error("bonus inverse needs delta >= 0");
  return std::exp(delta * delta / c_);
}

double BonusFn::at(std::uint64_t n, std::uint64_t last_sensed) const noexcept {
  const double ratio = static_cast<double>(n) / static_cast<double>(last_sensed);
  return std::sqrt(c_ * std::max(0.0, std::log(ratio)));
}

}  // namespace rbl
