#pragma once

#include <cstdint>

namespace rbl {

// Recency exploration bonus g(x) = sqrt(c * ln x), x = n / tau.
//
// g(1) = 0, and g is concave, strictly increasing and unbounded on x >= 1.
// A suboptimal band with gap delta is asymptotically revisited once
// n / tau reaches g^-1(delta) = exp(delta^2 / c), so its sensing count grows
// like ln(n) / ln(g^-1(delta)) = c / delta^2 * ln(n).
//
// c = 2 matches the Pinsker bound delta^2 / 2 <= KL for any [0,1] rewards;
// c = 1/2 uses the tighter 2 delta^2 <= KL that holds for Bernoulli rewards.
class BonusFn {
 public:
  explicit BonusFn(double c);

  static BonusFn bounded_iid() { return BonusFn(2.0); }
  static BonusFn bernoulli() { return BonusFn(0.5); }

  double c() const noexcept { return c_; }

  /// g(x). Throws std::domain_error for x < 1.
  double operator()(double x) const;

  /// g^-1(delta) = exp(delta^2 / c). Throws std::domain_error for delta < 0.
  double inverse(double delta) const;

  /// Bonus of a band last sensed at `last_sensed`, evaluated at slot n.
  /// Clamps ln(n / last_sensed) at zero against rounding.
  double at(std::uint64_t n, std::uint64_t last_sensed) const noexcept;

  bool operator==(const BonusFn&) const = default;

 private:
  double c_;
};

}  // namespace rbl
