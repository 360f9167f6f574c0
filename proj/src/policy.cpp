#include "rbl/policy.hpp"

#include <cmath>
#include <stdexcept>

#include "rbl/baselines.hpp"
#include "rbl/recency.hpp"

namespace rbl {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::size_t argmax_lowest(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax over an empty range");
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }
  return best;
}

double Schedule::operator()(double n) const {
  if (!logarithmic) return constant;
  return n > 1.0 ? std::log(n) : 0.0;
}

std::string_view policy_name(const PolicyParams& params) {
  return std::visit(overloaded{
                        [](const RecencyParams&) { return std::string_view("recency"); },
                        [](const RecencyRegenParams&) { return std::string_view("recency_regen"); },
                        [](const Ucb1Params&) { return std::string_view("ucb1"); },
                        [](const KlUcbParams&) { return std::string_view("klucb"); },
                        [](const DseeParams&) { return std::string_view("dsee"); },
                        [](const RcaParams&) { return std::string_view("rca"); },
                    },
                    params);
}

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, std::size_t num_bands) {
  if (num_bands == 0) throw std::invalid_argument("policy needs at least one band");
  return std::visit(
      overloaded{
          [&](const RecencyParams& p) -> std::unique_ptr<Policy> {
            return std::make_unique<RecencyIidPolicy>(num_bands, BonusFn(p.c));
          },
          [&](const RecencyRegenParams& p) -> std::unique_ptr<Policy> {
            return std::make_unique<RecencyRegenPolicy>(num_bands, BonusFn(p.c));
          },
          [&](const Ucb1Params&) -> std::unique_ptr<Policy> {
            return std::make_unique<Ucb1Policy>(num_bands);
          },
          [&](const KlUcbParams& p) -> std::unique_ptr<Policy> {
            return std::make_unique<KlUcbPolicy>(num_bands, p.c_loglog);
          },
          [&](const DseeParams& p) -> std::unique_ptr<Policy> {
            return std::make_unique<DseePolicy>(num_bands, p.d, p.mean_source);
          },
          [&](const RcaParams& p) -> std::unique_ptr<Policy> {
            return std::make_unique<RcaPolicy>(num_bands, p.l);
          },
      },
      config.params);
}

}  // namespace rbl
