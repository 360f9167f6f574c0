#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "rbl/env.hpp"

namespace rbl {

/// Uniform select/update contract shared by every sensing policy.
/// Slots are numbered from 1. select(n) is followed by exactly one
/// update(band, observation, n) for the same slot.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::size_t select(std::uint64_t n) = 0;
  virtual void update(std::size_t band, const Observation& obs, std::uint64_t n) = 0;
  virtual std::size_t num_bands() const noexcept = 0;
};

/// Index of the largest value; ties go to the lowest index.
std::size_t argmax_lowest(std::span<const double> values);

/// Slowly growing parameter such as D(n) in DSEE or L(n) in RCA: either ln n
/// or a fixed constant.
struct Schedule {
  bool logarithmic = true;
  double constant = 1.0;

  static Schedule log() { return {true, 1.0}; }
  static Schedule fixed(double value) { return {false, value}; }

  double operator()(double n) const;
  bool operator==(const Schedule&) const = default;
};

struct RecencyParams {
  double c = 2.0;
  bool operator==(const RecencyParams&) const = default;
};

struct RecencyRegenParams {
  double c = 2.0;
  bool operator==(const RecencyRegenParams&) const = default;
};

struct Ucb1Params {
  bool operator==(const Ucb1Params&) const = default;
};

struct KlUcbParams {
  double c_loglog = 0.0;
  bool operator==(const KlUcbParams&) const = default;
};

enum class DseeMeanSource { ExploreOnly, All };

struct DseeParams {
  Schedule d = Schedule::log();
  DseeMeanSource mean_source = DseeMeanSource::ExploreOnly;
  bool operator==(const DseeParams&) const = default;
};

struct RcaParams {
  Schedule l = Schedule::log();
  bool operator==(const RcaParams&) const = default;
};

using PolicyParams = std::variant<RecencyParams, RecencyRegenParams, Ucb1Params, KlUcbParams,
                                  DseeParams, RcaParams>;

struct PolicyConfig {
  std::string label;
  PolicyParams params;
  bool operator==(const PolicyConfig&) const = default;
};

/// Registry name: recency, recency_regen, ucb1, klucb, dsee or rca.
std::string_view policy_name(const PolicyParams& params);

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, std::size_t num_bands);

}  // namespace rbl
