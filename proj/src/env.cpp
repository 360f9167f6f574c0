#include "rbl/env.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rbl {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }
bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void validate(const BandSpec& spec) {
  std::visit(
      overloaded{
          [](const IidUniform& s) {
            require(in_unit(s.lo) && in_unit(s.hi) && s.lo <= s.hi,
                    "iid_uniform: need 0 <= lo <= hi <= 1");
          },
          [](const IidDiscrete& s) {
            require(!s.support.empty(), "iid_discrete: empty support");
            require(s.support.size() == s.probs.size(),
                    "iid_discrete: support and probs differ in length");
            double total = 0.0;
            for (std::size_t i = 0; i < s.support.size(); ++i) {
              require(in_unit(s.support[i]), "iid_discrete: support value outside [0,1]");
              require(s.probs[i] >= 0.0 && std::isfinite(s.probs[i]),
                      "iid_discrete: negative probability");
              total += s.probs[i];
            }
            require(std::abs(total - 1.0) <= 1e-12, "iid_discrete: probs do not sum to 1");
          },
          [](const Bernoulli& s) { require(in_unit(s.p), "bernoulli: p outside [0,1]"); },
          [](const GilbertElliot& s) {
            require(in_open_unit(s.p01) && in_open_unit(s.p10),
                    "gilbert_elliot: p01 and p10 must lie in (0,1) for an ergodic chain");
            require(in_unit(s.r_idle) && in_unit(s.r_occ),
                    "gilbert_elliot: rewards outside [0,1]");
          },
      },
      spec);
}

Occupancy stationary_occupancy(const GilbertElliot& spec) {
  require(in_open_unit(spec.p01) && in_open_unit(spec.p10),
          "stationary_occupancy: non-ergodic chain (p01, p10 must lie in (0,1))");
  const double idle = spec.p10 / (spec.p01 + spec.p10);
  return {idle, 1.0 - idle};
}

double stationary_mean(const BandSpec& spec) {
  validate(spec);
  return std::visit(
      overloaded{
          [](const IidUniform& s) { return 0.5 * (s.lo + s.hi); },
          [](const IidDiscrete& s) {
            double m = 0.0;
            for (std::size_t i = 0; i < s.support.size(); ++i) m += s.support[i] * s.probs[i];
            return m;
          },
          [](const Bernoulli& s) { return s.p; },
          [](const GilbertElliot& s) {
            const auto occ = stationary_occupancy(s);
            return s.r_idle * occ.idle + s.r_occ * occ.occupied;
          },
      },
      spec);
}

std::vector<double> stationary_means(std::span<const BandSpec> bands) {
  std::vector<double> mus;
  mus.reserve(bands.size());
  for (const auto& b : bands) mus.push_back(stationary_mean(b));
  return mus;
}

Environment::Environment(std::vector<BandSpec> bands)
    : bands_(std::move(bands)), markov_slot_(bands_.size(), -1), cdf_(bands_.size()) {
  if (bands_.empty()) throw std::invalid_argument("environment needs at least one band");
  for (std::size_t k = 0; k < bands_.size(); ++k) {
    validate(bands_[k]);
    if (const auto* ge = std::get_if<GilbertElliot>(&bands_[k])) {
      markov_slot_[k] = static_cast<int>(markov_.size());
      markov_.push_back({k, ge->p01, ge->p10, stationary_occupancy(*ge).idle, 0});
    } else if (const auto* d = std::get_if<IidDiscrete>(&bands_[k])) {
      auto& cdf = cdf_[k];
      cdf.resize(d->probs.size());
      double acc = 0.0;
      for (std::size_t i = 0; i < d->probs.size(); ++i) {
        acc += d->probs[i];
        cdf[i] = acc;
      }
    }
  }
}

void Environment::init_states(Rng& rng) {
  for (auto& m : markov_) m.state = uniform01(rng) < m.pi_idle ? 0 : 1;
}

void Environment::advance(Rng& rng) {
  for (auto& m : markov_) {
    const double u = uniform01(rng);
    if (m.state == 0) {
      if (u < m.p01) m.state = 1;
    } else if (u < m.p10) {
      m.state = 0;
    }
  }
  ++slot_;
}

Observation Environment::observe(std::size_t band, Rng& rng) const {
  if (band >= bands_.size()) throw std::out_of_range("observe: band index out of range");
  return std::visit(
      overloaded{
          [&](const IidUniform& s) {
            return Observation{s.lo + (s.hi - s.lo) * uniform01(rng), 0};
          },
          [&](const IidDiscrete& s) {
            const auto& cdf = cdf_[band];
            const double u = uniform01(rng);
            std::size_t i = 0;
            while (i + 1 < cdf.size() && !(u < cdf[i])) ++i;
            return Observation{s.support[i], static_cast<int>(i)};
          },
          [&](const Bernoulli& s) {
            return uniform01(rng) < s.p ? Observation{1.0, 0} : Observation{0.0, 1};
          },
          [&](const GilbertElliot& s) {
            const int state = markov_[static_cast<std::size_t>(markov_slot_[band])].state;
            return Observation{state == 0 ? s.r_idle : s.r_occ, state};
          },
      },
      bands_[band]);
}

std::optional<int> Environment::markov_state(std::size_t band) const {
  if (band >= bands_.size()) throw std::out_of_range("markov_state: band index out of range");
  const int idx = markov_slot_[band];
  if (idx < 0) return std::nullopt;
  return markov_[static_cast<std::size_t>(idx)].state;
}

}  // namespace rbl
