#include <cmath>
#include <stdexcept>
#include <string>

#include "rbl/scenario_io.hpp"

namespace rbl {
namespace {

constexpr std::uint64_t kHorizon = 1u << 15;
constexpr std::uint64_t kDeskRuns = 1000;
constexpr std::uint64_t kPresetSeed = 1;

ScenarioConfig base(std::vector<BandSpec> bands, std::vector<PolicyConfig> policies) {
  ScenarioConfig s;
  s.bands = std::move(bands);
  s.policies = std::move(policies);
  s.horizon = kHorizon;
  s.runs = kDeskRuns;
  s.master_seed = kPresetSeed;
  s.checkpoints = default_checkpoints(s.horizon);
  return s;
}

std::vector<PolicyConfig> markov_policies() {
  return {
      {"recency_regen_c2", RecencyRegenParams{2.0}},
      {"klucb", KlUcbParams{0.0}},
      {"dsee", DseeParams{Schedule::log(), DseeMeanSource::ExploreOnly}},
      {"rca_L1", RcaParams{Schedule::fixed(1.0)}},
      {"rca_Lln", RcaParams{Schedule::log()}},
  };
}

std::vector<BandSpec> gilbert_elliot_bands(const std::vector<double>& p10, const std::vector<double>& p01) {
  std::vector<BandSpec> bands;
  for (std::size_t k = 0; k < p10.size(); ++k) bands.push_back(GilbertElliot{p01[k], p10[k], 1.0, 0.0});
  return bands;
}

// Exponentially tilts `weights` on the grid until the mean hits `target`.
IidDiscrete tilt_to_mean(const std::vector<double>& grid, const std::vector<double>& weights, double target) {
  auto pmf_for = [&](double theta) {
    std::vector<double> p(grid.size());
    double z = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      p[i] = weights[i] * std::exp(theta * grid[i]);
      z += p[i];
    }
    for (auto& v : p) v /= z;
    return p;
  };
  auto mean_of = [&](const std::vector<double>& p) {
    double m = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) m += grid[i] * p[i];
    return m;
  };
  double lo = -20.0, hi = 20.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mean_of(pmf_for(mid)) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return IidDiscrete{grid, pmf_for(0.5 * (lo + hi))};
}

}  // namespace

std::pair<IidDiscrete, IidDiscrete> fig9_pmfs() {
  std::vector<double> grid(101), bimodal(101), bell(101);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = static_cast<double>(i) / 100.0;
    grid[i] = x;
    bimodal[i] = std::exp(-(x - 0.25) * (x - 0.25) / (2 * 0.08 * 0.08)) +
                 std::exp(-(x - 0.75) * (x - 0.75) / (2 * 0.08 * 0.08)) + 0.02;
    bell[i] = std::exp(-(x - 0.5) * (x - 0.5) / (2 * 0.18 * 0.18)) + 0.02;
  }
  return {tilt_to_mean(grid, bimodal, 0.4967), tilt_to_mean(grid, bell, 0.50541)};
}

std::vector<std::string> preset_names() { return {"fig7", "fig8", "fig9", "fig11", "fig12"}; }

ScenarioConfig expand_preset(std::string_view name) {
  if (name == "fig7") {
    return base({IidUniform{0.0, 0.5}, IidUniform{0.5, 1.0}}, {{"recency_c2", RecencyParams{2.0}}});
  }
  if (name == "fig8") {
    std::vector<BandSpec> bands;
    for (double p : {0.1, 0.7, 0.5, 0.6, 0.8}) bands.push_back(Bernoulli{p});
    return base(std::move(bands), {
                                      {"recency_c0.5", RecencyParams{0.5}},
                                      {"klucb", KlUcbParams{0.0}},
                                      {"dsee", DseeParams{Schedule::log(), DseeMeanSource::ExploreOnly}},
                                      {"rca_L1", RcaParams{Schedule::fixed(1.0)}},
                                      {"rca_Lln", RcaParams{Schedule::log()}},
                                  });
  }
  if (name == "fig9") {
    auto [first, second] = fig9_pmfs();
    return base({std::move(first), std::move(second)},
                {
                    {"recency_c2", RecencyParams{2.0}},
                    {"recency_c0.5", RecencyParams{0.5}},
                    {"klucb", KlUcbParams{0.0}},
                    {"dsee", DseeParams{Schedule::log(), DseeMeanSource::ExploreOnly}},
                    {"rca_L1", RcaParams{Schedule::fixed(1.0)}},
                    {"rca_Lln", RcaParams{Schedule::log()}},
                });
  }
  if (name == "fig11") {
    return base(gilbert_elliot_bands({0.01, 0.01, 0.02, 0.02, 0.03, 0.03, 0.04, 0.04, 0.05, 0.05},
                                     {0.08, 0.07, 0.08, 0.07, 0.08, 0.07, 0.02, 0.01, 0.02, 0.01}),
                markov_policies());
  }
  if (name == "fig12") {
    return base(gilbert_elliot_bands({0.95, 0.97, 0.94, 0.91, 0.96}, {0.94, 0.93, 0.91, 0.97, 0.91}),
                markov_policies());
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace rbl
