#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "doctest.h"
#include "rbl/harness.hpp"
#include "rbl/rng.hpp"

using namespace rbl;

namespace {

ScenarioConfig mixed_scenario() {
  ScenarioConfig s;
  s.bands = {GilbertElliot{0.2, 0.1, 1.0, 0.0}, GilbertElliot{0.1, 0.3, 1.0, 0.0}, GilbertElliot{0.4, 0.4, 1.0, 0.0}};
  s.horizon = 4096;
  s.checkpoints = default_checkpoints(s.horizon);
  s.runs = 12;
  s.master_seed = 99;
  s.policies = {{"regen", RecencyRegenParams{2.0}}, {"klucb", KlUcbParams{0.0}}, {"dsee", DseeParams{}},
                {"rca", RcaParams{Schedule::fixed(1.0)}}, {"ucb1", Ucb1Params{}}};
  return s;
}

}  // namespace

TEST_CASE("default checkpoints") {
  CHECK(default_checkpoints(1u << 15) ==
        std::vector<std::uint64_t>{128, 256, 512, 1024, 2048, 4096, 8192, 16384, 32768});
  const auto ext = default_checkpoints(100000);
  CHECK(ext.size() == 11);
  CHECK(ext[9] == 65536);
  CHECK(ext.back() == 100000);
  CHECK(default_checkpoints(50) == std::vector<std::uint64_t>{50});
}

TEST_CASE("scenario validation") {
  ScenarioConfig s = mixed_scenario();
  CHECK_NOTHROW(validate_scenario(s));
  auto bad = s;
  bad.horizon = 2;
  bad.checkpoints = {2};
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = s;
  bad.runs = 0;
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = s;
  bad.checkpoints = {256, 128};
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = s;
  bad.checkpoints = {0, 128};
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = s;
  bad.checkpoints = {5000};
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = s;
  bad.policies[1].label = "regen";
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = s;
  bad.policies[0].label = "a,b";
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = s;
  bad.policies.clear();
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = s;
  bad.bands.push_back(Bernoulli{2.0});
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  CHECK_THROWS_AS(run_episode(bad, bad.policies[0], 1), std::invalid_argument);
}

TEST_CASE("weak regret") {
  const std::vector<double> two{0.25, 0.75};
  CHECK(weak_regret(std::vector<std::uint64_t>{0, 100}, two) == 0.0);
  CHECK(weak_regret(std::vector<std::uint64_t>{10, 90}, two) == doctest::Approx(5.0));
  const std::vector<double> five{0.1, 0.7, 0.5, 0.6, 0.8};
  CHECK(weak_regret(std::vector<std::uint64_t>{1, 1, 1, 1, 96}, five) == doctest::Approx(1.3));
  CHECK_THROWS_AS(weak_regret(std::vector<std::uint64_t>{}, std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(weak_regret(std::vector<std::uint64_t>{1}, two), std::invalid_argument);
}

TEST_CASE("single band has no suboptimal sensing") {
  ScenarioConfig s;
  s.bands = {Bernoulli{0.4}};
  s.horizon = 1000;
  s.checkpoints = {10, 100, 1000};
  for (const PolicyParams& params :
       std::vector<PolicyParams>{RecencyParams{}, RecencyRegenParams{}, KlUcbParams{}, DseeParams{}, RcaParams{}}) {
    const PolicyConfig cfg{"p", params};
    s.policies = {cfg};
    const auto t = run_episode(s, cfg, 3);
    CHECK(t.suboptimal == std::vector<std::uint64_t>{0, 0, 0});
    CHECK(t.counts.back()[0] == 1000);
  }
}

TEST_CASE("deterministic rewards bound the suboptimal count") {
  ScenarioConfig s;
  s.bands = {IidUniform{0.25, 0.25}, IidUniform{0.75, 0.75}};
  s.horizon = 1u << 15;
  s.checkpoints = default_checkpoints(s.horizon);
  const PolicyConfig cfg{"recency_c2", RecencyParams{2.0}};
  s.policies = {cfg};
  const auto t = run_episode(s, cfg, 1);
  // 2 / delta^2 * ln n plus the startup slots.
  const double bound = 8.0 * std::log(static_cast<double>(s.horizon)) + 2.0;
  CHECK(static_cast<double>(t.suboptimal.back()) <= bound);
  CHECK(t.suboptimal.back() > 40);
}

TEST_CASE("episode invariants") {
  const auto s = mixed_scenario();
  const auto mus = stationary_means(s.bands);
  for (const auto& cfg : s.policies) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto t = run_episode(s, cfg, seed, {true});
      REQUIRE(t.selections.size() == s.horizon);
      for (std::size_t i = 0; i < t.checkpoints.size(); ++i) {
        const auto& c = t.counts[i];
        CHECK(std::accumulate(c.begin(), c.end(), std::uint64_t{0}) == t.checkpoints[i]);
        CHECK(t.regret[i] == doctest::Approx(t.regret_by_slot[i]).epsilon(1e-12));
        if (i > 0) {
          CHECK(t.suboptimal[i] >= t.suboptimal[i - 1]);
          CHECK(t.regret[i] >= t.regret[i - 1]);
          for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k] >= t.counts[i - 1][k]);
        }
      }
      // Regret rebuilt from the selection sequence.
      const double best = *std::max_element(mus.begin(), mus.end());
      double slotwise = 0.0;
      for (auto b : t.selections) slotwise += best - mus[b];
      CHECK(std::abs(slotwise - t.regret.back()) < 1e-9);
      CHECK(t == run_episode(s, cfg, seed, {true}));
    }
  }
}

TEST_CASE("aggregation") {
  auto s = mixed_scenario();
  s.runs = 1;
  const auto single = monte_carlo(s);
  const auto t = run_episode(s, s.policies[0], derive_run_seed(s.master_seed, 0, 0));
  const auto& p = single.at("regen");
  CHECK(p.runs == 1);
  for (std::size_t i = 0; i < t.checkpoints.size(); ++i) {
    CHECK(p.points[i].mean_subopt == static_cast<double>(t.suboptimal[i]));
    CHECK(p.points[i].std_subopt == 0.0);
    CHECK(p.points[i].mean_regret == t.regret[i]);
  }
  CHECK_THROWS_AS(single.at("nope"), std::out_of_range);

  s = mixed_scenario();
  const auto traces = run_policy(s, 1);
  const auto agg = aggregate("klucb", traces);
  for (std::size_t i = 0; i < agg.points.size(); ++i) {
    std::vector<double> v;
    for (const auto& tr : traces) v.push_back(static_cast<double>(tr.suboptimal[i]));
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const auto& pt = agg.points[i];
    CHECK(pt.mean_subopt >= *lo);
    CHECK(pt.mean_subopt <= *hi);
    CHECK(pt.mean_subopt == doctest::Approx(mean));
    CHECK(pt.std_subopt == doctest::Approx(std::sqrt(ss / static_cast<double>(v.size() - 1))));
    CHECK(pt.mean_subopt_over_ln_n == doctest::Approx(mean / std::log(static_cast<double>(pt.n))));
  }
}

TEST_CASE("monte carlo determinism and worker independence") {
  const auto s = mixed_scenario();
  const auto serial = monte_carlo(s, {1});
  CHECK(serial == monte_carlo(s, {1}));
  CHECK(serial == monte_carlo(s, {3}));
  CHECK(serial == monte_carlo(s, {8}));
  auto other = s;
  other.master_seed = 100;
  CHECK_FALSE(serial == monte_carlo(other, {2}));
}
