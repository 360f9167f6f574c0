#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rbl/harness.hpp"
#include "rbl/recency.hpp"

using namespace rbl;

TEST_CASE("argmax with lowest-index ties") {
  const std::vector<double> v{0.3, 0.7, 0.7, 0.1};
  CHECK(argmax_lowest(v) == 1);
  const std::vector<double> flat{0.5, 0.5, 0.5};
  CHECK(argmax_lowest(flat) == 0);
  // Shifting every index by a constant keeps the argmax and the tie-break.
  for (double shift : {-3.0, 0.25, 10.0}) {
    std::vector<double> w = v;
    for (auto& x : w) x += shift;
    CHECK(argmax_lowest(w) == 1);
  }
}

TEST_CASE("recency iid startup then index rule") {
  RecencyIidPolicy p(2, BonusFn::bounded_iid());
  CHECK(p.in_startup());
  CHECK(p.select(1) == 0);
  p.record(0, 0.2, 1);
  CHECK(p.select(2) == 1);
  p.record(1, 0.9, 2);
  CHECK_FALSE(p.in_startup());
  CHECK(p.index(0, 3) == doctest::Approx(0.2 + std::sqrt(2 * std::log(3.0))));
  CHECK(p.index(0, 3) == doctest::Approx(1.682).epsilon(1e-3));
  CHECK(p.index(1, 3) == doctest::Approx(1.800).epsilon(1e-3));
  CHECK(p.select(3) == 1);
}

TEST_CASE("recency iid ties go to the lowest band") {
  RecencyIidPolicy p(3, BonusFn::bounded_iid());
  for (std::size_t k = 0; k < 3; ++k) p.record(k, 0.5, 1);
  CHECK(p.select(2) == 0);
}

TEST_CASE("recency iid update bookkeeping") {
  RecencyIidPolicy p(2, BonusFn::bernoulli());
  for (int i = 0; i < 4; ++i) p.record(0, 0.5, i + 1);
  p.record(0, 0.5, 5);
  CHECK(p.sample_mean(0) == 0.5);
  CHECK(p.last_sensed(0) == 5);
  CHECK_THROWS_AS(p.record(0, 1.5, 6), std::invalid_argument);
  CHECK_THROWS_AS(p.record(0, -0.1, 6), std::invalid_argument);
  CHECK_THROWS_AS(p.record(2, 0.5, 6), std::out_of_range);

  RecencyIidPolicy q(3, BonusFn::bounded_iid());
  for (std::uint64_t n = 1; n <= 500; ++n) {
    const auto k = q.select(n);
    q.update(k, {k == 2 ? 0.9 : 0.1, 0}, n);
    CHECK(q.last_sensed(k) == n);
  }
  CHECK(q.count(0) + q.count(1) + q.count(2) == 500);
}

TEST_CASE("exponential spacing with deterministic rewards") {
  // Constant rewards make the sample means exact after one sensing, so the
  // suboptimal band returns only once n / z_j exceeds g^-1(0.5).
  RecencyIidPolicy p(2, BonusFn::bounded_iid());
  const double factor = std::exp(0.125);
  std::vector<std::uint64_t> z;
  for (std::uint64_t n = 1; n <= 200000; ++n) {
    const auto k = p.select(n);
    p.record(k, k == 0 ? 0.25 : 0.75, n);
    if (k == 0) z.push_back(n);
  }
  REQUIRE(z.size() > 10);
  for (std::size_t j = 1; j + 1 < z.size(); ++j) {
    CHECK(static_cast<double>(z[j + 1]) >= static_cast<double>(z[j]) * factor);
  }
}

TEST_CASE("regenerative policy replays the two-band example") {
  // Band 1 is occupied at slots 1-2; band 2 is idle at 3-5, occupied at 6-7
  // and idle at 8; back on band 1: occupied at 9, idle at 10-11, occupied at 12.
  RecencyRegenPolicy p(2, BonusFn::bounded_iid());
  const int states[] = {1, 1, 0, 0, 0, 1, 1, 0, 1, 0, 0, 1};
  const std::size_t bands[] = {0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0};
  std::vector<std::uint64_t> decisions;
  for (std::uint64_t n = 1; n <= 12; ++n) {
    REQUIRE(p.select(n) == bands[n - 1]);
    const int s = states[n - 1];
    const auto d = p.step(s, s == 0 ? 1.0 : 0.0, n);
    if (d.kind == RegenDecisionKind::CycleClosed) decisions.push_back(n);
  }
  CHECK(decisions == std::vector<std::uint64_t>{2, 4, 5, 8, 12});
  // Every visit here ends in a hop (slots 2, 8 and 12, the last one back to
  // band 2), so each closing reward is left out of the mean.
  CHECK(p.excluded(0) == 2);
  CHECK(p.excluded(1) == 1);
  CHECK(p.current_band() == 1);
  CHECK(p.count(0) == 4);
  CHECK(p.sample_mean(0) == doctest::Approx(0.5));
  CHECK(p.count(1) == 5);
  CHECK(p.sample_mean(1) == doctest::Approx(0.6));
}

TEST_CASE("regenerative index recomputation at a stay keeps the closing reward") {
  RecencyRegenPolicy p(2, BonusFn::bounded_iid());
  // Startup: band 1 cycle 0,1,0 then band 2 cycle 1,1.
  p.step(0, 1.0, 1);
  p.step(1, 0.0, 2);
  CHECK(p.step(0, 1.0, 3).band == 1);
  CHECK(p.excluded(0) == 1);
  CHECK(p.count(0) == 2);
  p.step(1, 0.0, 4);
  const auto d = p.step(1, 0.0, 5);
  CHECK(d.kind == RegenDecisionKind::CycleClosed);
  // Band 1: mean 0.5, last sensed 3; band 2: mean 0, last sensed 5.
  const double i0 = 0.5 + std::sqrt(2 * std::log(6.0 / 3.0));
  const double i1 = 0.0 + std::sqrt(2 * std::log(6.0 / 5.0));
  CHECK(p.index(0, 6) == doctest::Approx(i0));
  CHECK(p.index(1, 6) == doctest::Approx(i1));
  CHECK(d.band == 0);
}

TEST_CASE("regenerative policy with a constant state decides every slot") {
  RecencyRegenPolicy p(1, BonusFn::bounded_iid());
  CHECK(p.step(0, 1.0, 1).kind == RegenDecisionKind::Continue);
  for (std::uint64_t n = 2; n <= 50; ++n) {
    const auto d = p.step(0, 1.0, n);
    CHECK(d.kind == RegenDecisionKind::CycleClosed);
    CHECK(d.band == 0);
  }
  CHECK(p.count(0) == 50);
  CHECK(p.excluded(0) == 0);
}

TEST_CASE("regenerative policy rejects bad input") {
  RecencyRegenPolicy p(2, BonusFn::bounded_iid());
  CHECK_THROWS_AS(p.step(-1, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(p.step(0, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(p.update(1, {0.5, 0}, 1), std::logic_error);
  CHECK_THROWS_AS(RecencyRegenPolicy(0, BonusFn::bounded_iid()), std::invalid_argument);
}

TEST_CASE("regenerative policy never stops sensing a dominated band") {
  ScenarioConfig s;
  s.bands = {GilbertElliot{0.05, 0.2, 1.0, 0.0}, GilbertElliot{0.3, 0.1, 1.0, 0.0}};
  s.horizon = 100000;
  s.checkpoints = {10000, 100000};
  s.runs = 1;
  const PolicyConfig cfg{"regen", RecencyRegenParams{2.0}};
  s.policies = {cfg};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto t = run_episode(s, cfg, seed);
    for (std::size_t k = 0; k < 2; ++k) CHECK(t.counts[1][k] > t.counts[0][k]);
  }
}

TEST_CASE("iid recency keeps sensing every band") {
  ScenarioConfig s;
  s.bands = {Bernoulli{0.9}, Bernoulli{0.2}, Bernoulli{0.5}};
  s.horizon = 100000;
  s.checkpoints = {10000, 100000};
  const PolicyConfig cfg{"recency", RecencyParams{0.5}};
  s.policies = {cfg};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto t = run_episode(s, cfg, seed);
    for (std::size_t k = 0; k < 3; ++k) CHECK(t.counts[1][k] > t.counts[0][k]);
  }
}
