#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "rbl/scenario_io.hpp"

using namespace rbl;
using nlohmann::json;

namespace {

ScenarioConfig every_policy() {
  ScenarioConfig s;
  s.bands = {IidUniform{0.1, 0.4}, IidDiscrete{{0.0, 0.3, 1.0}, {0.2, 0.3, 0.5}}, Bernoulli{0.35},
             GilbertElliot{0.08, 0.01, 0.9, 0.05}};
  s.horizon = 3000;
  s.runs = 7;
  s.master_seed = 0xFFFFFFFFFFFFFFFFULL;
  s.checkpoints = {10, 1000, 3000};
  s.policies = {{"r", RecencyParams{0.5}},
                {"rr", RecencyRegenParams{1.25}},
                {"u", Ucb1Params{}},
                {"k", KlUcbParams{3.0}},
                {"d1", DseeParams{Schedule::log(), DseeMeanSource::ExploreOnly}},
                {"d2", DseeParams{Schedule::fixed(4.0), DseeMeanSource::All}},
                {"c1", RcaParams{Schedule::fixed(1.0)}},
                {"c2", RcaParams{Schedule::log()}}};
  return s;
}

// Drops what the CSV schema does not carry.
MetricSeries csv_view(MetricSeries m) {
  for (auto& p : m.policies) {
    for (auto& pt : p.points) {
      pt.mean_counts.clear();
      pt.std_subopt_over_ln_n = 0.0;
    }
  }
  return m;
}

MetricSeries sample_series() {
  ScenarioConfig s;
  s.bands = {Bernoulli{0.3}, Bernoulli{0.6}};
  s.horizon = 2048;
  s.checkpoints = default_checkpoints(s.horizon);
  s.runs = 5;
  s.policies = {{"zeta", KlUcbParams{}}, {"alpha", RecencyParams{0.5}}, {"mid", DseeParams{}}};
  return monte_carlo(s);
}

}  // namespace

TEST_CASE("scenario JSON round trip") {
  const auto s = every_policy();
  CHECK(scenario_from_json(scenario_to_json(s)) == s);
  CHECK(scenario_from_json(json::parse(scenario_to_json(s).dump())) == s);
  for (const auto& name : preset_names()) {
    const auto p = expand_preset(name);
    CHECK(scenario_from_json(json::parse(scenario_to_json(p).dump())) == p);
  }
}

TEST_CASE("checkpoints are the only optional field") {
  auto j = scenario_to_json(every_policy());
  j.erase("checkpoints");
  CHECK(scenario_from_json(j).checkpoints == default_checkpoints(3000));

  for (const char* key : {"bands", "horizon", "runs", "master_seed", "policies"}) {
    auto k = scenario_to_json(every_policy());
    k.erase(key);
    CHECK_THROWS_AS(scenario_from_json(k), std::invalid_argument);
  }
  auto no_label = scenario_to_json(every_policy());
  no_label["policies"][0].erase("label");
  CHECK_THROWS_AS(scenario_from_json(no_label), std::invalid_argument);
  auto no_param = scenario_to_json(every_policy());
  no_param["policies"][4]["params"].erase("mean_source");
  CHECK_THROWS_AS(scenario_from_json(no_param), std::invalid_argument);
  auto no_p10 = scenario_to_json(every_policy());
  no_p10["bands"][3].erase("p10");
  CHECK_THROWS_AS(scenario_from_json(no_p10), std::invalid_argument);
}

TEST_CASE("config errors") {
  auto j = scenario_to_json(every_policy());
  j["extra"] = 1;
  CHECK_THROWS_AS(scenario_from_json(j), std::invalid_argument);

  CHECK_THROWS_AS(band_from_json(json{{"type", "poisson"}, {"rate", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(band_from_json(json{{"type", "bernoulli"}, {"p", "high"}}), std::invalid_argument);
  CHECK_THROWS_AS(band_from_json(json{{"type", "bernoulli"}, {"p", 1.2}}), std::invalid_argument);
  CHECK_THROWS_AS(
      band_from_json(json{{"type", "gilbert_elliot"}, {"p01", 0.0}, {"p10", 0.5}, {"r_idle", 1}, {"r_occ", 0}}),
      std::invalid_argument);
  CHECK_THROWS_AS(policy_from_json(json{{"name", "gittins"}, {"label", "g"}, {"params", json::object()}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(policy_from_json(json{{"name", "recency"}, {"label", "r"}, {"params", {{"c", -1}}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(policy_from_json(json{{"name", "rca"}, {"label", "r"}, {"params", {{"L", "sqrt"}}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(policy_from_json(json{{"name", "ucb1"}, {"label", "u"}, {"params", {{"c", 2}}}}),
                  std::invalid_argument);

  auto dup = scenario_to_json(every_policy());
  dup["policies"][1]["label"] = "r";
  CHECK_THROWS_AS(scenario_from_json(dup), std::invalid_argument);

  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), std::invalid_argument);
  const auto path = std::filesystem::temp_directory_path() / "rbl_bad_scenario.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_scenario(path), std::invalid_argument);
  std::filesystem::remove(path);
}

TEST_CASE("load scenario from file") {
  const auto path = std::filesystem::temp_directory_path() / "rbl_scenario.json";
  std::ofstream(path) << scenario_to_json(every_policy()).dump(2);
  CHECK(load_scenario(path) == every_policy());
  std::filesystem::remove(path);
}

TEST_CASE("presets") {
  CHECK(preset_names() == std::vector<std::string>{"fig7", "fig8", "fig9", "fig11", "fig12"});
  for (const auto& name : preset_names()) {
    const auto s = expand_preset(name);
    CHECK_NOTHROW(validate_scenario(s));
    CHECK(s.horizon == 32768);
    CHECK(s.runs == 1000);
    CHECK(s.checkpoints.size() == 9);
  }
  const auto f7 = expand_preset("fig7");
  const auto m7 = stationary_means(f7.bands);
  CHECK(m7[1] - m7[0] == doctest::Approx(0.5));
  CHECK(m7[0] == doctest::Approx(0.25));
  CHECK(f7.policies.size() == 1);

  const auto f8 = expand_preset("fig8");
  CHECK(f8.bands.size() == 5);
  CHECK(stationary_means(f8.bands) == std::vector<double>{0.1, 0.7, 0.5, 0.6, 0.8});

  const auto f11 = expand_preset("fig11");
  CHECK(f11.bands.size() == 10);
  const auto m11 = stationary_means(f11.bands);
  const double expected[] = {1.0 / 9, 1.0 / 8, 0.2, 2.0 / 9, 3.0 / 11, 0.3, 2.0 / 3, 0.8, 5.0 / 7, 5.0 / 6};
  for (std::size_t k = 0; k < 10; ++k) CHECK(m11[k] == doctest::Approx(expected[k]).epsilon(1e-12));

  const auto f12 = expand_preset("fig12");
  CHECK(f12.bands.size() == 5);
  CHECK(std::get<GilbertElliot>(f12.bands[3]).p10 == 0.91);
  CHECK(std::get<GilbertElliot>(f12.bands[3]).p01 == 0.97);

  CHECK_THROWS_AS(expand_preset("bogus"), std::invalid_argument);
}

TEST_CASE("fig9 PMFs hit their means and match the shipped data file") {
  const auto [a, b] = fig9_pmfs();
  for (const auto* pmf : {&a, &b}) {
    REQUIRE(pmf->support.size() == 101);
    double total = 0.0;
    for (std::size_t i = 0; i < 101; ++i) {
      CHECK(pmf->support[i] == static_cast<double>(i) / 100.0);
      CHECK(pmf->probs[i] > 0.0);
      total += pmf->probs[i];
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
  CHECK(stationary_mean(a) == doctest::Approx(0.4967).epsilon(1e-12));
  CHECK(stationary_mean(b) == doctest::Approx(0.50541).epsilon(1e-12));

  std::ifstream in(std::string(RBL_DATA_DIR) + "/fig9_pmfs.json");
  REQUIRE(in);
  const auto j = json::parse(in);
  REQUIRE(j.at("bands").size() == 2);
  CHECK(std::get<IidDiscrete>(band_from_json(j["bands"][0])) == a);
  CHECK(std::get<IidDiscrete>(band_from_json(j["bands"][1])) == b);
  CHECK(std::get<IidDiscrete>(expand_preset("fig9").bands[0]) == a);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 12345.678901234567, 1e-300, 5e-324,
                   std::numeric_limits<double>::max()}) {
    const auto s = format_double(v);
    double back = -1.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
    CHECK(s.find(',') == std::string::npos);
  }
  CHECK(format_double(12.5) == "12.5");
  CHECK(format_double(100.0) == "100");
}

TEST_CASE("CSV output") {
  const auto m = sample_series();
  std::ostringstream out;
  write_csv(m, out);
  const std::string text = out.str();
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.substr(0, text.find('\n')) == kCsvHeader);
  CHECK(text.back() == '\n');

  // Rows sorted by (policy label, n).
  std::istringstream lines(text);
  std::string line, prev_label;
  std::uint64_t prev_n = 0, rows = 0;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    ++rows;
    const auto label = line.substr(0, line.find(','));
    const auto rest = line.substr(line.find(',') + 1);
    const auto n = std::stoull(rest.substr(0, rest.find(',')));
    CHECK(label >= prev_label);
    if (label == prev_label) CHECK(n > prev_n);
    prev_label = label;
    prev_n = n;
  }
  CHECK(rows == 3 * 5);

  std::istringstream back(text);
  const auto parsed = read_csv(back);
  CHECK(parsed.policies.size() == 3);
  CHECK(parsed.policies[0].label == "alpha");
  CHECK(csv_view(m).at("zeta") == parsed.at("zeta"));
  CHECK(csv_view(m).at("alpha") == parsed.at("alpha"));
  CHECK(csv_view(m).at("mid") == parsed.at("mid"));
}

TEST_CASE("CSV parse errors") {
  std::istringstream wrong_header("policy,n\nx,1\n");
  CHECK_THROWS_AS(read_csv(wrong_header), std::invalid_argument);
  std::istringstream short_row(std::string(kCsvHeader) + "\nx,1,2\n");
  CHECK_THROWS_AS(read_csv(short_row), std::invalid_argument);
  std::istringstream bad_number(std::string(kCsvHeader) + "\nx,1,a,0,0,0,0,1\n");
  CHECK_THROWS_AS(read_csv(bad_number), std::invalid_argument);
}

TEST_CASE("counts CSV") {
  const auto m = sample_series();
  std::ostringstream out;
  write_counts_csv(m, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "policy,n,band,mean_count");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3 * 5 * 2);
  CHECK(out.str().find("alpha,128,1,") != std::string::npos);
}
