#include "rbl/scenario_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace rbl {
namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void expect_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!j.is_object()) throw std::invalid_argument(std::string(where) + ": expected an object");
  const std::set<std::string_view> ok(allowed);
  for (const auto& [key, _] : j.items()) {
    if (!ok.contains(key)) throw std::invalid_argument(std::string(where) + ": unknown field '" + key + "'");
  }
}

template <class T>
T field(const json& j, const char* key, std::string_view where) {
  if (!j.contains(key)) throw std::invalid_argument(std::string(where) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(where) + ": bad field '" + key + "': " + e.what());
  }
}

json schedule_to_json(const Schedule& s) {
  if (s.logarithmic) return "ln";
  return s.constant;
}

Schedule schedule_from_json(const json& params, const char* key, std::string_view where) {
  if (!params.contains(key)) throw std::invalid_argument(std::string(where) + ": missing field '" + key + "'");
  const json& j = params.at(key);
  if (j.is_string() && j.get<std::string>() == "ln") return Schedule::log();
  if (j.is_number() && j.get<double>() > 0.0) return Schedule::fixed(j.get<double>());
  throw std::invalid_argument(std::string(where) + ": " + key + " must be \"ln\" or a positive number");
}

}  // namespace

json band_to_json(const BandSpec& band) {
  return std::visit(overloaded{
                        [](const IidUniform& s) -> json {
                          return {{"type", "iid_uniform"}, {"lo", s.lo}, {"hi", s.hi}};
                        },
                        [](const IidDiscrete& s) -> json {
                          return {{"type", "iid_discrete"}, {"support", s.support}, {"probs", s.probs}};
                        },
                        [](const Bernoulli& s) -> json { return {{"type", "bernoulli"}, {"p", s.p}}; },
                        [](const GilbertElliot& s) -> json {
                          return {{"type", "gilbert_elliot"}, {"p01", s.p01}, {"p10", s.p10},
                                  {"r_idle", s.r_idle}, {"r_occ", s.r_occ}};
                        },
                    },
                    band);
}

BandSpec band_from_json(const json& j) {
  const auto type = field<std::string>(j, "type", "band");
  BandSpec band;
  if (type == "iid_uniform") {
    expect_keys(j, {"type", "lo", "hi"}, "iid_uniform");
    band = IidUniform{field<double>(j, "lo", type), field<double>(j, "hi", type)};
  } else if (type == "iid_discrete") {
    expect_keys(j, {"type", "support", "probs"}, "iid_discrete");
    band = IidDiscrete{field<std::vector<double>>(j, "support", type),
                       field<std::vector<double>>(j, "probs", type)};
  } else if (type == "bernoulli") {
    expect_keys(j, {"type", "p"}, "bernoulli");
    band = Bernoulli{field<double>(j, "p", type)};
  } else if (type == "gilbert_elliot") {
    expect_keys(j, {"type", "p01", "p10", "r_idle", "r_occ"}, "gilbert_elliot");
    band = GilbertElliot{field<double>(j, "p01", type), field<double>(j, "p10", type),
                         field<double>(j, "r_idle", type), field<double>(j, "r_occ", type)};
  } else {
    throw std::invalid_argument("unknown band type '" + type + "'");
  }
  validate(band);
  return band;
}

json policy_to_json(const PolicyConfig& policy) {
  json params = std::visit(
      overloaded{
          [](const RecencyParams& p) -> json { return {{"c", p.c}}; },
          [](const RecencyRegenParams& p) -> json { return {{"c", p.c}}; },
          [](const Ucb1Params&) -> json { return json::object(); },
          [](const KlUcbParams& p) -> json { return {{"c", p.c_loglog}}; },
          [](const DseeParams& p) -> json {
            return {{"D", schedule_to_json(p.d)},
                    {"mean_source", p.mean_source == DseeMeanSource::ExploreOnly ? "explore_only" : "all"}};
          },
          [](const RcaParams& p) -> json { return {{"L", schedule_to_json(p.l)}}; },
      },
      policy.params);
  return {{"name", std::string(policy_name(policy.params))}, {"label", policy.label}, {"params", params}};
}

PolicyConfig policy_from_json(const json& j) {
  expect_keys(j, {"name", "label", "params"}, "policy");
  const auto name = field<std::string>(j, "name", "policy");
  const std::string where = "policy " + name;
  if (!j.contains("params")) throw std::invalid_argument(where + ": missing field 'params'");
  const json& params = j.at("params");
  PolicyConfig cfg;
  cfg.label = field<std::string>(j, "label", where);

  if (name == "recency" || name == "recency_regen") {
    expect_keys(params, {"c"}, where);
    const double c = field<double>(params, "c", where);
    if (!(c > 0.0)) throw std::invalid_argument(where + ": c must be > 0");
    if (name == "recency") {
      cfg.params = RecencyParams{c};
    } else {
      cfg.params = RecencyRegenParams{c};
    }
  } else if (name == "ucb1") {
    expect_keys(params, {}, where);
    cfg.params = Ucb1Params{};
  } else if (name == "klucb") {
    expect_keys(params, {"c"}, where);
    const double c = field<double>(params, "c", where);
    if (!(c >= 0.0)) throw std::invalid_argument(where + ": c must be >= 0");
    cfg.params = KlUcbParams{c};
  } else if (name == "dsee") {
    expect_keys(params, {"D", "mean_source"}, where);
    DseeParams p;
    p.d = schedule_from_json(params, "D", where);
    const auto src = field<std::string>(params, "mean_source", where);
    if (src == "explore_only") {
      p.mean_source = DseeMeanSource::ExploreOnly;
    } else if (src == "all") {
      p.mean_source = DseeMeanSource::All;
    } else {
      throw std::invalid_argument(where + ": mean_source must be explore_only or all");
    }
    cfg.params = p;
  } else if (name == "rca") {
    expect_keys(params, {"L"}, where);
    RcaParams p;
    p.l = schedule_from_json(params, "L", where);
    cfg.params = p;
  } else {
    throw std::invalid_argument("unknown policy '" + name + "'");
  }
  return cfg;
}

json scenario_to_json(const ScenarioConfig& scenario) {
  json bands = json::array();
  for (const auto& b : scenario.bands) bands.push_back(band_to_json(b));
  json policies = json::array();
  for (const auto& p : scenario.policies) policies.push_back(policy_to_json(p));
  return {{"bands", bands},
          {"horizon", scenario.horizon},
          {"runs", scenario.runs},
          {"master_seed", scenario.master_seed},
          {"checkpoints", scenario.checkpoints},
          {"policies", policies}};
}

ScenarioConfig scenario_from_json(const json& j) {
  expect_keys(j, {"bands", "horizon", "runs", "master_seed", "checkpoints", "policies"}, "scenario");
  ScenarioConfig s;
  if (!j.contains("bands") || !j.at("bands").is_array()) throw std::invalid_argument("scenario: bands must be an array");
  for (const auto& b : j.at("bands")) s.bands.push_back(band_from_json(b));
  s.horizon = field<std::uint64_t>(j, "horizon", "scenario");
  s.runs = field<std::uint64_t>(j, "runs", "scenario");
  s.master_seed = field<std::uint64_t>(j, "master_seed", "scenario");
  if (!j.contains("policies") || !j.at("policies").is_array()) {
    throw std::invalid_argument("scenario: policies must be an array");
  }
  for (const auto& p : j.at("policies")) s.policies.push_back(policy_from_json(p));
  s.checkpoints = j.contains("checkpoints") ? field<std::vector<std::uint64_t>>(j, "checkpoints", "scenario")
                                            : default_checkpoints(s.horizon);
  validate_scenario(s);
  return s;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("scenario file " + path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace rbl
