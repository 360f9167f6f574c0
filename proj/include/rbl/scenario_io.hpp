#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rbl/env.hpp"
#include "rbl/harness.hpp"
#include "rbl/policy.hpp"

namespace rbl {

// Scenario JSON schema (see README.md for a full example):
//
//   {
//     "bands": [ {"type": "iid_uniform", "lo": 0.0, "hi": 0.5},
//                {"type": "iid_discrete", "support": [...], "probs": [...]},
//                {"type": "bernoulli", "p": 0.7},
//                {"type": "gilbert_elliot", "p01": 0.08, "p10": 0.01,
//                 "r_idle": 1.0, "r_occ": 0.0} ],
//     "horizon": 32768,
//     "runs": 1000,
//     "master_seed": 1,
//     "checkpoints": [128, 256, ...],          // optional
//     "policies": [ {"name": "recency", "label": "recency_c2",
//                    "params": {"c": 2.0}}, ... ]
//   }
//
// Every field except "checkpoints" is required, including each policy's
// label and params. Policy params: recency / recency_regen {"c"}, ucb1 {},
// klucb {"c"}, dsee {"D": "ln" | number, "mean_source": "explore_only" |
// "all"}, rca {"L": "ln" | number}. Unknown fields are rejected. Parse
// errors throw std::invalid_argument.

nlohmann::json band_to_json(const BandSpec& band);
BandSpec band_from_json(const nlohmann::json& j);

nlohmann::json policy_to_json(const PolicyConfig& policy);
PolicyConfig policy_from_json(const nlohmann::json& j);

nlohmann::json scenario_to_json(const ScenarioConfig& scenario);
ScenarioConfig scenario_from_json(const nlohmann::json& j);

ScenarioConfig load_scenario(const std::filesystem::path& path);

// ---- presets ----------------------------------------------------------------

std::vector<std::string> preset_names();

/// fig7, fig8, fig9, fig11 or fig12. Throws std::invalid_argument otherwise.
ScenarioConfig expand_preset(std::string_view name);

/// The two reward PMFs of the fig9 preset on the grid {0, 0.01, ..., 1},
/// with means 0.4967 and 0.50541 (see data/fig9_pmfs.json).
std::pair<IidDiscrete, IidDiscrete> fig9_pmfs();

// ---- CSV --------------------------------------------------------------------

inline constexpr std::string_view kCsvHeader =
    "policy,n,mean_subopt,std_subopt,mean_subopt_over_ln_n,mean_regret,std_regret,runs";

/// One row per (policy, checkpoint), sorted by policy label then n. LF line
/// endings; doubles in shortest round-trip form.
void write_csv(const MetricSeries& series, std::ostream& out);

/// Inverse of write_csv. Per-band counts are not part of the schema and come
/// back empty. Throws std::invalid_argument on malformed input.
MetricSeries read_csv(std::istream& in);

/// Long-format per-band mean counts: policy,n,band,mean_count (band 1-based).
void write_counts_csv(const MetricSeries& series, std::ostream& out);

std::string format_double(double v);

}  // namespace rbl
