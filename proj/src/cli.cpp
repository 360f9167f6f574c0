#include "rbl/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "rbl/scenario_io.hpp"
#include "rbl/validation.hpp"

namespace rbl {
namespace {

struct RunFlags {
  std::string preset;
  std::string config;
  std::string policies;
  std::uint64_t runs = 0;
  std::uint64_t horizon = 0;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string out;
  std::string counts_out;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::uint64_t parse_seed_env(const char* text) {
  std::uint64_t v = 0;
  const std::string_view s(text);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("RBL_SEED must be a non-negative integer, got '" + std::string(s) + "'");
  }
  return v;
}

ScenarioConfig build_scenario(const RunFlags& f, const CLI::App& run) {
  ScenarioConfig s = f.preset.empty() ? load_scenario(f.config) : expand_preset(f.preset);
  if (!f.policies.empty()) {
    const auto wanted = split_list(f.policies);
    std::vector<PolicyConfig> kept;
    for (const auto& label : wanted) {
      bool found = false;
      for (const auto& p : s.policies) {
        if (p.label == label) {
          kept.push_back(p);
          found = true;
          break;
        }
      }
      if (!found) throw std::invalid_argument("scenario has no policy labelled '" + label + "'");
    }
    s.policies = std::move(kept);
  }
  if (run.count("--runs") > 0) s.runs = f.runs;
  if (run.count("--horizon") > 0) {
    s.horizon = f.horizon;
    s.checkpoints = default_checkpoints(s.horizon);
  }
  if (run.count("--seed") > 0) s.master_seed = f.seed;
  if (const char* env = std::getenv("RBL_SEED"); env != nullptr) s.master_seed = parse_seed_env(env);
  validate_scenario(s);
  return s;
}

template <class Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

int do_run(const RunFlags& f, const CLI::App& run, std::ostream& out, std::ostream& err) {
  const ScenarioConfig s = build_scenario(f, run);
  MonteCarloOptions opts;
  opts.workers = f.workers > 0 ? f.workers : std::max(1u, std::thread::hardware_concurrency());
  const MetricSeries series = monte_carlo(s, opts);
  emit(f.out, out, [&](std::ostream& o) { write_csv(series, o); });
  if (!f.counts_out.empty()) emit(f.counts_out, out, [&](std::ostream& o) { write_counts_csv(series, o); });
  if (!f.out.empty() && f.out != "-") {
    err << "wrote " << series.policies.size() * s.checkpoints.size() << " rows to " << f.out << '\n';
  }
  return 0;
}

int do_validate(std::ostream& out) {
  bool all = true;
  for (const auto& r : run_validation_suites()) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " cases=" << r.cases << " violations=" << r.violations;
    if (!r.detail.empty()) out << " (" << r.detail << ')';
    out << '\n';
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

int do_presets(const std::string& name, std::ostream& out) {
  const auto names = name.empty() ? preset_names() : std::vector<std::string>{name};
  nlohmann::json j = nlohmann::json::object();
  for (const auto& n : names) j[n] = scenario_to_json(expand_preset(n));
  out << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recency-based spectrum sensing simulator", "rbl"};
  app.require_subcommand(1);

  RunFlags f;
  auto* run = app.add_subcommand("run", "Monte Carlo simulation of a scenario, CSV output");
  auto* preset_opt = run->add_option("--preset", f.preset, "Preset scenario name");
  auto* config_opt = run->add_option("--config", f.config, "Scenario JSON file");
  preset_opt->excludes(config_opt);
  run->add_option("--policies", f.policies, "Comma-separated policy labels to keep");
  run->add_option("--runs", f.runs, "Independent runs per policy")->check(CLI::PositiveNumber);
  run->add_option("--horizon", f.horizon, "Slots per run (checkpoints reset to defaults)")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", f.seed, "Master seed (RBL_SEED overrides)");
  run->add_option("--workers", f.workers, "Worker threads (default: hardware concurrency)");
  run->add_option("--out", f.out, "CSV output path (default: stdout)");
  run->add_option("--counts-out", f.counts_out, "Per-band mean counts CSV");

  auto* validate = app.add_subcommand("validate", "Run the analysis property suites");

  std::string preset_name;
  auto* presets = app.add_subcommand("presets", "Print expanded preset scenarios as JSON");
  presets->add_option("--name", preset_name, "Single preset to print");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (run->parsed()) {
      if (f.preset.empty() && f.config.empty()) {
        err << "run: one of --preset or --config is required\n";
        return 2;
      }
      return do_run(f, *run, out, err);
    }
    if (validate->parsed()) return do_validate(out);
    if (presets->parsed()) return do_presets(preset_name, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace rbl
