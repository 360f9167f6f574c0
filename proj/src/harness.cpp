#include "rbl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "rbl/rng.hpp"

namespace rbl {

std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon) {
  std::vector<std::uint64_t> cps;
  for (std::uint64_t s = 128; s <= horizon; s *= 2) cps.push_back(s);
  if (cps.empty() || cps.back() != horizon) cps.push_back(horizon);
  return cps;
}

void validate_scenario(const ScenarioConfig& scenario) {
  if (scenario.bands.empty()) throw std::invalid_argument("scenario has no bands");
  for (const auto& b : scenario.bands) validate(b);
  if (scenario.horizon < scenario.bands.size()) {
    throw std::invalid_argument("horizon must be at least the number of bands");
  }
  if (scenario.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (scenario.policies.empty()) throw std::invalid_argument("scenario has no policies");
  if (scenario.checkpoints.empty()) throw std::invalid_argument("scenario has no checkpoints");
  for (std::size_t i = 0; i < scenario.checkpoints.size(); ++i) {
    const auto c = scenario.checkpoints[i];
    if (c < 1 || c > scenario.horizon) throw std::invalid_argument("checkpoint outside [1, horizon]");
    if (i > 0 && c <= scenario.checkpoints[i - 1]) {
      throw std::invalid_argument("checkpoints must be strictly increasing");
    }
  }
  std::set<std::string> labels;
  for (const auto& p : scenario.policies) {
    if (p.label.empty()) throw std::invalid_argument("policy label is empty");
    if (p.label.find_first_of(",\"\r\n") != std::string::npos) {
      throw std::invalid_argument("policy label may not contain commas, quotes or newlines");
    }
    if (!labels.insert(p.label).second) throw std::invalid_argument("duplicate policy label: " + p.label);
  }
}

double weak_regret(std::span<const std::uint64_t> counts, std::span<const double> mus) {
  if (mus.empty()) throw std::invalid_argument("weak_regret: empty band list");
  if (counts.size() != mus.size()) throw std::invalid_argument("weak_regret: size mismatch");
  const double best = *std::max_element(mus.begin(), mus.end());
  double r = 0.0;
  for (std::size_t k = 0; k < mus.size(); ++k) {
    if (mus[k] != best) r += (best - mus[k]) * static_cast<double>(counts[k]);
  }
  return r;
}

RunTrace run_episode(const ScenarioConfig& scenario, const PolicyConfig& policy_config,
                     std::uint64_t run_seed, EpisodeOptions options) {
  validate_scenario(scenario);
  const std::size_t k_num = scenario.bands.size();
  const auto mus = stationary_means(scenario.bands);
  const double best = *std::max_element(mus.begin(), mus.end());
  std::vector<double> gaps(k_num);
  for (std::size_t k = 0; k < k_num; ++k) gaps[k] = mus[k] == best ? 0.0 : best - mus[k];

  Environment env(scenario.bands);
  Rng rng(run_seed);
  env.init_states(rng);
  auto policy = make_policy(policy_config, k_num);

  RunTrace trace;
  trace.checkpoints = scenario.checkpoints;
  const std::size_t n_cp = scenario.checkpoints.size();
  trace.counts.reserve(n_cp);
  trace.suboptimal.reserve(n_cp);
  trace.regret.reserve(n_cp);
  trace.regret_by_slot.reserve(n_cp);
  if (options.record_selections) trace.selections.reserve(scenario.horizon);

  std::vector<std::uint64_t> counts(k_num, 0);
  std::uint64_t suboptimal = 0;
  double regret_acc = 0.0;
  std::size_t next_cp = 0;

  for (std::uint64_t n = 1; n <= scenario.horizon; ++n) {
    env.advance(rng);
    const std::size_t band = policy->select(n);
    if (band >= k_num) throw std::logic_error("policy selected an invalid band");
    const Observation obs = env.observe(band, rng);
    policy->update(band, obs, n);

    ++counts[band];
    if (gaps[band] > 0.0) ++suboptimal;
    regret_acc += gaps[band];
    if (options.record_selections) trace.selections.push_back(static_cast<std::uint32_t>(band));

    if (next_cp < n_cp && scenario.checkpoints[next_cp] == n) {
      trace.counts.push_back(counts);
      trace.suboptimal.push_back(suboptimal);
      trace.regret.push_back(weak_regret(counts, mus));
      trace.regret_by_slot.push_back(regret_acc);
      ++next_cp;
    }
  }
  return trace;
}

const PolicySeries& MetricSeries::at(std::string_view label) const {
  for (const auto& p : policies) {
    if (p.label == label) return p;
  }
  throw std::out_of_range("no series for policy " + std::string(label));
}

namespace {

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

template <class F>
Moments moments(std::span<const RunTrace> traces, F&& value) {
  const double r = static_cast<double>(traces.size());
  double sum = 0.0;
  for (const auto& t : traces) sum += value(t);
  const double mean = sum / r;
  if (traces.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (const auto& t : traces) {
    const double d = value(t) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / (r - 1.0))};
}

}  // namespace

PolicySeries aggregate(std::string label, std::span<const RunTrace> traces) {
  if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
  PolicySeries series;
  series.label = std::move(label);
  series.runs = traces.size();
  const auto& cps = traces.front().checkpoints;
  const std::size_t k_num = traces.front().counts.empty() ? 0 : traces.front().counts.front().size();
  for (std::size_t i = 0; i < cps.size(); ++i) {
    CheckpointStats s;
    s.n = cps[i];
    const double ln_n = std::log(static_cast<double>(s.n));
    const auto sub = moments(traces, [&](const RunTrace& t) { return static_cast<double>(t.suboptimal[i]); });
    const auto sub_ln = moments(traces, [&](const RunTrace& t) { return static_cast<double>(t.suboptimal[i]) / ln_n; });
    const auto reg = moments(traces, [&](const RunTrace& t) { return t.regret[i]; });
    s.mean_subopt = sub.mean;
    s.std_subopt = sub.std;
    s.mean_subopt_over_ln_n = sub_ln.mean;
    s.std_subopt_over_ln_n = sub_ln.std;
    s.mean_regret = reg.mean;
    s.std_regret = reg.std;
    s.mean_counts.resize(k_num);
    for (std::size_t k = 0; k < k_num; ++k) {
      s.mean_counts[k] = moments(traces, [&](const RunTrace& t) { return static_cast<double>(t.counts[i][k]); }).mean;
    }
    series.points.push_back(std::move(s));
  }
  return series;
}

std::vector<RunTrace> run_policy(const ScenarioConfig& scenario, std::size_t policy_index,
                                 MonteCarloOptions options) {
  validate_scenario(scenario);
  if (policy_index >= scenario.policies.size()) throw std::out_of_range("policy index out of range");
  const auto& policy = scenario.policies[policy_index];
  std::vector<RunTrace> traces(scenario.runs);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t r = next.fetch_add(1);
      if (r >= scenario.runs) return;
      try {
        traces[r] = run_episode(scenario, policy, derive_run_seed(scenario.master_seed, policy_index, r));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(scenario.runs);
        return;
      }
    }
  };

  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return traces;
}

MetricSeries monte_carlo(const ScenarioConfig& scenario, MonteCarloOptions options) {
  validate_scenario(scenario);
  MetricSeries out;
  for (std::size_t p = 0; p < scenario.policies.size(); ++p) {
    const auto traces = run_policy(scenario, p, options);
    out.policies.push_back(aggregate(scenario.policies[p].label, traces));
  }
  return out;
}

}  // namespace rbl
