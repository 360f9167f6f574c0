#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rbl/scenario_io.hpp"

namespace rbl {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<const PolicySeries*> sorted_series(const MetricSeries& series) {
  std::vector<const PolicySeries*> order;
  for (const auto& p : series.policies) order.push_back(&p);
  std::stable_sort(order.begin(), order.end(),
                   [](const PolicySeries* a, const PolicySeries* b) { return a->label < b->label; });
  return order;
}

std::vector<const CheckpointStats*> sorted_points(const PolicySeries& series) {
  std::vector<const CheckpointStats*> pts;
  for (const auto& p : series.points) pts.push_back(&p);
  std::stable_sort(pts.begin(), pts.end(),
                   [](const CheckpointStats* a, const CheckpointStats* b) { return a->n < b->n; });
  return pts;
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("csv line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t parse_uint(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("csv line " + std::to_string(line) + ": bad integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

void write_csv(const MetricSeries& series, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto* p : sorted_series(series)) {
    for (const auto* pt : sorted_points(*p)) {
      out << p->label << ',' << pt->n << ',' << format_double(pt->mean_subopt) << ','
          << format_double(pt->std_subopt) << ',' << format_double(pt->mean_subopt_over_ln_n) << ','
          << format_double(pt->mean_regret) << ',' << format_double(pt->std_regret) << ',' << p->runs << '\n';
    }
  }
}

MetricSeries read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("csv: missing or wrong header");
  MetricSeries series;
  std::map<std::string, std::size_t> by_label;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      cols.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cols.size() != 8) throw std::invalid_argument("csv line " + std::to_string(line_no) + ": expected 8 columns");
    const std::string label(cols[0]);
    auto [it, inserted] = by_label.try_emplace(label, series.policies.size());
    if (inserted) series.policies.push_back(PolicySeries{label, 0, {}});
    auto& ps = series.policies[it->second];
    CheckpointStats s;
    s.n = parse_uint(cols[1], line_no);
    s.mean_subopt = parse_double(cols[2], line_no);
    s.std_subopt = parse_double(cols[3], line_no);
    s.mean_subopt_over_ln_n = parse_double(cols[4], line_no);
    s.mean_regret = parse_double(cols[5], line_no);
    s.std_regret = parse_double(cols[6], line_no);
    ps.runs = parse_uint(cols[7], line_no);
    ps.points.push_back(std::move(s));
  }
  return series;
}

void write_counts_csv(const MetricSeries& series, std::ostream& out) {
  out << "policy,n,band,mean_count\n";
  for (const auto* p : sorted_series(series)) {
    for (const auto* pt : sorted_points(*p)) {
      for (std::size_t k = 0; k < pt->mean_counts.size(); ++k) {
        out << p->label << ',' << pt->n << ',' << (k + 1) << ',' << format_double(pt->mean_counts[k]) << '\n';
      }
    }
  }
}

}  // namespace rbl
