#include "mindgraph/results.hpp"

#include <chrono>
#include <ctime>

#include "mindgraph/scenario.hpp"

namespace mindgraph {

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void check_sink(std::ostream& sink, bool wrote_any) {
  if (!sink) throw EmitError("write to output failed", wrote_any);
}

}  // namespace

bool writes_full_vectors(const TrajectoryRecord& tr, const EmitOptions& options) {
  return options.force_full_vectors || tr.config.n_agents <= kFullVectorLimit;
}

nlohmann::json summary_json(const TrajectoryRecord& tr, const EmitOptions& options) {
  using nlohmann::json;
  const bool full = writes_full_vectors(tr, options);

  json config = json::object();
  for (const auto& [k, v] : scenario_settings(tr.config)) config[k] = v;
  if (std::holds_alternative<ExplicitMinds>(tr.config.minds)) {
    json records = json::array();
    const std::string text = emit_scenario(tr.config);
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto end = text.find('\n', pos);
      const std::string line = text.substr(pos, end - pos);
      if (line.rfind("rep ", 0) == 0 || line.rfind("sup ", 0) == 0) records.push_back(line);
      pos = end == std::string::npos ? text.size() : end + 1;
    }
    config["mind_records"] = records;
  }

  json samples = json::array();
  for (const Sample& s : tr.samples) {
    json row = {{"tick", s.tick}, {"mean", s.mean}, {"variance", s.polarization}, {"clusters", s.clusters}};
    if (full) row["opinions"] = s.opinions;
    if (!s.sharing.empty()) row["sharing"] = s.sharing;
    samples.push_back(std::move(row));
  }

  const Sample& last = tr.final_sample();
  json doc = {
      {"config", config},
      {"seed", tr.config.seed},
      {"converged", tr.converged},
      {"converged_tick", tr.converged ? json(tr.converged_tick) : json(nullptr)},
      {"end_tick", tr.end_tick},
      {"final", {{"tick", last.tick}, {"mean", last.mean}, {"variance", last.polarization}, {"clusters", last.clusters}}},
      {"samples", samples},
  };
  if (options.timestamp) doc["generated_at"] = utc_now();
  return doc;
}

void emit_results(const TrajectoryRecord& tr, OutputFormat format, std::ostream& sink, const EmitOptions& options) {
  if (tr.samples.empty()) throw std::invalid_argument("empty trajectory");
  if (format == OutputFormat::json) {
    sink << summary_json(tr, options).dump(2) << '\n';
    check_sink(sink, false);
    return;
  }

  const bool full = writes_full_vectors(tr, options);
  sink << "tick,mean,variance,clusters";
  if (full)
    for (std::size_t i = 0; i < tr.config.n_agents; ++i) sink << ",x_" << i;
  sink << '\n';
  check_sink(sink, false);
  for (const Sample& s : tr.samples) {
    sink << s.tick << ',' << format_double(s.mean) << ',' << format_double(s.polarization) << ',' << s.clusters;
    if (full)
      for (double x : s.opinions) sink << ',' << format_double(x);
    sink << '\n';
    check_sink(sink, true);
  }
  sink.flush();
  check_sink(sink, true);
}

}  // namespace mindgraph
