// mindgraph: run, sweep and validate opinion-dynamics scenarios, and query
// journeys in time-varying graph files.
//
// Exit codes: 0 success, 2 validation error, 3 runtime error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mindgraph/harness.hpp"
#include "mindgraph/journey.hpp"
#include "mindgraph/results.hpp"
#include "mindgraph/scenario.hpp"
#include "mindgraph/tvg_io.hpp"

namespace fs = std::filesystem;
using namespace mindgraph;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kRuntime = 3;

struct CommonRunFlags {
  std::string scenario;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<long long> metrics_every;
  std::string format = "csv";
  bool no_timestamp = false;
  bool full_vectors = false;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonRunFlags& f) {
  cmd->add_option("--scenario", f.scenario, "Scenario file")->required();
  cmd->add_option("--out", f.out_dir, "Output directory")->required();
  cmd->add_option("--seed", f.seed, "Override the run seed");
  cmd->add_option("--metrics-every", f.metrics_every, "Override the sampling interval")->check(CLI::PositiveNumber);
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--no-timestamp", f.no_timestamp, "Omit the generation timestamp from JSON output");
  cmd->add_flag("--full-vectors", f.full_vectors, "Write opinion vectors even above 1024 agents");
  cmd->add_option("--set", f.sets, "Override a scenario field (key=value, repeatable)");
}

std::vector<Override> overrides_of(const CommonRunFlags& f) {
  std::vector<Override> out;
  for (const auto& s : f.sets) out.push_back(parse_override(s));
  if (f.seed) out.emplace_back("seed", std::to_string(*f.seed));
  if (f.metrics_every) out.emplace_back("metrics_every", std::to_string(*f.metrics_every));
  return out;
}

OutputFormat format_of(const CommonRunFlags& f) { return f.format == "json" ? OutputFormat::json : OutputFormat::csv; }

EmitOptions emit_options_of(const CommonRunFlags& f) { return {f.full_vectors, !f.no_timestamp}; }

void write_record(const TrajectoryRecord& tr, const fs::path& path, OutputFormat fmt, const EmitOptions& opts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  emit_results(tr, fmt, out, opts);
}

int cmd_run(const CommonRunFlags& f) {
  const ScenarioConfig cfg = load_scenario(f.scenario, overrides_of(f));
  const TrajectoryRecord tr = run(cfg);
  fs::create_directories(f.out_dir);
  const auto fmt = format_of(f);
  const fs::path path = fs::path(f.out_dir) / (fmt == OutputFormat::csv ? "trajectory.csv" : "summary.json");
  write_record(tr, path, fmt, emit_options_of(f));
  const Sample& last = tr.final_sample();
  std::cout << "wrote " << path.string() << " (tick " << last.tick << ", clusters " << last.clusters
            << (tr.converged ? ", converged" : "") << ")\n";
  return kOk;
}

int cmd_sweep(const CommonRunFlags& f, const std::vector<std::string>& grid) {
  const auto base = overrides_of(f);
  std::vector<std::vector<Override>> combos = expand_grid(grid);
  std::vector<ScenarioConfig> configs;
  for (const auto& combo : combos) {
    auto all = base;
    all.insert(all.end(), combo.begin(), combo.end());
    configs.push_back(load_scenario(f.scenario, all));
  }

  const auto results = run_sweep(configs, Backend::openmp, thread_cap_from_env());
  fs::create_directories(f.out_dir);
  const auto fmt = format_of(f);
  std::ofstream index(fs::path(f.out_dir) / "sweep.csv", std::ios::binary);
  index << "run,settings,end_tick,converged,mean,variance,clusters\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "run_%04zu.%s", i, fmt == OutputFormat::csv ? "csv" : "json");
    write_record(results[i], fs::path(f.out_dir) / name, fmt, emit_options_of(f));
    std::string settings;
    for (const auto& [k, v] : combos[i]) settings += (settings.empty() ? "" : ";") + k + "=" + v;
    const Sample& last = results[i].final_sample();
    index << i << ",\"" << settings << "\"," << results[i].end_tick << ',' << (results[i].converged ? 1 : 0) << ','
          << format_double(last.mean) << ',' << format_double(last.polarization) << ',' << last.clusters << '\n';
  }
  if (!index) throw std::runtime_error("cannot write sweep index");
  std::cout << "wrote " << results.size() << " runs to " << f.out_dir << '\n';
  return kOk;
}

int cmd_validate(const std::string& scenario, const std::vector<std::string>& sets) {
  std::vector<Override> overrides;
  for (const auto& s : sets) overrides.push_back(parse_override(s));
  const ScenarioConfig cfg = load_scenario(scenario, overrides);
  std::cout << "ok: " << cfg.n_agents << " agents, horizon " << cfg.horizon << '\n';
  return kOk;
}

int cmd_journeys(const std::string& tvg_path, EntityId src, EntityId dst, Tick t_start) {
  const TimeVaryingGraph g = read_tvg_file(tvg_path);
  const auto j = foremost_journey(g, src, dst, t_start);
  if (!j) {
    std::cout << "no journey from " << src << " to " << dst << " departing at or after " << t_start << '\n';
    return kOk;
  }
  std::cout << "journey " << src << " -> " << dst << " arrival " << j->arrival << " steps " << j->steps.size() << '\n';
  for (const auto& s : j->steps) std::cout << s.from << ' ' << s.to << ' ' << s.departure << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opinion dynamics over time-varying graphs"};
  app.require_subcommand(1);

  CommonRunFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario");
  add_common(run_cmd, run_flags);

  CommonRunFlags sweep_flags;
  std::vector<std::string> grid;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid (MINDGRAPH_THREADS caps parallelism)");
  add_common(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--grid", grid, "Grid axis key=v1,v2,... (repeatable)")->required();

  std::string validate_path;
  std::vector<std::string> validate_sets;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario without running it");
  validate_cmd->add_option("--scenario", validate_path, "Scenario file")->required();
  validate_cmd->add_option("--set", validate_sets, "Override a scenario field (key=value, repeatable)");

  std::string tvg_path;
  EntityId src = 0;
  EntityId dst = 0;
  Tick t_start = 0;
  auto* journeys_cmd = app.add_subcommand("journeys", "Foremost journey in a TVG file");
  journeys_cmd->add_option("--tvg", tvg_path, "TVG file")->required();
  journeys_cmd->add_option("--src", src, "Source entity")->required();
  journeys_cmd->add_option("--dst", dst, "Destination entity")->required();
  journeys_cmd->add_option("--t-start", t_start, "Earliest departure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*run_cmd) return cmd_run(run_flags);
    if (*sweep_cmd) return cmd_sweep(sweep_flags, grid);
    if (*validate_cmd) return cmd_validate(validate_path, validate_sets);
    if (*journeys_cmd) return cmd_journeys(tvg_path, src, dst, t_start);
  } catch (const ConfigError& e) {
    std::cerr << e.diagnostic().to_string() << '\n';
    return kValidation;
  } catch (const TvgFormatError& e) {
    std::cerr << "E_TVG " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
