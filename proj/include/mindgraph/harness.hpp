#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mindgraph/backend.hpp"
#include "mindgraph/dynamics.hpp"
#include "mindgraph/mind.hpp"
#include "mindgraph/tvg.hpp"

namespace mindgraph {

struct CompleteTopology {
  friend bool operator==(const CompleteTopology&, const CompleteTopology&) = default;
};
/// Agent i linked to i+1..i+k (mod n).
struct RingTopology {
  std::size_t k = 1;
  friend bool operator==(const RingTopology&, const RingTopology&) = default;
};
/// G(n, p) footprint drawn from its own seed.
struct RandomTopology {
  double p = 0.0;
  std::uint64_t seed = 0;
  friend bool operator==(const RandomTopology&, const RandomTopology&) = default;
};
/// Social TVG read from a file, relative to the scenario's directory.
struct FileTopology {
  std::string path;
  friend bool operator==(const FileTopology&, const FileTopology&) = default;
};
using Topology = std::variant<CompleteTopology, RingTopology, RandomTopology, FileTopology>;

struct NoInitialOpinions {
  friend bool operator==(const NoInitialOpinions&, const NoInitialOpinions&) = default;
};
struct UniformOpinions {
  std::uint64_t seed = 0;
  friend bool operator==(const UniformOpinions&, const UniformOpinions&) = default;
};
struct ExplicitOpinions {
  std::vector<double> values;
  friend bool operator==(const ExplicitOpinions&, const ExplicitOpinions&) = default;
};
using InitialOpinions = std::variant<NoInitialOpinions, UniformOpinions, ExplicitOpinions>;

struct RepresentationRecord {
  EntityId agent = 0;
  EpistemicRepresentation rep;
  friend bool operator==(const RepresentationRecord&, const RepresentationRecord&) = default;
};
struct SupportRecord {
  EntityId agent = 0;
  SupportLink link;
  friend bool operator==(const SupportRecord&, const SupportRecord&) = default;
};

/// Each agent holds a single unsupported opinion on the topic with d_c = 0.
struct ScalarMinds {
  friend bool operator==(const ScalarMinds&, const ScalarMinds&) = default;
};
struct ExplicitMinds {
  std::vector<RepresentationRecord> reps;
  std::vector<SupportRecord> supports;
  friend bool operator==(const ExplicitMinds&, const ExplicitMinds&) = default;
};
using MindSpec = std::variant<ScalarMinds, ExplicitMinds>;

struct ScenarioConfig {
  std::size_t n_agents = 0;
  Tick horizon = 0;
  Topology topology = CompleteTopology{};
  InitialOpinions initial_opinions = NoInitialOpinions{};
  MindSpec minds = ScalarMinds{};
  PropositionId topic = "p";
  DynamicsParams params;
  std::uint64_t seed = 1;
  Tick metrics_every = 1;
  double cluster_delta = 0.01;
  double converge_tol = 1e-6;
  std::size_t converge_window = 10;
  bool record_sharing = false;
  std::filesystem::path base_dir;  // resolves FileTopology paths

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct Sample {
  Tick tick = 0;
  std::vector<double> opinions;
  std::size_t clusters = 0;
  double polarization = 0.0;
  double mean = 0.0;
  std::vector<double> sharing;  // empty unless record_sharing

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct TrajectoryRecord {
  ScenarioConfig config;
  std::vector<Sample> samples;
  bool converged = false;
  Tick converged_tick = 0;  // first sample tick of the settled state
  Tick end_tick = 0;        // last simulated tick

  [[nodiscard]] const Sample& final_sample() const { return samples.back(); }

  friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

/// Number of groups after sorting and splitting at every adjacent gap >= delta.
/// 0 for an empty vector; throws std::invalid_argument unless delta > 0.
[[nodiscard]] std::size_t cluster_count(std::span<const double> opinions, double delta);

/// max - min of every cluster, in ascending opinion order.
[[nodiscard]] std::vector<double> cluster_spans(std::span<const double> opinions, double delta);

/// Population variance. Throws std::invalid_argument on an empty vector.
[[nodiscard]] double polarization(std::span<const double> opinions);

[[nodiscard]] double mean(std::span<const double> opinions);

/// Social graph for the config; file topologies are read from disk.
[[nodiscard]] TimeVaryingGraph build_social_graph(const ScenarioConfig& config);
[[nodiscard]] Population build_population(const ScenarioConfig& config);

/// Runs `horizon` influence steps from the initial state, sampling every
/// `metrics_every` ticks plus the last tick. Stops early once
/// `converge_window` consecutive samples have every cluster narrower than
/// `converge_tol` and no opinion moved by `converge_tol` or more since the
/// previous sample.
[[nodiscard]] TrajectoryRecord run(const ScenarioConfig& config, Backend backend = Backend::openmp);

/// Independent runs. The OpenMP backend spreads runs over at most
/// `max_threads` threads (0 = no cap) and runs each with serial kernels.
/// Results are in input order and identical across backends.
[[nodiscard]] std::vector<TrajectoryRecord> run_sweep(std::span<const ScenarioConfig> configs,
                                                      Backend backend = Backend::openmp,
                                                      int max_threads = 0);

/// MINDGRAPH_THREADS as a positive integer, else 0.
[[nodiscard]] int thread_cap_from_env();

}  // namespace mindgraph
