#include "mindgraph/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <stdexcept>

#include "mindgraph/kernels.hpp"
#include "mindgraph/tvg_io.hpp"

namespace mindgraph {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> sorted_copy(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return s;
}

void check_delta(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("cluster delta must be positive");
}

}  // namespace

std::size_t cluster_count(std::span<const double> opinions, double delta) {
  check_delta(delta);
  if (opinions.empty()) return 0;
  const auto s = sorted_copy(opinions);
  std::size_t groups = 1;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] - s[i - 1] >= delta) ++groups;
  return groups;
}

std::vector<double> cluster_spans(std::span<const double> opinions, double delta) {
  check_delta(delta);
  std::vector<double> spans;
  if (opinions.empty()) return spans;
  const auto s = sorted_copy(opinions);
  double start = s[0];
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] - s[i - 1] >= delta) {
      spans.push_back(s[i - 1] - start);
      start = s[i];
    }
  }
  spans.push_back(s.back() - start);
  return spans;
}

double mean(std::span<const double> opinions) {
  if (opinions.empty()) throw std::invalid_argument("mean of an empty vector");
  double sum = 0.0;
  for (double x : opinions) sum += x;
  return sum / static_cast<double>(opinions.size());
}

double polarization(std::span<const double> opinions) {
  if (opinions.empty()) throw std::invalid_argument("polarization of an empty vector");
  const double m = mean(opinions);
  double ss = 0.0;
  for (double x : opinions) ss += (x - m) * (x - m);
  return ss / static_cast<double>(opinions.size());
}

TimeVaryingGraph build_social_graph(const ScenarioConfig& cfg) {
  const auto n = cfg.n_agents;
  const Interval lifetime{0, cfg.horizon};
  std::vector<Interaction> links;
  auto link = [&](std::size_t a, std::size_t b) {
    if (cfg.horizon > 0) links.push_back({static_cast<EntityId>(a), static_cast<EntityId>(b), 0, cfg.horizon, {}});
  };

  return std::visit(
      overloaded{
          [&](const CompleteTopology&) {
            for (std::size_t i = 0; i < n; ++i)
              for (std::size_t j = i + 1; j < n; ++j) link(i, j);
            return TimeVaryingGraph(n, lifetime, std::move(links));
          },
          [&](const RingTopology& ring) {
            std::map<Edge, bool> seen;
            for (std::size_t i = 0; i < n; ++i) {
              for (std::size_t d = 1; d <= ring.k; ++d) {
                const std::size_t j = (i + d) % n;
                if (j == i) continue;
                if (seen.emplace(Edge::between(static_cast<EntityId>(i), static_cast<EntityId>(j)), true).second)
                  link(i, j);
              }
            }
            return TimeVaryingGraph(n, lifetime, std::move(links));
          },
          [&](const RandomTopology& rnd) {
            Rng rng(rnd.seed);
            for (std::size_t i = 0; i < n; ++i)
              for (std::size_t j = i + 1; j < n; ++j)
                if (uniform_unit(rng) < rnd.p) link(i, j);
            return TimeVaryingGraph(n, lifetime, std::move(links));
          },
          [&](const FileTopology& file) {
            const auto path = cfg.base_dir.empty() ? std::filesystem::path(file.path) : cfg.base_dir / file.path;
            TimeVaryingGraph g = read_tvg_file(path.string());
            if (g.entity_count() != n)
              throw std::invalid_argument("social graph has " + std::to_string(g.entity_count()) +
                                          " entities, expected " + std::to_string(n));
            return g;
          },
      },
      cfg.topology);
}

Population build_population(const ScenarioConfig& cfg) {
  const std::size_t n = cfg.n_agents;
  std::vector<double> initial;
  if (const auto* u = std::get_if<UniformOpinions>(&cfg.initial_opinions)) {
    Rng rng(u->seed);
    for (std::size_t i = 0; i < n; ++i) initial.push_back(uniform_unit(rng));
  } else if (const auto* e = std::get_if<ExplicitOpinions>(&cfg.initial_opinions)) {
    initial = e->values;
    if (initial.size() != n) throw std::invalid_argument("initial opinion list does not match n_agents");
  }

  Population pop;
  pop.topic = cfg.topic;
  pop.agents.resize(n);
  if (std::holds_alternative<ScalarMinds>(cfg.minds)) {
    if (initial.empty() && n > 0) throw std::invalid_argument("scalar minds need initial opinions");
    for (std::size_t i = 0; i < n; ++i) {
      pop.agents[i].id = static_cast<EntityId>(i);
      pop.agents[i].mind = AgentMind({EpistemicRepresentation{cfg.topic, std::nullopt, initial[i], 0.0, false}});
    }
  } else {
    const auto& records = std::get<ExplicitMinds>(cfg.minds);
    std::vector<std::vector<EpistemicRepresentation>> reps(n);
    std::vector<std::vector<SupportLink>> sups(n);
    for (const auto& r : records.reps) reps.at(r.agent).push_back(r.rep);
    for (const auto& s : records.supports) sups.at(s.agent).push_back(s.link);
    for (std::size_t i = 0; i < n; ++i) {
      pop.agents[i].id = static_cast<EntityId>(i);
      pop.agents[i].mind = AgentMind(std::move(reps[i]), std::move(sups[i]));
      if (!pop.agents[i].mind.holds(cfg.topic))
        throw std::invalid_argument("agent " + std::to_string(i) + " does not hold the topic");
      if (!initial.empty()) pop.agents[i].mind.set_perceived_truth(cfg.topic, initial[i]);
    }
  }
  pop.social = build_social_graph(cfg);
  pop.check();
  return pop;
}

namespace {

Sample take_sample(const Population& pop, const ScenarioConfig& cfg, Tick tick, Backend backend) {
  Sample s;
  s.tick = tick;
  s.opinions = pop.opinions();
  if (!s.opinions.empty()) {
    s.clusters = cluster_count(s.opinions, cfg.cluster_delta);
    s.polarization = polarization(s.opinions);
    s.mean = mean(s.opinions);
  }
  if (cfg.record_sharing) s.sharing = kernels::sharing_all(backend, s.opinions, cfg.params.delta_share);
  return s;
}

bool settled(const Sample& cur, const Sample& prev, const ScenarioConfig& cfg) {
  for (std::size_t i = 0; i < cur.opinions.size(); ++i)
    if (std::abs(cur.opinions[i] - prev.opinions[i]) >= cfg.converge_tol) return false;
  const auto spans = cluster_spans(cur.opinions, cfg.cluster_delta);
  return std::all_of(spans.begin(), spans.end(), [&](double w) { return w < cfg.converge_tol; });
}

}  // namespace

TrajectoryRecord run(const ScenarioConfig& cfg, Backend backend) {
  validate(cfg.params);
  if (cfg.metrics_every <= 0) throw std::invalid_argument("metrics_every must be positive");
  if (cfg.horizon < 0) throw std::invalid_argument("horizon must be nonnegative");

  TrajectoryRecord rec;
  rec.config = cfg;
  Population pop = build_population(cfg);
  Rng rng(cfg.seed);

  rec.samples.push_back(take_sample(pop, cfg, 0, backend));
  std::size_t streak = 0;
  for (Tick t = 0; t < cfg.horizon; ++t) {
    if (pop.social.lifetime().contains(t)) influence_step(pop, t, cfg.params, rng, backend);
    const Tick tick = t + 1;
    rec.end_tick = tick;
    if (tick % cfg.metrics_every != 0 && tick != cfg.horizon) continue;

    rec.samples.push_back(take_sample(pop, cfg, tick, backend));
    const auto& prev = rec.samples[rec.samples.size() - 2];
    streak = settled(rec.samples.back(), prev, cfg) ? streak + 1 : 0;
    if (streak == 1) rec.converged_tick = prev.tick;
    if (cfg.converge_window > 0 && streak >= cfg.converge_window) {
      rec.converged = true;
      break;
    }
  }
  return rec;
}

std::vector<TrajectoryRecord> run_sweep(std::span<const ScenarioConfig> configs, Backend backend, int max_threads) {
  std::vector<TrajectoryRecord> out(configs.size());
  if (backend == Backend::serial) {
    for (std::size_t i = 0; i < configs.size(); ++i) out[i] = run(configs[i], Backend::serial);
    return out;
  }

  const auto n = static_cast<std::int64_t>(configs.size());
  int threads = omp_get_max_threads();
  if (max_threads > 0) threads = std::min(threads, max_threads);
  threads = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(threads, n)));
  std::vector<std::exception_ptr> errors(configs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[i] = run(configs[i], Backend::serial);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

int thread_cap_from_env() {
  const char* v = std::getenv("MINDGRAPH_THREADS");
  if (!v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  return (end != v && *end == '\0' && n > 0) ? static_cast<int>(n) : 0;
}

}  // namespace mindgraph
