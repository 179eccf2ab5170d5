// Serial reference vs OpenMP kernels, wall-clock.
//
//   ./bench_kernels [agents=4000] [reps=5]
//
// OMP_NUM_THREADS controls the OpenMP team size.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "mindgraph/harness.hpp"
#include "mindgraph/journey.hpp"
#include "mindgraph/kernels.hpp"

using namespace mindgraph;

namespace {

double best_ms(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double omp_ms, bool same) {
  std::printf("%-22s serial %9.2f ms   openmp %9.2f ms   speedup %5.2fx   %s\n", name, serial_ms, omp_ms,
              serial_ms / omp_ms, same ? "match" : "MISMATCH");
}

// Each agent holds the topic plus a chain of supporters with staggered links.
Population supported_population(std::size_t n, Rng& rng) {
  Population pop;
  pop.agents.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<EpistemicRepresentation> reps{{"p", std::nullopt, uniform_unit(rng), uniform_unit(rng), false}};
    std::vector<SupportLink> links;
    for (int k = 0; k < 6; ++k) {
      const std::string name = "s" + std::to_string(k);
      reps.push_back({name, 0.5, uniform_unit(rng), uniform_unit(rng), true});
      const Tick t1 = static_cast<Tick>(uniform_below(rng, 20));
      links.push_back({k == 0 ? "p" : "s" + std::to_string(k - 1), name, 0.5 + 0.5 * uniform_unit(rng), t1, t1 + 30});
    }
    pop.agents[i].id = static_cast<EntityId>(i);
    pop.agents[i].mind = AgentMind(std::move(reps), std::move(links));
  }
  pop.social = TimeVaryingGraph(n, {0, 100});
  return pop;
}

TimeVaryingGraph random_tvg(std::size_t n, std::size_t m, Tick horizon, Rng& rng) {
  std::vector<Interaction> cs;
  while (cs.size() < m) {
    const auto u = static_cast<EntityId>(uniform_below(rng, n));
    const auto v = static_cast<EntityId>(uniform_below(rng, n));
    if (u == v) continue;
    const Tick t1 = static_cast<Tick>(uniform_below(rng, static_cast<std::uint64_t>(horizon - 1)));
    cs.push_back({u, v, t1, t1 + 1 + static_cast<Tick>(uniform_below(rng, 5)), {}});
  }
  return TimeVaryingGraph(n, {0, horizon}, std::move(cs));
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t agents = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 4000;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
  std::printf("openmp threads: %d, agents: %zu\n", kernels::omp::thread_count(), agents);
  Rng rng(2024);

  {
    std::vector<double> values(agents * 4);
    for (double& v : values) v = uniform_unit(rng);
    std::vector<double> a, b;
    const double s = best_ms(reps, [&] { a = kernels::serial::sharing_all(values, 0.05); });
    const double o = best_ms(reps, [&] { b = kernels::omp::sharing_all(values, 0.05); });
    report("sharing_all", s, o, a == b);
  }
  {
    const Population pop = supported_population(agents, rng);
    const DynamicsParams params{0.5, 0.1, 0.5, 0.05, false, ResistanceMode::mean};
    std::vector<double> a, b;
    const double s = best_ms(reps, [&] { a = kernels::serial::tolerances(pop, {0, 40}, params); });
    const double o = best_ms(reps, [&] { b = kernels::omp::tolerances(pop, {0, 40}, params); });
    report("tolerances", s, o, a == b);
  }
  {
    const TimeVaryingGraph g = random_tvg(agents / 4, agents * 2, 200, rng);
    std::vector<EntityId> candidates;
    for (EntityId v = 1; v < g.entity_count(); ++v) candidates.push_back(v);
    const EntityId targets[] = {0};
    std::vector<char> a, b;
    const double s = best_ms(reps, [&] { a = kernels::serial::reaches_any(g, candidates, targets, {0, 200}); });
    const double o = best_ms(reps, [&] { b = kernels::omp::reaches_any(g, candidates, targets, {0, 200}); });
    report("reaches_any", s, o, a == b);
  }
  {
    std::vector<ScenarioConfig> configs;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      ScenarioConfig c;
      c.n_agents = 200;
      c.horizon = 50;
      c.topology = RandomTopology{0.05, seed};
      c.initial_opinions = UniformOpinions{seed};
      c.params.eps_min = c.params.eps_max = 0.2;
      c.seed = seed;
      configs.push_back(c);
    }
    std::vector<TrajectoryRecord> a, b;
    const double s = best_ms(1, [&] { a = run_sweep(configs, Backend::serial); });
    const double o = best_ms(1, [&] { b = run_sweep(configs, Backend::openmp); });
    report("run_sweep (8 runs)", s, o, a == b);
  }
  return 0;
}
