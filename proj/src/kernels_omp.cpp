#include <omp.h>

#include <cmath>
#include <cstdint>

#include "mindgraph/journey.hpp"
#include "mindgraph/kernels.hpp"

namespace mindgraph::kernels::omp {

namespace {

// Below these sizes the thread team costs more than the loop.
constexpr std::int64_t kMinReachItems = 16;
constexpr std::int64_t kMinAgents = 256;
constexpr std::int64_t kMinSharing = 512;

}  // namespace

int thread_count() { return omp_get_max_threads(); }

std::vector<char> reaches_any(const TimeVaryingGraph& g, std::span<const EntityId> candidates,
                              std::span<const EntityId> targets, Interval window) {
  const auto n = static_cast<std::int64_t>(candidates.size());
  std::vector<char> out(candidates.size(), 0);
#pragma omp parallel for schedule(dynamic, 4) if (n >= kMinReachItems)
  for (std::int64_t i = 0; i < n; ++i) {
    const EntityId sources[] = {candidates[i]};
    const ArrivalTree tree(g, sources, window);
    char hit = 0;
    for (EntityId t : targets) {
      if (tree.reached(t)) {
        hit = 1;
        break;
      }
    }
    out[i] = hit;
  }
  return out;
}

std::vector<double> tolerances(const Population& pop, Interval window, const DynamicsParams& params) {
  const auto n = static_cast<std::int64_t>(pop.agents.size());
  std::vector<double> out(pop.agents.size());
#pragma omp parallel for schedule(dynamic, 32) if (n >= kMinAgents)
  for (std::int64_t i = 0; i < n; ++i) {
    const Agent& a = pop.agents[i];
    out[i] = a.holds(pop.topic) ? tolerance(a, pop.topic, window, params) : std::nan("");
  }
  return out;
}

std::vector<double> sharing_all(std::span<const double> values, double delta) {
  const auto n = static_cast<std::int64_t>(values.size());
  std::vector<double> out(values.size(), 0.0);
  if (n < 2) return out;
  const double others = static_cast<double>(n - 1);
#pragma omp parallel for schedule(static) if (n >= kMinSharing)
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t close = 0;
    const double x = values[i];
    for (std::int64_t j = 0; j < n; ++j)
      if (j != i && std::abs(values[j] - x) <= delta) ++close;
    out[i] = static_cast<double>(close) / others;
  }
  return out;
}

}  // namespace mindgraph::kernels::omp
