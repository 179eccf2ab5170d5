#include <cmath>

#include "mindgraph/journey.hpp"
#include "mindgraph/kernels.hpp"

namespace mindgraph::kernels::serial {

namespace {

bool reaches(const TimeVaryingGraph& g, EntityId from, std::span<const EntityId> targets, Interval window) {
  const EntityId sources[] = {from};
  const ArrivalTree tree(g, sources, window);
  for (EntityId t : targets)
    if (tree.reached(t)) return true;
  return false;
}

}  // namespace

std::vector<char> reaches_any(const TimeVaryingGraph& g, std::span<const EntityId> candidates,
                              std::span<const EntityId> targets, Interval window) {
  std::vector<char> out(candidates.size(), 0);
  for (std::size_t i = 0; i < candidates.size(); ++i) out[i] = reaches(g, candidates[i], targets, window);
  return out;
}

std::vector<double> tolerances(const Population& pop, Interval window, const DynamicsParams& params) {
  std::vector<double> out(pop.agents.size());
  for (std::size_t i = 0; i < pop.agents.size(); ++i) {
    const Agent& a = pop.agents[i];
    out[i] = a.holds(pop.topic) ? tolerance(a, pop.topic, window, params) : std::nan("");
  }
  return out;
}

std::vector<double> sharing_all(std::span<const double> values, double delta) {
  const std::size_t n = values.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t close = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && std::abs(values[j] - values[i]) <= delta) ++close;
    out[i] = static_cast<double>(close) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace mindgraph::kernels::serial
