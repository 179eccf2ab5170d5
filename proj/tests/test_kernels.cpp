#include "doctest.h"
#include "mindgraph/kernels.hpp"
#include "oracles.hpp"

using namespace mindgraph;

TEST_CASE("sharing kernels agree and match the per-agent definition") {
  Rng rng(20);
  for (std::size_t n : {0u, 1u, 2u, 37u, 700u}) {
    std::vector<double> xs(n);
    for (double& x : xs) x = uniform_below(rng, 4) == 0 ? 0.5 : uniform_unit(rng);
    const auto s = kernels::serial::sharing_all(xs, 0.05);
    CHECK(s == kernels::omp::sharing_all(xs, 0.05));
    if (n == 37) {
      Population pop;
      for (std::size_t i = 0; i < n; ++i)
        pop.agents.push_back({static_cast<EntityId>(i), AgentMind({{"p", std::nullopt, xs[i], 0.0, false}})});
      pop.social = TimeVaryingGraph(n, {0, 1});
      for (std::size_t i = 0; i < n; ++i) CHECK(s[i] == sharing(pop, pop.agents[i], "p", 0.05));
    }
  }
}

TEST_CASE("tolerance kernels agree and mark non-holders") {
  Rng rng(21);
  Population pop;
  for (EntityId i = 0; i < 600; ++i) {
    std::vector<EpistemicRepresentation> reps{{"s", 0.5, 0.5, uniform_unit(rng), true}};
    if (i % 7 != 0) reps.push_back({"p", std::nullopt, uniform_unit(rng), uniform_unit(rng), false});
    std::vector<SupportLink> links;
    if (i % 7 != 0) links.push_back({"p", "s", 1.0, static_cast<Tick>(i % 5), 10});
    pop.agents.push_back({i, AgentMind(std::move(reps), std::move(links))});
  }
  pop.social = TimeVaryingGraph(600, {0, 10});
  const DynamicsParams params{};
  const auto s = kernels::serial::tolerances(pop, {0, 3}, params);
  const auto o = kernels::omp::tolerances(pop, {0, 3}, params);
  REQUIRE(s.size() == o.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i % 7 == 0) {
      CHECK(std::isnan(s[i]));
      CHECK(std::isnan(o[i]));
    } else {
      CHECK(s[i] == o[i]);
      CHECK(s[i] == tolerance(pop.agents[i], "p", {0, 3}, params));
    }
  }
}

TEST_CASE("reachability kernels agree with the walk oracle") {
  Rng rng(22);
  for (int round = 0; round < 100; ++round) {
    const auto g = oracle::random_tvg(rng, 8, 20, 10);
    std::vector<EntityId> candidates;
    for (EntityId v = 0; v < g.entity_count(); ++v) candidates.push_back(v);
    const EntityId targets[] = {0};
    const auto s = kernels::serial::reaches_any(g, candidates, targets, {0, 11});
    CHECK(s == kernels::omp::reaches_any(g, candidates, targets, {0, 11}));
    for (EntityId v : candidates) CHECK(bool(s[v]) == oracle::foremost_arrival(g, v, 0, {0, 11}).has_value());
  }
  CHECK(kernels::omp::thread_count() >= 1);
}
