#include <algorithm>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mindgraph/harness.hpp"

using namespace mindgraph;

namespace {

ScenarioConfig pair_config() {
  ScenarioConfig c;
  c.n_agents = 2;
  c.horizon = 50;
  c.initial_opinions = ExplicitOpinions{{0.4, 0.6}};
  c.params.eps_min = c.params.eps_max = 0.5;
  c.params.mu = 0.5;
  return c;
}

ScenarioConfig random_config(std::uint64_t seed) {
  ScenarioConfig c;
  c.n_agents = 60;
  c.horizon = 40;
  c.topology = RandomTopology{0.1, seed};
  c.initial_opinions = UniformOpinions{seed};
  c.params = {0.3, 0.1, 0.4, 0.05, true, ResistanceMode::mean};
  c.seed = seed;
  c.metrics_every = 3;
  c.record_sharing = true;
  return c;
}

}  // namespace

TEST_CASE("cluster counting by single linkage") {
  CHECK(cluster_count(std::vector<double>{0.3, 0.3, 0.3}, 0.05) == 1);
  CHECK(cluster_count(std::vector<double>{0.1, 0.9}, 0.05) == 2);
  CHECK(cluster_count(std::vector<double>{0.1, 0.14, 0.9}, 0.05) == 2);
  CHECK(cluster_count(std::vector<double>{0.25, 0.5}, 0.25) == 2);  // a gap equal to delta splits
  CHECK(cluster_count(std::vector<double>{}, 0.05) == 0);
  CHECK_THROWS_AS((void)cluster_count(std::vector<double>{0.1}, 0.0), std::invalid_argument);
  const auto spans = cluster_spans(std::vector<double>{0.9, 0.1, 0.14}, 0.05);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0] == doctest::Approx(0.04));
  CHECK(spans[1] == 0.0);
}

TEST_CASE("polarization is the population variance") {
  CHECK(polarization(std::vector<double>{0.7, 0.7}) == 0.0);
  CHECK(polarization(std::vector<double>{0.0, 1.0}) == doctest::Approx(0.25));
  CHECK(polarization(std::vector<double>{0.0, 0.5, 1.0}) == doctest::Approx(1.0 / 6.0));
  CHECK_THROWS_AS((void)polarization(std::vector<double>{}), std::invalid_argument);
  CHECK(mean(std::vector<double>{0.0, 0.5, 1.0}) == doctest::Approx(0.5));
}

TEST_CASE("property: cluster count ignores order") {
  Rng rng(30);
  for (int round = 0; round < 200; ++round) {
    std::vector<double> xs(1 + uniform_below(rng, 40));
    for (double& x : xs) x = uniform_unit(rng);
    const auto k = cluster_count(xs, 0.03);
    shuffle(xs, rng);
    CHECK(cluster_count(xs, 0.03) == k);
    std::reverse(xs.begin(), xs.end());
    CHECK(cluster_count(xs, 0.03) == k);
  }
}

TEST_CASE("two agents settle after one update") {
  const auto tr = run(pair_config());
  CHECK(tr.converged);
  CHECK(tr.converged_tick == 1);
  CHECK(tr.samples[0].opinions == std::vector<double>{0.4, 0.6});
  CHECK(tr.samples[1].opinions[0] == doctest::Approx(0.5));
  CHECK(tr.samples[1].opinions[1] == doctest::Approx(0.5));
  CHECK(tr.final_sample().clusters == 1);
  CHECK(tr.final_sample().polarization < 1e-10);
  CHECK(tr.end_tick == 11);
}

TEST_CASE("horizon zero keeps only the initial sample") {
  auto c = pair_config();
  c.horizon = 0;
  const auto tr = run(c);
  REQUIRE(tr.samples.size() == 1);
  CHECK(tr.samples[0].tick == 0);
  CHECK(tr.end_tick == 0);
  CHECK_FALSE(tr.converged);
}

TEST_CASE("sampling cadence includes the final tick") {
  auto c = random_config(3);
  c.horizon = 10;
  c.converge_window = 0;
  const auto tr = run(c);
  std::vector<Tick> ticks;
  for (const auto& s : tr.samples) ticks.push_back(s.tick);
  CHECK(ticks == std::vector<Tick>{0, 3, 6, 9, 10});
  for (const auto& s : tr.samples) {
    CHECK(s.opinions.size() == 60);
    CHECK(s.sharing.size() == 60);
  }
}

TEST_CASE("topologies") {
  ScenarioConfig c;
  c.n_agents = 6;
  c.horizon = 5;
  c.topology = RingTopology{2};
  const auto ring = build_social_graph(c);
  CHECK(ring.edges().size() == 12);
  CHECK(ring.presence(0, 2, 0));
  CHECK_FALSE(ring.presence(0, 3, 0));
  CHECK(ring.lifetime() == Interval{0, 5});

  c.topology = CompleteTopology{};
  CHECK(build_social_graph(c).edges().size() == 15);

  c.topology = RandomTopology{0.5, 9};
  const auto r1 = build_social_graph(c), r2 = build_social_graph(c);
  CHECK(std::ranges::equal(r1.edges(), r2.edges()));

  const auto dir = std::filesystem::temp_directory_path() / "mindgraph_harness_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "g.tvg") << "tvg 6 0 5\n0 1 0 2\n";
  c.topology = FileTopology{"g.tvg"};
  c.base_dir = dir;
  CHECK(build_social_graph(c).edges().size() == 1);
  c.n_agents = 7;
  CHECK_THROWS((void)build_social_graph(c));
}

TEST_CASE("explicit minds feed tolerance from supports") {
  ScenarioConfig c = pair_config();
  c.initial_opinions = NoInitialOpinions{};
  ExplicitMinds m;
  m.reps = {{0, {"p", std::nullopt, 0.4, 0.0, false}},
            {0, {"s", 0.5, 0.5, 1.0, true}},
            {1, {"p", std::nullopt, 0.6, 0.0, false}}};
  m.supports = {{0, {"p", "s", 1.0, 0, kForever}}};
  c.minds = m;
  c.params = {0.5, 0.1, 0.5, 0.05, false, ResistanceMode::mean};
  c.horizon = 1;
  // Agent 0 resists (tolerance 0.3 > 0.2 still passes); agent 1 is open.
  const auto tr = run(c);
  CHECK(tr.final_sample().opinions[0] == doctest::Approx(0.5));

  c.params.eps_min = 0.0;
  c.params.eps_max = 0.3;
  // Agent 0 now has tolerance 0.15 and stays put.
  const auto tr2 = run(c);
  CHECK(tr2.final_sample().opinions[0] == 0.4);
  CHECK(tr2.final_sample().opinions[1] == doctest::Approx(0.5));
}

TEST_CASE("property: runs are reproducible and bounded by the horizon") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto c = random_config(seed);
    const auto a = run(c, Backend::serial);
    const auto b = run(c, Backend::openmp);
    CHECK(a == b);
    CHECK(a.end_tick <= c.horizon);
    for (std::size_t i = 1; i < a.samples.size(); ++i) CHECK(a.samples[i].tick > a.samples[i - 1].tick);
  }
}

TEST_CASE("sweeps keep input order and match individual runs") {
  std::vector<ScenarioConfig> configs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) configs.push_back(random_config(seed));
  const auto swept = run_sweep(configs, Backend::openmp, 2);
  REQUIRE(swept.size() == configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) CHECK(swept[i] == run(configs[i], Backend::serial));
  CHECK(run_sweep(configs, Backend::serial) == swept);

  configs[2].params.mu = 2.0;
  CHECK_THROWS_AS((void)run_sweep(configs), std::invalid_argument);
}
