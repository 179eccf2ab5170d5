#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mindgraph/scenario.hpp"

using namespace mindgraph;

namespace {

const char* kMinimal =
    "n_agents = 2\n"
    "horizon = 10\n"
    "topology = complete\n"
    "initial_opinions = uniform(1)\n";

Diagnostic diagnose(const std::string& text, ParseOptions opts = {}) {
  try {
    (void)parse_scenario(text, opts);
  } catch (const ConfigError& e) {
    return e.diagnostic();
  }
  FAIL("expected a configuration error for:\n" << text);
  return {};
}

}  // namespace

TEST_CASE("minimal scenario takes defaults") {
  const auto c = parse_scenario(kMinimal);
  CHECK(c.n_agents == 2);
  CHECK(c.horizon == 10);
  CHECK(c.topology == Topology{CompleteTopology{}});
  CHECK(c.initial_opinions == InitialOpinions{UniformOpinions{1}});
  CHECK(c.params.eps_max == 0.5);
  CHECK(c.params.eps_min == 0.1);
  CHECK(c.params.mu == 0.5);
  CHECK(c.seed == 1);
  CHECK(c.metrics_every == 1);
  CHECK(c.topic == "p");
}

TEST_CASE("range errors name the field and the bound") {
  const auto d = diagnose(std::string(kMinimal) + "mu = 0.9\n");
  CHECK(d.code == ConfigErrc::out_of_range);
  CHECK(d.field == "mu");
  CHECK(d.line == 5);
  CHECK(d.message.find("(0, 0.5]") != std::string::npos);
  CHECK(d.to_string().rfind("E_RANGE", 0) == 0);
}

TEST_CASE("every problem class has its own code") {
  CHECK(diagnose("n_agents 2\n").code == ConfigErrc::syntax);
  CHECK(diagnose(std::string(kMinimal) + "colour = red\n").code == ConfigErrc::unknown_key);
  CHECK(diagnose(std::string(kMinimal) + "horizon = 3\n").code == ConfigErrc::duplicate_key);
  const auto missing = diagnose("n_agents = 2\ntopology = complete\ninitial_opinions = uniform(1)\n");
  CHECK(missing.code == ConfigErrc::missing_field);
  CHECK(missing.field == "horizon");
  CHECK(diagnose("n_agents = 2\nhorizon = 10\ntopology = complete\n").code == ConfigErrc::missing_field);
  CHECK(diagnose("n_agents = two\nhorizon = 10\ntopology = complete\ninitial_opinions = uniform(1)\n").code ==
        ConfigErrc::bad_value);
  CHECK(diagnose("n_agents = 2\nhorizon = 10\ntopology = star\ninitial_opinions = uniform(1)\n").code ==
        ConfigErrc::bad_value);
  CHECK(diagnose("n_agents = 3\nhorizon = 10\ntopology = complete\ninitial_opinions = list(0.1, 0.2)\n").code ==
        ConfigErrc::mismatch);
  CHECK(diagnose("n_agents = 1\nhorizon = 10\ntopology = complete\nminds = explicit\nrep 0 p ? 0.5\n").code ==
        ConfigErrc::malformed_record);
  CHECK(diagnose(std::string(kMinimal) + "rep 0 p ? 0.5 0 false\n").code == ConfigErrc::mismatch);

  ParseOptions opts;
  opts.base_dir = std::filesystem::temp_directory_path();
  CHECK(diagnose("n_agents = 2\nhorizon = 10\ntopology = file(no_such.tvg)\ninitial_opinions = uniform(1)\n", opts)
            .code == ConfigErrc::missing_file);

  const auto dir = std::filesystem::temp_directory_path() / "mindgraph_scenario_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "bad.tvg") << "tvg 2 0 10\n0 1 4 2\n";
  std::ofstream(dir / "wide.tvg") << "tvg 5 0 10\n";
  opts.base_dir = dir;
  CHECK(diagnose("n_agents = 2\nhorizon = 10\ntopology = file(bad.tvg)\ninitial_opinions = uniform(1)\n", opts).code ==
        ConfigErrc::malformed_tvg);
  CHECK(diagnose("n_agents = 2\nhorizon = 10\ntopology = file(wide.tvg)\ninitial_opinions = uniform(1)\n", opts)
            .code == ConfigErrc::mismatch);

  for (auto c : {ConfigErrc::syntax, ConfigErrc::unknown_key, ConfigErrc::duplicate_key, ConfigErrc::missing_field,
                 ConfigErrc::out_of_range, ConfigErrc::bad_value, ConfigErrc::malformed_record,
                 ConfigErrc::malformed_tvg, ConfigErrc::missing_file, ConfigErrc::mismatch})
    CHECK(code_of(c).rfind("E_", 0) == 0);
}

TEST_CASE("explicit minds and a full round trip") {
  const std::string text =
      "# supported population\n"
      "n_agents = 2\n"
      "horizon = 25\n"
      "topology = ring(1)\n"
      "minds = explicit\n"
      "topic = tax\n"
      "eps_min = 0.05\n"
      "eps_max = 0.35\n"
      "confidence_feedback = true\n"
      "resistance = max\n"
      "metrics_every = 5\n"
      "converge_tol = 1e-9\n"
      "record_sharing = yes\n"
      "rep 0 tax ? 0.2 0.3 false\n"
      "rep 0 fact 0.7 0.7 0.9 true\n"
      "rep 1 tax ? 0.8 0.1 false\n"
      "sup 0 tax fact 0.6 2 inf\n";
  const auto c = parse_scenario(text);
  const auto& m = std::get<ExplicitMinds>(c.minds);
  REQUIRE(m.reps.size() == 3);
  CHECK_FALSE(m.reps[0].rep.objective_truth.has_value());
  CHECK(m.reps[1].rep.objective_truth == 0.7);
  REQUIRE(m.supports.size() == 1);
  CHECK(m.supports[0].link == SupportLink{"tax", "fact", 0.6, 2, kForever});
  CHECK(c.params.resistance == ResistanceMode::max);
  CHECK(c.record_sharing);
  CHECK(c.topology == Topology{RingTopology{1}});

  const auto again = parse_scenario(emit_scenario(c));
  CHECK(again == c);
  CHECK(emit_scenario(again) == emit_scenario(c));

  const auto minimal = parse_scenario(kMinimal);
  CHECK(parse_scenario(emit_scenario(minimal)) == minimal);
  auto odd = minimal;
  odd.initial_opinions = ExplicitOpinions{{0.1, 1.0 / 3.0}};
  odd.topology = RandomTopology{0.123456789, 99};
  CHECK(parse_scenario(emit_scenario(odd)) == odd);
}

TEST_CASE("overrides replace file values") {
  ParseOptions opts;
  opts.overrides = {parse_override("mu=0.25"), parse_override("seed = 7")};
  const auto c = parse_scenario(kMinimal, opts);
  CHECK(c.params.mu == 0.25);
  CHECK(c.seed == 7);
  opts.overrides = {{"mu", "0.75"}};
  const auto d = diagnose(kMinimal, opts);
  CHECK(d.line == 0);
  CHECK(d.field == "mu");
  CHECK_THROWS_AS((void)parse_override("justakey"), ConfigError);
}

TEST_CASE("grid expansion") {
  const auto g = expand_grid({"mu=0.1,0.2", "topology=ring(1),random(0.5, 3)"});
  REQUIRE(g.size() == 4);
  CHECK(g[0] == std::vector<Override>{{"mu", "0.1"}, {"topology", "ring(1)"}});
  CHECK(g[1] == std::vector<Override>{{"mu", "0.1"}, {"topology", "random(0.5, 3)"}});
  CHECK(g[3] == std::vector<Override>{{"mu", "0.2"}, {"topology", "random(0.5, 3)"}});
  CHECK(expand_grid({}).size() == 1);
  CHECK_THROWS_AS((void)expand_grid({"bogus=1,2"}), ConfigError);
}

TEST_CASE("doubles print in shortest round-trip form") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(std::stod(format_double(1e-9)) == 1e-9);
}
