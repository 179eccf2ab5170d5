#include <sstream>
#include <streambuf>

#include "doctest.h"
#include "mindgraph/results.hpp"

using namespace mindgraph;

namespace {

// Accepts `capacity` characters, then refuses everything.
class LimitedBuf : public std::streambuf {
 public:
  explicit LimitedBuf(std::size_t capacity) : left_(capacity) {}

 protected:
  int_type overflow(int_type ch) override {
    if (left_ == 0 || traits_type::eq_int_type(ch, traits_type::eof())) return traits_type::eof();
    --left_;
    return ch;
  }

 private:
  std::size_t left_;
};

ScenarioConfig pair_config(Tick horizon) {
  ScenarioConfig c;
  c.n_agents = 2;
  c.horizon = horizon;
  c.initial_opinions = ExplicitOpinions{{0.4, 0.6}};
  c.params.eps_min = c.params.eps_max = 0.5;
  return c;
}

}  // namespace

TEST_CASE("a one-sample trajectory is a two-line CSV") {
  auto c = pair_config(0);
  c.initial_opinions = ExplicitOpinions{{0.25, 0.75}};
  std::ostringstream out;
  emit_results(run(c), OutputFormat::csv, out);
  CHECK(out.str() == "tick,mean,variance,clusters,x_0,x_1\n0,0.5,0.0625,2,0.25,0.75\n");
}

TEST_CASE("vectors are dropped above the size limit unless forced") {
  ScenarioConfig c;
  c.n_agents = kFullVectorLimit + 1;
  c.initial_opinions = UniformOpinions{1};
  const auto tr = run(c);
  std::ostringstream small, big;
  emit_results(tr, OutputFormat::csv, small);
  CHECK(small.str().rfind("tick,mean,variance,clusters\n", 0) == 0);
  emit_results(tr, OutputFormat::csv, big, {true, true});
  CHECK(big.str().find(",x_1024") != std::string::npos);
  CHECK_FALSE(summary_json(tr).at("samples")[0].contains("opinions"));
}

TEST_CASE("JSON summary reparses to the record's fields") {
  auto c = pair_config(30);
  c.record_sharing = true;
  const auto tr = run(c);
  std::ostringstream out;
  emit_results(tr, OutputFormat::json, out, {false, false});
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc.at("seed") == tr.config.seed);
  CHECK(doc.at("converged") == tr.converged);
  CHECK(doc.at("converged_tick") == tr.converged_tick);
  CHECK(doc.at("end_tick") == tr.end_tick);
  CHECK(doc.at("final").at("clusters") == tr.final_sample().clusters);
  CHECK(doc.at("final").at("mean").get<double>() == tr.final_sample().mean);
  CHECK(doc.at("final").at("variance").get<double>() == tr.final_sample().polarization);
  REQUIRE(doc.at("samples").size() == tr.samples.size());
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    CHECK(doc["samples"][i].at("tick") == tr.samples[i].tick);
    CHECK(doc["samples"][i].at("opinions").get<std::vector<double>>() == tr.samples[i].opinions);
    CHECK(doc["samples"][i].at("sharing").get<std::vector<double>>() == tr.samples[i].sharing);
  }
  CHECK(doc.at("config").at("eps_max") == "0.5");
  CHECK_FALSE(doc.contains("generated_at"));
  CHECK(summary_json(tr).contains("generated_at"));

  const auto open = run(pair_config(3));
  CHECK(summary_json(open).at("converged_tick").is_null());
}

TEST_CASE("output is deterministic without the timestamp") {
  const auto a = run(pair_config(20));
  const auto b = run(pair_config(20));
  for (auto fmt : {OutputFormat::csv, OutputFormat::json}) {
    std::ostringstream x, y;
    emit_results(a, fmt, x, {false, false});
    emit_results(b, fmt, y, {false, false});
    CHECK(x.str() == y.str());
  }
}

TEST_CASE("a failing sink reports how far it got") {
  const auto tr = run(pair_config(5));
  {
    LimitedBuf buf(40);
    std::ostream sink(&buf);
    try {
      emit_results(tr, OutputFormat::csv, sink);
      FAIL("expected EmitError");
    } catch (const EmitError& e) {
      CHECK(e.partial());
    }
  }
  {
    LimitedBuf buf(0);
    std::ostream sink(&buf);
    try {
      emit_results(tr, OutputFormat::csv, sink);
      FAIL("expected EmitError");
    } catch (const EmitError& e) {
      CHECK_FALSE(e.partial());
    }
  }
  TrajectoryRecord empty;
  std::ostringstream out;
  CHECK_THROWS_AS(emit_results(empty, OutputFormat::csv, out), std::invalid_argument);
}
