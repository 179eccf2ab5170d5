#include <cmath>

#include "doctest.h"
#include "mindgraph/dynamics.hpp"
#include "mindgraph/mind.hpp"
#include "oracles.hpp"

using namespace mindgraph;

namespace {

EpistemicRepresentation rep(std::string p, double dc, double ts = 0.5) {
  return {std::move(p), std::nullopt, ts, dc, false};
}

// Random mind with up to 8 representations and links active on sub-intervals of [0, 12).
AgentMind random_mind(Rng& rng) {
  const std::size_t n = 1 + uniform_below(rng, 8);
  std::vector<EpistemicRepresentation> reps;
  for (std::size_t i = 0; i < n; ++i) reps.push_back(rep("r" + std::to_string(i), uniform_unit(rng)));
  std::vector<SupportLink> links;
  const std::size_t m = n < 2 ? 0 : uniform_below(rng, 2 * n);
  while (links.size() < m) {
    const auto i = uniform_below(rng, n), j = uniform_below(rng, n);
    if (i == j) continue;
    const Tick t1 = static_cast<Tick>(uniform_below(rng, 10));
    const Tick t2 = t1 + 1 + static_cast<Tick>(uniform_below(rng, 4));
    links.push_back({"r" + std::to_string(i), "r" + std::to_string(j), 0.05 + 0.95 * uniform_unit(rng), t1, t2});
  }
  return AgentMind(std::move(reps), std::move(links));
}

}  // namespace

TEST_CASE("classify examples") {
  CHECK(classify({"p", 0.7, 0.7, 0.5, true}) == RepresentationKind::knowledge);
  CHECK(classify({"p", std::nullopt, 0.9, 0.5, false}) == RepresentationKind::opinion);
  CHECK(classify({"p", 0.3, 0.9, 0.5, true}) == RepresentationKind::belief);
  CHECK(classify({"p", 0.3, 0.3, 0.5, false}) == RepresentationKind::opinion);
  CHECK(classify({"p", std::nullopt, 0.3, 0.5, true}) == RepresentationKind::opinion);
  CHECK(to_string(RepresentationKind::belief) == "belief");
}

TEST_CASE("classify is total over the grid and knowledge takes precedence") {
  const std::optional<double> tos[] = {std::nullopt, 0.0, 0.25, 0.5, 0.75, 1.0};
  int seen = 0;
  for (const auto& to : tos)
    for (double ts : {0.0, 0.5, 1.0})
      for (bool verifiable : {true, false}) {
        const EpistemicRepresentation r{"p", to, ts, 0.5, verifiable};
        CHECK_NOTHROW(validate(r));
        const auto kind = classify(r);
        CHECK((kind == RepresentationKind::knowledge || kind == RepresentationKind::belief ||
               kind == RepresentationKind::opinion));
        if (verifiable && to && *to == ts) CHECK(kind == RepresentationKind::knowledge);
        ++seen;
      }
  CHECK(seen == 36);
}

TEST_CASE("representation validation") {
  CHECK_THROWS_AS(validate({"p", 1.5, 0.5, 0.5, true}), std::invalid_argument);
  CHECK_THROWS_AS(validate({"p", std::nullopt, -0.1, 0.5, true}), std::invalid_argument);
  CHECK_THROWS_AS(validate({"", std::nullopt, 0.1, 0.5, true}), std::invalid_argument);
  CHECK_THROWS_AS(AgentMind({rep("p", 0.1), rep("p", 0.2)}), std::invalid_argument);
  CHECK_THROWS_AS(AgentMind({rep("p", 0.1)}, {{"p", "q"}}), std::invalid_argument);
  CHECK_THROWS_AS(AgentMind({rep("p", 0.1), rep("q", 0.1)}, {{"p", "q", 0.0}}), std::invalid_argument);

  AgentMind m({rep("p", 0.1), rep("q", 0.1)});
  CHECK_THROWS_AS(m.add_support({"p", "p"}), std::invalid_argument);
  CHECK(m.supports().empty());
  m.add_support({"p", "q", 0.5, 2, 4});
  CHECK(m.support_weight(Edge::between(0, 1), 3) == 0.5);
  CHECK(m.support_weight(Edge::between(0, 1), 4) == 0.0);
  CHECK(m.remove_support({"p", "q", 0.5, 2, 4}));
  CHECK_FALSE(m.remove_support({"p", "q", 0.5, 2, 4}));
}

TEST_CASE("activation follows support journeys") {
  const AgentMind chain({rep("o", 0.2), rep("b1", 0.4), rep("b2", 0.6)}, {{"o", "b1"}, {"b1", "b2"}});
  CHECK(activate(chain, "o", {0, 10}) == std::vector<PropositionId>{"o", "b1", "b2"});

  const AgentMind lone({rep("o", 0.2)});
  CHECK(activate(lone, "o", {0, 10}) == std::vector<PropositionId>{"o"});

  const AgentMind expired({rep("o", 0.2), rep("b1", 0.4), rep("b2", 0.6)},
                          {{"o", "b1", 1.0, 0, 20}, {"b1", "b2", 1.0, 0, 3}});
  CHECK(activate(expired, "o", {0, 10}) == std::vector<PropositionId>{"o", "b1", "b2"});
  CHECK(activate(expired, "o", {5, 10}) == std::vector<PropositionId>{"o", "b1"});

  CHECK_THROWS_AS((void)activate(lone, "zz", {0, 10}), std::invalid_argument);
}

TEST_CASE("confidence aggregates supporters by noisy-OR") {
  const AgentMind none({rep("o", 0.4)});
  CHECK(confidence(none, "o", {0, 10}) == doctest::Approx(0.4));

  const AgentMind two({rep("o", 0.0), rep("s1", 0.5), rep("s2", 1.0)}, {{"o", "s1", 1.0}, {"o", "s2", 0.5}});
  CHECK(confidence(two, "o", {0, 10}) == doctest::Approx(0.75));

  const AgentMind zero({rep("o", 0.4), rep("s", 0.0)}, {{"o", "s"}});
  CHECK(confidence(zero, "o", {0, 10}) == doctest::Approx(0.4));

  AgentMind m = two;
  CHECK(m.effective_confidence("o") == 0.0);
  CHECK(m.refresh_confidence("o", {0, 10}) == doctest::Approx(0.75));
  CHECK(m.effective_confidence("o") == doctest::Approx(0.75));
  CHECK(m.representation("o").confidence == 0.0);
  CHECK_THROWS_AS((void)confidence(m, "zz", {0, 10}), std::invalid_argument);
}

TEST_CASE("resistance over the activated component") {
  const AgentMind chain({rep("o", 0.2), rep("b1", 0.4), rep("b2", 0.6)}, {{"o", "b1"}, {"b1", "b2"}});
  CHECK(resistance(chain, "o", {0, 10}) == doctest::Approx(0.4));
  CHECK(resistance(chain, "o", {0, 10}, ResistanceMode::min) == doctest::Approx(0.2));
  CHECK(resistance(chain, "o", {0, 10}, ResistanceMode::max) == doctest::Approx(0.6));
  CHECK(resistance(AgentMind({rep("o", 0.9)}), "o", {0, 10}) == doctest::Approx(0.9));
  CHECK(resistance(AgentMind({rep("o", 0.0)}), "o", {0, 10}) == 0.0);
  const AgentMind pair({rep("o", 1.0), rep("s", 0.0)}, {{"o", "s"}});
  CHECK(resistance(pair, "o", {0, 10}) == doctest::Approx(0.5));
  CHECK_THROWS_AS((void)resistance(pair, "zz", {0, 10}), std::invalid_argument);
}

TEST_CASE("property: confidence is bounded and monotone in supporters") {
  Rng rng(7);
  for (int round = 0; round < 500; ++round) {
    AgentMind m = random_mind(rng);
    const auto n = m.representations().size();
    const std::string target = "r" + std::to_string(uniform_below(rng, n));
    const Tick lo = static_cast<Tick>(uniform_below(rng, 6));
    const Interval window{lo, lo + 1 + static_cast<Tick>(uniform_below(rng, 8))};
    const double base = m.representation(target).confidence;
    const double before = confidence(m, target, window);
    CHECK(before >= base);
    CHECK(before <= 1.0);

    // Attach a fresh supporter to a random activated member, usable across the window.
    const auto members = activate(m, target, window);
    const auto anchor = members[uniform_below(rng, members.size())];
    m.add_representation(rep("new", 0.01 + 0.99 * uniform_unit(rng)));
    const SupportLink link{anchor, "new", 0.01 + 0.99 * uniform_unit(rng), window.begin, window.end};
    m.add_support(link);
    const double grown = confidence(m, target, window);
    CHECK(grown >= before);
    if (anchor == target && before < 0.999) CHECK(grown > before);

    m.remove_support(link);
    CHECK(confidence(m, target, window) == before);

    if (!m.supports().empty()) {
      const SupportLink gone = m.supports()[uniform_below(rng, m.supports().size())];
      m.remove_support(gone);
      CHECK(confidence(m, target, window) <= before);
    }
  }
}

TEST_CASE("property: activation is sound against the walk oracle") {
  Rng rng(8);
  for (int round = 0; round < 500; ++round) {
    const AgentMind m = random_mind(rng);
    const std::string stimulus = "r" + std::to_string(uniform_below(rng, m.representations().size()));
    const Interval window{0, 1 + static_cast<Tick>(uniform_below(rng, 14))};
    const auto active = activate(m, stimulus, window);
    const EntityId s = m.node_of(stimulus);
    std::vector<EntityId> nodes;
    for (const auto& p : active) {
      nodes.push_back(m.node_of(p));
      CHECK(oracle::foremost_arrival(m.structure(), s, nodes.back(), window).has_value());
    }
    CHECK(nodes == oracle::component(m.structure(), {s}, window));
  }
}
