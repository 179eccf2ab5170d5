#include "mindgraph/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mindgraph/kernels.hpp"

namespace mindgraph {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void validate(const DynamicsParams& p) {
  if (!(p.mu > 0.0 && p.mu <= 0.5)) throw std::invalid_argument("mu must lie in (0, 0.5]");
  if (!(p.eps_min >= 0.0 && p.eps_min <= 1.0)) throw std::invalid_argument("eps_min must lie in [0, 1]");
  if (!(p.eps_max >= p.eps_min && p.eps_max <= 1.0))
    throw std::invalid_argument("eps_max must lie in [eps_min, 1]");
  if (!(p.delta_share > 0.0 && p.delta_share < 1.0)) throw std::invalid_argument("delta_share must lie in (0, 1)");
}

void Population::check() const {
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (agents[i].id != i) throw std::invalid_argument("agent ids must be 0..n-1 in order");
  if (social.entity_count() != agents.size())
    throw std::invalid_argument("social graph entities must be exactly the agent ids");
}

std::vector<double> Population::opinions() const {
  std::vector<double> out;
  out.reserve(agents.size());
  for (const Agent& a : agents)
    out.push_back(a.holds(topic) ? a.opinion(topic) : std::numeric_limits<double>::quiet_NaN());
  return out;
}

double tolerance(const Agent& a, std::string_view p, Interval window, const DynamicsParams& params) {
  if (!a.holds(p)) throw std::invalid_argument("agent " + std::to_string(a.id) + " does not hold " + std::string(p));
  const double r = resistance(a.mind, p, window, params.resistance);
  return params.eps_max - (params.eps_max - params.eps_min) * r;
}

std::pair<double, double> bcm_update(double x_i, double x_j, double eps_i, double eps_j, double mu) {
  const double gap = std::abs(x_i - x_j);
  const double next_i = gap < eps_i ? x_i + mu * (x_j - x_i) : x_i;
  const double next_j = gap < eps_j ? x_j + mu * (x_i - x_j) : x_j;
  return {std::clamp(next_i, 0.0, 1.0), std::clamp(next_j, 0.0, 1.0)};
}

double sharing(const Population& pop, const Agent& a, std::string_view p, double delta) {
  if (!a.holds(p)) throw std::invalid_argument("agent " + std::to_string(a.id) + " does not hold " + std::string(p));
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("sharing radius must lie in (0, 1)");
  const double x = a.opinion(p);
  std::size_t others = 0;
  std::size_t close = 0;
  for (const Agent& b : pop.agents) {
    if (b.id == a.id || !b.holds(p)) continue;
    ++others;
    if (std::abs(b.opinion(p) - x) <= delta) ++close;
  }
  return others == 0 ? 0.0 : static_cast<double>(close) / static_cast<double>(others);
}

void influence_step(Population& pop, Tick t, const DynamicsParams& params, Rng& rng, Backend backend) {
  if (!pop.social.lifetime().contains(t))
    throw std::out_of_range("tick " + std::to_string(t) + " outside the social lifetime");
  validate(params);

  auto edges = pop.social.edges_present_at(t);
  shuffle(edges, rng);

  const Interval window{0, t + 1};
  const auto eps = kernels::tolerances(backend, pop, window, params);

  const std::size_t n = pop.agents.size();
  std::vector<double> x(n, 0.0);
  std::vector<char> holds(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    holds[i] = pop.agents[i].holds(pop.topic);
    if (holds[i]) x[i] = pop.agents[i].opinion(pop.topic);
  }

  for (const Edge& e : edges) {
    if (!holds[e.lo] || !holds[e.hi]) continue;
    const auto [xi, xj] = bcm_update(x[e.lo], x[e.hi], eps[e.lo], eps[e.hi], params.mu);
    x[e.lo] = xi;
    x[e.hi] = xj;
  }

  for (std::size_t i = 0; i < n; ++i)
    if (holds[i]) pop.agents[i].mind.set_perceived_truth(pop.topic, x[i]);

  if (!params.confidence_feedback) return;

  std::vector<std::size_t> holders;
  std::vector<double> values;
  for (std::size_t i = 0; i < n; ++i) {
    if (!holds[i]) continue;
    holders.push_back(i);
    values.push_back(x[i]);
  }
  const auto shared = kernels::sharing_all(backend, values, params.delta_share);
  for (std::size_t k = 0; k < holders.size(); ++k) {
    AgentMind& mind = pop.agents[holders[k]].mind;
    const double d = mind.representation(pop.topic).confidence;
    mind.set_confidence(pop.topic, std::clamp(d + kConfidenceFeedbackRate * (shared[k] - d), 0.0, 1.0));
  }
}

}  // namespace mindgraph
