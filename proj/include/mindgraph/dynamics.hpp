#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mindgraph/backend.hpp"
#include "mindgraph/mind.hpp"
#include "mindgraph/tvg.hpp"

namespace mindgraph {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection on raw 64-bit draws, so the
/// stream consumption is the same on every standard library.
[[nodiscard]] std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
[[nodiscard]] double uniform_unit(Rng& rng);

/// Fisher-Yates, highest index first.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Rate at which d_c follows sharing when confidence feedback is on.
inline constexpr double kConfidenceFeedbackRate = 0.1;

struct DynamicsParams {
  double mu = 0.5;           // (0, 0.5]
  double eps_min = 0.1;      // 0 <= eps_min <= eps_max <= 1
  double eps_max = 0.5;
  double delta_share = 0.05;  // (0, 1)
  bool confidence_feedback = false;
  ResistanceMode resistance = ResistanceMode::mean;

  friend bool operator==(const DynamicsParams&, const DynamicsParams&) = default;
};

/// Throws std::invalid_argument naming the first parameter out of range.
void validate(const DynamicsParams& params);

struct Agent {
  EntityId id = 0;
  AgentMind mind;

  /// T_s of the agent's representation of p.
  [[nodiscard]] double opinion(std::string_view p) const { return mind.representation(p).perceived_truth; }
  [[nodiscard]] bool holds(std::string_view p) const { return mind.holds(p); }
};

/// Agents exchanging opinions on `topic` over a social TVG whose entities
/// are exactly the agent ids 0..n-1.
struct Population {
  std::vector<Agent> agents;
  TimeVaryingGraph social;
  PropositionId topic = "p";

  /// Throws std::invalid_argument when agent ids are not 0..n-1 in order or
  /// the social graph has a different entity count.
  void check() const;

  [[nodiscard]] std::vector<double> opinions() const;
};

/// eps_max - (eps_max - eps_min) * resistance(agent's mind, p, window).
[[nodiscard]] double tolerance(const Agent& a, std::string_view p, Interval window, const DynamicsParams& params);

/// Bounded-confidence exchange: each side moves by mu toward the other when
/// the gap is strictly below its own tolerance.
[[nodiscard]] std::pair<double, double> bcm_update(double x_i, double x_j, double eps_i, double eps_j, double mu);

/// Fraction of the other agents holding p whose opinion lies within delta of
/// a's; 0 when nobody else holds p. Throws std::invalid_argument if a lacks p.
[[nodiscard]] double sharing(const Population& pop, const Agent& a, std::string_view p, double delta);

/// One tick of social influence at time t: every social edge present at t,
/// in an order shuffled by rng, runs bcm_update with tolerances from each
/// endpoint's activated component over [0, t+1). Updated opinions are written
/// back to T_s; with confidence feedback on, each d_c then moves toward that
/// agent's sharing by kConfidenceFeedbackRate.
/// Throws std::out_of_range when t is outside the social lifetime.
void influence_step(Population& pop, Tick t, const DynamicsParams& params, Rng& rng,
                    Backend backend = Backend::openmp);

}  // namespace mindgraph
