#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mindgraph/backend.hpp"
#include "mindgraph/tvg.hpp"

namespace mindgraph {

struct JourneyStep {
  EntityId from = 0;
  EntityId to = 0;
  Tick departure = 0;

  [[nodiscard]] Edge edge() const { return Edge::between(from, to); }

  friend bool operator==(const JourneyStep&, const JourneyStep&) = default;
};

/// A time-respecting walk. `arrival` is when the last step lands (or `start`
/// for the empty journey).
struct Journey {
  EntityId source = 0;
  Tick start = 0;
  std::vector<JourneyStep> steps;
  Tick arrival = 0;

  [[nodiscard]] EntityId destination() const { return steps.empty() ? source : steps.back().to; }

  friend bool operator==(const Journey&, const Journey&) = default;
};

/// Empty string when `j` is a valid journey in `g`, otherwise the first
/// violated invariant.
[[nodiscard]] std::string journey_violation(const TimeVaryingGraph& g, const Journey& j);

/// Earliest-arrival tree from a set of sources, all leaving at window.begin,
/// with every departure restricted to the window.
class ArrivalTree {
 public:
  ArrivalTree(const TimeVaryingGraph& g, std::span<const EntityId> sources, Interval window);

  [[nodiscard]] bool reached(EntityId v) const { return arrival_[v].has_value(); }
  [[nodiscard]] std::optional<Tick> arrival(EntityId v) const { return arrival_[v]; }

  /// Foremost journey to v, or nullopt when v is unreachable.
  [[nodiscard]] std::optional<Journey> journey_to(EntityId v) const;

  [[nodiscard]] std::vector<EntityId> reached_nodes() const;

 private:
  struct Parent {
    EntityId from;
    Tick departure;
  };

  Interval window_;
  std::vector<std::optional<Tick>> arrival_;
  std::vector<std::optional<Parent>> parent_;  // nullopt for sources
  std::vector<char> is_source_;
};

/// Journey with minimal arrival among all journeys from src departing at or
/// after t_start. src == dst gives the empty journey arriving at t_start.
/// Throws std::invalid_argument for unknown entities.
[[nodiscard]] std::optional<Journey> foremost_journey(const TimeVaryingGraph& g, EntityId src,
                                                      EntityId dst, Tick t_start);

/// Same, with departures restricted to `window` (the search starts at window.begin).
[[nodiscard]] std::optional<Journey> foremost_journey(const TimeVaryingGraph& g, EntityId src,
                                                      EntityId dst, Interval window);

/// Nodes that are reachable by a journey inside `window` from some seed and
/// that also admit a journey inside `window` back to some seed. Seeds are
/// always members. Returned sorted.
/// Throws std::invalid_argument for an empty or unknown seed set.
[[nodiscard]] std::vector<EntityId> temporal_component(const TimeVaryingGraph& g,
                                                       std::span<const EntityId> seeds,
                                                       Interval window,
                                                       Backend backend = Backend::openmp);

}  // namespace mindgraph
