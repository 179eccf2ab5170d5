#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mindgraph {

/// Simulation time in integer ticks.
using Tick = std::int64_t;
using EntityId = std::uint32_t;

inline constexpr Tick kForever = std::numeric_limits<Tick>::max();

/// Half-open interval [begin, end).
struct Interval {
  Tick begin = 0;
  Tick end = 0;

  [[nodiscard]] constexpr bool empty() const noexcept { return end <= begin; }
  [[nodiscard]] constexpr bool contains(Tick t) const noexcept { return begin <= t && t < end; }
  [[nodiscard]] constexpr bool contains(const Interval& other) const noexcept {
    return other.empty() || (begin <= other.begin && other.end <= end);
  }
  [[nodiscard]] constexpr bool intersects(const Interval& other) const noexcept {
    return !empty() && !other.empty() && begin < other.end && other.begin < end;
  }
  [[nodiscard]] constexpr Interval intersect(const Interval& other) const noexcept {
    return {std::max(begin, other.begin), std::min(end, other.end)};
  }

  friend constexpr auto operator<=>(const Interval&, const Interval&) = default;
};

/// Undirected edge, stored with lo < hi.
struct Edge {
  EntityId lo = 0;
  EntityId hi = 0;

  /// Throws std::invalid_argument on a self-loop.
  static Edge between(EntityId a, EntityId b);

  [[nodiscard]] constexpr EntityId other(EntityId x) const noexcept { return x == lo ? hi : lo; }
  [[nodiscard]] constexpr bool touches(EntityId x) const noexcept { return x == lo || x == hi; }
  [[nodiscard]] constexpr std::uint64_t key() const noexcept {
    return (static_cast<std::uint64_t>(lo) << 32) | hi;
  }

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// One interval-stamped relation between two entities.
struct Interaction {
  EntityId u = 0;
  EntityId v = 0;
  Tick t1 = 0;
  Tick t2 = 0;
  std::string label;

  [[nodiscard]] Edge edge() const { return Edge::between(u, v); }
  [[nodiscard]] constexpr Interval interval() const noexcept { return {t1, t2}; }

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

/// Latency takes `duration` from departure tick `from` onward, until the next step.
struct LatencyStep {
  Tick from = 0;
  Tick duration = 0;

  friend constexpr auto operator<=>(const LatencyStep&, const LatencyStep&) = default;
};

using LatencyTable = std::map<Edge, std::vector<LatencyStep>>;

struct StaticGraph {
  std::size_t node_count = 0;  // nodes are 0..node_count-1
  std::vector<Edge> edges;     // sorted, unique

  [[nodiscard]] bool has_edge(Edge e) const;

  friend bool operator==(const StaticGraph&, const StaticGraph&) = default;
};

/// Time-varying graph over entities 0..entity_count-1.
///
/// Immutable once constructed. Construction validates every interaction and
/// builds a per-edge index of normalized availability intervals (the union of
/// all interactions on the edge, clipped to the lifetime), so presence is a
/// binary search. All const member functions are safe to call concurrently.
class TimeVaryingGraph {
 public:
  struct Neighbor {
    EntityId node;
    std::uint32_t edge_index;
  };

  TimeVaryingGraph() = default;

  /// Throws std::invalid_argument when an interaction has t1 >= t2, a
  /// self-loop, an unknown endpoint, or does not intersect the lifetime.
  TimeVaryingGraph(std::size_t entity_count, Interval lifetime,
                   std::vector<Interaction> interactions = {}, LatencyTable latency = {});

  [[nodiscard]] std::size_t entity_count() const noexcept { return entity_count_; }
  [[nodiscard]] Interval lifetime() const noexcept { return lifetime_; }
  [[nodiscard]] std::span<const Interaction> interactions() const noexcept { return interactions_; }
  [[nodiscard]] const LatencyTable& latency_table() const noexcept { return latency_; }

  /// Edges with at least one interaction inside the lifetime, sorted.
  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
  [[nodiscard]] std::span<const Neighbor> neighbors(EntityId u) const;

  /// Index into edges(), or -1.
  [[nodiscard]] std::ptrdiff_t edge_index(Edge e) const;

  /// Normalized disjoint availability intervals I(e), sorted.
  [[nodiscard]] std::span<const Interval> availability(Edge e) const;
  [[nodiscard]] std::span<const Interval> availability_at(std::size_t edge_index) const;

  /// rho(e, t). Throws std::invalid_argument for unknown endpoints and
  /// std::out_of_range when t is outside the lifetime.
  [[nodiscard]] bool presence(Edge e, Tick t) const;
  [[nodiscard]] bool presence(EntityId u, EntityId v, Tick t) const;

  /// zeta(e, t); zero unless configured.
  [[nodiscard]] Tick latency(Edge e, Tick t) const;
  [[nodiscard]] Tick latency_at(std::size_t edge_index, Tick t) const;
  [[nodiscard]] std::span<const LatencyStep> latency_steps_at(std::size_t edge_index) const {
    return edge_latency_[edge_index];
  }

  /// Edges present at t, sorted. Empty when t is outside the lifetime.
  [[nodiscard]] std::vector<Edge> edges_present_at(Tick t) const;

  [[nodiscard]] bool has_entity(EntityId x) const noexcept { return x < entity_count_; }

 private:
  void check_entity(EntityId x) const;

  std::size_t entity_count_ = 0;
  Interval lifetime_{0, 0};
  std::vector<Interaction> interactions_;
  LatencyTable latency_;

  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_lookup_;
  std::vector<std::size_t> avail_offsets_;  // CSR into avail_
  std::vector<Interval> avail_;
  std::vector<std::vector<LatencyStep>> edge_latency_;  // by edge index
  std::vector<std::size_t> adj_offsets_;  // CSR into adj_
  std::vector<Neighbor> adj_;
};

struct CharacteristicDates {
  std::vector<Tick> appearances;
  std::vector<Tick> disappearances;
  std::vector<Tick> all;

  friend bool operator==(const CharacteristicDates&, const CharacteristicDates&) = default;
};

/// App(e), Dis(e) and S_T(e). An edge that is never present yields empty lists.
[[nodiscard]] CharacteristicDates characteristic_dates(const TimeVaryingGraph& g, Edge e);

/// sort(U S_T(e)) over all edges.
[[nodiscard]] std::vector<Tick> characteristic_dates(const TimeVaryingGraph& g);

/// Footprint of g over `window`: an edge exists iff some interaction on it
/// intersects the window. Throws std::out_of_range if a nonempty window is
/// not inside the lifetime.
[[nodiscard]] StaticGraph underlying_graph(const TimeVaryingGraph& g, Interval window);

struct SnapshotMode {
  enum class Kind { uniform, characteristic };
  Kind kind = Kind::characteristic;
  Tick step = 1;

  static constexpr SnapshotMode uniform(Tick step) { return {Kind::uniform, step}; }
  static constexpr SnapshotMode characteristic() { return {Kind::characteristic, 1}; }
};

struct Snapshot {
  Tick time = 0;
  StaticGraph graph;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// Each snapshot holds the edges present throughout [t_i, t_{i+1}).
/// Uniform mode requires step > 0 and a finite lifetime.
[[nodiscard]] std::vector<Snapshot> snapshot_sequence(const TimeVaryingGraph& g, SnapshotMode mode);

}  // namespace mindgraph
