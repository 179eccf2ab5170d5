#include "mindgraph/tvg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mindgraph {

namespace {

std::string describe(const Interaction& c) {
  return "(" + std::to_string(c.u) + "," + std::to_string(c.v) + "," + std::to_string(c.t1) + "," +
         std::to_string(c.t2) + ")";
}

// Merge overlapping or touching intervals in place; input need not be sorted.
void normalize(std::vector<Interval>& intervals) {
  std::sort(intervals.begin(), intervals.end());
  std::size_t out = 0;
  for (const Interval& iv : intervals) {
    if (out > 0 && iv.begin <= intervals[out - 1].end) {
      intervals[out - 1].end = std::max(intervals[out - 1].end, iv.end);
    } else {
      intervals[out++] = iv;
    }
  }
  intervals.resize(out);
}

bool covered(std::span<const Interval> avail, Interval span) {
  // avail is disjoint and sorted; span is covered iff a single piece holds it.
  auto it = std::upper_bound(avail.begin(), avail.end(), span.begin,
                             [](Tick t, const Interval& iv) { return t < iv.begin; });
  if (it == avail.begin()) return false;
  --it;
  return it->begin <= span.begin && span.end <= it->end;
}

}  // namespace

Edge Edge::between(EntityId a, EntityId b) {
  if (a == b) throw std::invalid_argument("self-loop on entity " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

bool StaticGraph::has_edge(Edge e) const { return std::binary_search(edges.begin(), edges.end(), e); }

TimeVaryingGraph::TimeVaryingGraph(std::size_t entity_count, Interval lifetime,
                                   std::vector<Interaction> interactions, LatencyTable latency)
    : entity_count_(entity_count),
      lifetime_(lifetime),
      interactions_(std::move(interactions)),
      latency_(std::move(latency)) {
  if (lifetime_.end < lifetime_.begin) throw std::invalid_argument("lifetime end precedes begin");
  if (entity_count_ > std::numeric_limits<EntityId>::max())
    throw std::invalid_argument("too many entities");

  struct Piece {
    Edge edge;
    Interval span;
  };
  std::vector<Piece> pieces;
  pieces.reserve(interactions_.size());
  for (const Interaction& c : interactions_) {
    if (c.t1 >= c.t2) throw std::invalid_argument("empty interval in interaction " + describe(c));
    if (!has_entity(c.u) || !has_entity(c.v))
      throw std::invalid_argument("unknown entity in interaction " + describe(c));
    if (c.u == c.v) throw std::invalid_argument("self-loop interaction " + describe(c));
    if (!c.interval().intersects(lifetime_))
      throw std::invalid_argument("interaction outside lifetime " + describe(c));
    pieces.push_back({c.edge(), c.interval().intersect(lifetime_)});
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return a.edge != b.edge ? a.edge < b.edge : a.span < b.span;
  });

  avail_offsets_.push_back(0);
  for (std::size_t i = 0; i < pieces.size();) {
    const Edge e = pieces[i].edge;
    std::vector<Interval> spans;
    for (; i < pieces.size() && pieces[i].edge == e; ++i) spans.push_back(pieces[i].span);
    normalize(spans);
    edge_lookup_.emplace(e.key(), static_cast<std::uint32_t>(edges_.size()));
    edges_.push_back(e);
    avail_.insert(avail_.end(), spans.begin(), spans.end());
    avail_offsets_.push_back(avail_.size());
  }

  edge_latency_.resize(edges_.size());
  for (auto& [e, steps] : latency_) {
    for (const LatencyStep& s : steps)
      if (s.duration < 0) throw std::invalid_argument("negative latency");
    std::sort(steps.begin(), steps.end());
    const auto idx = edge_index(e);
    if (idx >= 0) edge_latency_[static_cast<std::size_t>(idx)] = steps;
  }

  std::vector<std::size_t> degree(entity_count_ + 1, 0);
  for (const Edge& e : edges_) {
    ++degree[e.lo];
    ++degree[e.hi];
  }
  adj_offsets_.assign(entity_count_ + 1, 0);
  for (std::size_t x = 0; x < entity_count_; ++x) adj_offsets_[x + 1] = adj_offsets_[x] + degree[x];
  adj_.resize(adj_offsets_.back());
  std::vector<std::size_t> fill(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    adj_[fill[edges_[i].lo]++] = {edges_[i].hi, i};
    adj_[fill[edges_[i].hi]++] = {edges_[i].lo, i};
  }
}

void TimeVaryingGraph::check_entity(EntityId x) const {
  if (!has_entity(x)) throw std::invalid_argument("unknown entity " + std::to_string(x));
}

std::span<const TimeVaryingGraph::Neighbor> TimeVaryingGraph::neighbors(EntityId u) const {
  check_entity(u);
  return std::span<const Neighbor>(adj_).subspan(adj_offsets_[u], adj_offsets_[u + 1] - adj_offsets_[u]);
}

std::ptrdiff_t TimeVaryingGraph::edge_index(Edge e) const {
  const auto it = edge_lookup_.find(e.key());
  return it == edge_lookup_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::span<const Interval> TimeVaryingGraph::availability_at(std::size_t edge_index) const {
  return std::span<const Interval>(avail_).subspan(avail_offsets_[edge_index],
                                                   avail_offsets_[edge_index + 1] - avail_offsets_[edge_index]);
}

std::span<const Interval> TimeVaryingGraph::availability(Edge e) const {
  const auto idx = edge_index(e);
  if (idx < 0) return {};
  return availability_at(static_cast<std::size_t>(idx));
}

bool TimeVaryingGraph::presence(Edge e, Tick t) const {
  check_entity(e.lo);
  check_entity(e.hi);
  if (!lifetime_.contains(t))
    throw std::out_of_range("time " + std::to_string(t) + " outside lifetime");
  return covered(availability(e), {t, t + 1});
}

bool TimeVaryingGraph::presence(EntityId u, EntityId v, Tick t) const {
  check_entity(u);
  check_entity(v);
  return presence(Edge::between(u, v), t);
}

Tick TimeVaryingGraph::latency_at(std::size_t edge_index, Tick t) const {
  const auto& steps = edge_latency_[edge_index];
  auto it = std::upper_bound(steps.begin(), steps.end(), t,
                             [](Tick x, const LatencyStep& s) { return x < s.from; });
  return it == steps.begin() ? 0 : std::prev(it)->duration;
}

Tick TimeVaryingGraph::latency(Edge e, Tick t) const {
  const auto idx = edge_index(e);
  if (idx >= 0) return latency_at(static_cast<std::size_t>(idx), t);
  const auto it = latency_.find(e);
  if (it == latency_.end()) return 0;
  Tick d = 0;
  for (const LatencyStep& s : it->second)
    if (s.from <= t) d = s.duration;
  return d;
}

std::vector<Edge> TimeVaryingGraph::edges_present_at(Tick t) const {
  std::vector<Edge> out;
  if (!lifetime_.contains(t)) return out;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (covered(availability_at(i), {t, t + 1})) out.push_back(edges_[i]);
  return out;
}

CharacteristicDates characteristic_dates(const TimeVaryingGraph& g, Edge e) {
  CharacteristicDates dates;
  for (const Interval& iv : g.availability(e)) {
    dates.appearances.push_back(iv.begin);
    dates.disappearances.push_back(iv.end);
    dates.all.push_back(iv.begin);
    dates.all.push_back(iv.end);
  }
  return dates;
}

std::vector<Tick> characteristic_dates(const TimeVaryingGraph& g) {
  std::vector<Tick> dates;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    for (const Interval& iv : g.availability_at(i)) {
      dates.push_back(iv.begin);
      dates.push_back(iv.end);
    }
  }
  std::sort(dates.begin(), dates.end());
  dates.erase(std::unique(dates.begin(), dates.end()), dates.end());
  return dates;
}

StaticGraph underlying_graph(const TimeVaryingGraph& g, Interval window) {
  StaticGraph out{g.entity_count(), {}};
  if (window.empty()) return out;
  if (!g.lifetime().contains(window)) throw std::out_of_range("window not inside lifetime");
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto avail = g.availability_at(i);
    if (std::any_of(avail.begin(), avail.end(), [&](const Interval& iv) { return iv.intersects(window); }))
      out.edges.push_back(g.edges()[i]);
  }
  return out;
}

std::vector<Snapshot> snapshot_sequence(const TimeVaryingGraph& g, SnapshotMode mode) {
  std::vector<Tick> cuts;
  if (mode.kind == SnapshotMode::Kind::uniform) {
    if (mode.step <= 0) throw std::invalid_argument("snapshot step must be positive");
    if (g.lifetime().end == kForever) throw std::invalid_argument("uniform snapshots need a finite lifetime");
    for (Tick t = g.lifetime().begin; t < g.lifetime().end; t += mode.step) cuts.push_back(t);
  } else {
    cuts = characteristic_dates(g);
  }

  std::vector<Snapshot> out;
  out.reserve(cuts.size());
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const Tick t = cuts[c];
    Tick next = c + 1 < cuts.size() ? cuts[c + 1] : g.lifetime().end;
    if (mode.kind == SnapshotMode::Kind::uniform) next = std::min(next, t + mode.step);
    const Interval span{t, std::max(next, t + 1)};
    Snapshot snap{t, {g.entity_count(), {}}};
    for (std::size_t i = 0; i < g.edges().size(); ++i)
      if (covered(g.availability_at(i), span)) snap.graph.edges.push_back(g.edges()[i]);
    out.push_back(std::move(snap));
  }
  return out;
}

}  // namespace mindgraph
