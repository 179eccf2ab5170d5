#include "mindgraph/journey.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

#include "mindgraph/kernels.hpp"

namespace mindgraph {

namespace {

struct Candidate {
  Tick departure;
  Tick arrival;
};

// Earliest arrival over edge `idx` for a walker standing at its endpoint from
// time `ready`, departing inside `window`. Within one presence piece and one
// latency step, arrival grows with departure, so only piece starts and
// latency breakpoints need checking.
std::optional<Candidate> best_crossing(const TimeVaryingGraph& g, std::size_t idx, Tick ready,
                                       Interval window) {
  const auto avail = g.availability_at(idx);
  const auto steps = g.latency_steps_at(idx);
  std::optional<Candidate> best;
  auto consider = [&](Tick d) {
    const Tick lat = g.latency_at(idx, d);
    const Tick arr = lat > kForever - d ? kForever : d + lat;
    if (!best || arr < best->arrival) best = Candidate{d, arr};
  };

  auto it = std::upper_bound(avail.begin(), avail.end(), ready,
                             [](Tick t, const Interval& iv) { return t < iv.end; });
  for (; it != avail.end(); ++it) {
    const Tick lo = std::max({ready, it->begin, window.begin});
    const Tick hi = std::min(it->end, window.end);
    if (it->begin >= window.end) break;
    if (lo >= hi) continue;
    if (best && lo >= best->arrival) break;
    consider(lo);
    if (steps.empty()) break;  // constant zero latency: first departure wins
    auto s = std::upper_bound(steps.begin(), steps.end(), lo,
                              [](Tick t, const LatencyStep& st) { return t < st.from; });
    for (; s != steps.end() && s->from < hi; ++s) {
      if (best && s->from >= best->arrival) break;
      consider(s->from);
    }
  }
  return best;
}

}  // namespace

std::string journey_violation(const TimeVaryingGraph& g, const Journey& j) {
  if (!g.has_entity(j.source)) return "unknown source";
  EntityId at = j.source;
  Tick ready = j.start;
  for (std::size_t i = 0; i < j.steps.size(); ++i) {
    const JourneyStep& s = j.steps[i];
    const std::string where = "step " + std::to_string(i) + ": ";
    if (s.from != at) return where + "does not continue the walk";
    if (!g.has_entity(s.to) || s.from == s.to) return where + "bad endpoint";
    if (s.departure < ready) return where + "departs before the previous step arrives";
    if (!g.lifetime().contains(s.departure)) return where + "departs outside the lifetime";
    if (!g.presence(s.edge(), s.departure)) return where + "edge absent at departure";
    ready = s.departure + g.latency(s.edge(), s.departure);
    at = s.to;
  }
  if (j.arrival != ready) return "arrival does not match the last step";
  return {};
}

ArrivalTree::ArrivalTree(const TimeVaryingGraph& g, std::span<const EntityId> sources, Interval window)
    : window_(window),
      arrival_(g.entity_count()),
      parent_(g.entity_count()),
      is_source_(g.entity_count(), 0) {
  using Entry = std::pair<Tick, EntityId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (EntityId s : sources) {
    if (!g.has_entity(s)) throw std::invalid_argument("unknown entity " + std::to_string(s));
    if (is_source_[s]) continue;
    is_source_[s] = 1;
    arrival_[s] = window.begin;
    queue.emplace(window.begin, s);
  }
  while (!queue.empty()) {
    const auto [at, u] = queue.top();
    queue.pop();
    if (*arrival_[u] != at) continue;
    for (const auto& nb : g.neighbors(u)) {
      const auto cross = best_crossing(g, nb.edge_index, at, window);
      if (!cross) continue;
      auto& cur = arrival_[nb.node];
      if (!cur || cross->arrival < *cur) {
        cur = cross->arrival;
        parent_[nb.node] = Parent{u, cross->departure};
        queue.emplace(cross->arrival, nb.node);
      }
    }
  }
}

std::optional<Journey> ArrivalTree::journey_to(EntityId v) const {
  if (v >= arrival_.size() || !arrival_[v]) return std::nullopt;
  Journey j;
  j.arrival = *arrival_[v];
  EntityId at = v;
  while (!is_source_[at]) {
    const Parent& p = *parent_[at];
    j.steps.push_back({p.from, at, p.departure});
    at = p.from;
  }
  std::reverse(j.steps.begin(), j.steps.end());
  j.source = at;
  j.start = window_.begin;
  return j;
}

std::vector<EntityId> ArrivalTree::reached_nodes() const {
  std::vector<EntityId> out;
  for (EntityId v = 0; v < arrival_.size(); ++v)
    if (arrival_[v]) out.push_back(v);
  return out;
}

std::optional<Journey> foremost_journey(const TimeVaryingGraph& g, EntityId src, EntityId dst,
                                        Interval window) {
  if (!g.has_entity(src)) throw std::invalid_argument("unknown entity " + std::to_string(src));
  if (!g.has_entity(dst)) throw std::invalid_argument("unknown entity " + std::to_string(dst));
  if (src == dst) return Journey{src, window.begin, {}, window.begin};
  const EntityId sources[] = {src};
  return ArrivalTree(g, sources, window).journey_to(dst);
}

std::optional<Journey> foremost_journey(const TimeVaryingGraph& g, EntityId src, EntityId dst,
                                        Tick t_start) {
  return foremost_journey(g, src, dst, Interval{t_start, kForever});
}

std::vector<EntityId> temporal_component(const TimeVaryingGraph& g, std::span<const EntityId> seeds,
                                         Interval window, Backend backend) {
  if (seeds.empty()) throw std::invalid_argument("empty seed set");
  const ArrivalTree forward(g, seeds, window);

  std::vector<char> is_seed(g.entity_count(), 0);
  for (EntityId s : seeds) is_seed[s] = 1;
  std::vector<EntityId> candidates;
  for (EntityId v : forward.reached_nodes())
    if (!is_seed[v]) candidates.push_back(v);

  const auto back = kernels::reaches_any(backend, g, candidates, seeds, window);
  std::vector<EntityId> out;
  for (EntityId v = 0; v < g.entity_count(); ++v)
    if (is_seed[v]) out.push_back(v);
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (back[i]) out.push_back(candidates[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mindgraph
