#include "mindgraph/mind.hpp"

#include <algorithm>
#include <stdexcept>

namespace mindgraph {

namespace {

bool unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void validate(const EpistemicRepresentation& r) {
  if (r.proposition.empty()) throw std::invalid_argument("empty proposition id");
  if (r.objective_truth && !unit(*r.objective_truth))
    throw std::invalid_argument("T_o out of [0,1] for " + r.proposition);
  if (!unit(r.perceived_truth)) throw std::invalid_argument("T_s out of [0,1] for " + r.proposition);
  if (!unit(r.confidence)) throw std::invalid_argument("d_c out of [0,1] for " + r.proposition);
}

std::string_view to_string(RepresentationKind kind) noexcept {
  switch (kind) {
    case RepresentationKind::knowledge: return "knowledge";
    case RepresentationKind::belief: return "belief";
    case RepresentationKind::opinion: return "opinion";
  }
  return "?";
}

std::string_view to_string(ResistanceMode mode) noexcept {
  switch (mode) {
    case ResistanceMode::mean: return "mean";
    case ResistanceMode::min: return "min";
    case ResistanceMode::max: return "max";
  }
  return "?";
}

RepresentationKind classify(const EpistemicRepresentation& r) noexcept {
  if (r.verifiable && r.objective_truth && *r.objective_truth == r.perceived_truth)
    return RepresentationKind::knowledge;
  if (!r.verifiable || !r.objective_truth) return RepresentationKind::opinion;
  return RepresentationKind::belief;
}

AgentMind::AgentMind(std::vector<EpistemicRepresentation> reps, std::vector<SupportLink> supports) {
  for (auto& r : reps) {
    validate(r);
    if (!index_.emplace(r.proposition, static_cast<EntityId>(reps_.size())).second)
      throw std::invalid_argument("duplicate proposition " + r.proposition);
    reps_.push_back(std::move(r));
  }
  effective_.resize(reps_.size());
  links_ = std::move(supports);
  rebuild();
}

void AgentMind::add_representation(EpistemicRepresentation r) {
  validate(r);
  if (!index_.emplace(r.proposition, static_cast<EntityId>(reps_.size())).second)
    throw std::invalid_argument("duplicate proposition " + r.proposition);
  reps_.push_back(std::move(r));
  effective_.emplace_back();
  rebuild();
}

void AgentMind::add_support(SupportLink link) {
  links_.push_back(std::move(link));
  try {
    rebuild();
  } catch (...) {
    links_.pop_back();
    rebuild();
    throw;
  }
}

bool AgentMind::remove_support(const SupportLink& link) {
  const auto it = std::find(links_.begin(), links_.end(), link);
  if (it == links_.end()) return false;
  links_.erase(it);
  rebuild();
  return true;
}

void AgentMind::rebuild() {
  std::vector<Interaction> interactions;
  interactions.reserve(links_.size());
  for (const SupportLink& l : links_) {
    if (!(l.weight > 0.0 && l.weight <= 1.0))
      throw std::invalid_argument("support weight must lie in (0,1]: " + l.a + "-" + l.b);
    interactions.push_back({node_of(l.a), node_of(l.b), l.t1, l.t2, {}});
  }
  structure_ = TimeVaryingGraph(reps_.size(), {0, kForever}, std::move(interactions));
  std::fill(effective_.begin(), effective_.end(), std::nullopt);
}

EntityId AgentMind::node_of(std::string_view p) const {
  const auto it = index_.find(p);
  if (it == index_.end()) throw std::invalid_argument("unknown proposition " + std::string(p));
  return it->second;
}

const EpistemicRepresentation& AgentMind::representation(std::string_view p) const { return reps_[node_of(p)]; }

EpistemicRepresentation& AgentMind::mutable_representation(std::string_view p) { return reps_[node_of(p)]; }

void AgentMind::set_perceived_truth(std::string_view p, double value) {
  if (!unit(value)) throw std::invalid_argument("T_s out of [0,1]");
  mutable_representation(p).perceived_truth = value;
}

void AgentMind::set_confidence(std::string_view p, double value) {
  if (!unit(value)) throw std::invalid_argument("d_c out of [0,1]");
  mutable_representation(p).confidence = value;
  std::fill(effective_.begin(), effective_.end(), std::nullopt);
}

double AgentMind::support_weight(Edge e, Tick t) const {
  double w = 0.0;
  for (const SupportLink& l : links_) {
    if (l.t1 <= t && t < l.t2 && Edge::between(node_of(l.a), node_of(l.b)) == e) w = std::max(w, l.weight);
  }
  return w;
}

double AgentMind::effective_confidence(std::string_view p) const {
  const EntityId n = node_of(p);
  return effective_[n] ? *effective_[n] : reps_[n].confidence;
}

double AgentMind::refresh_confidence(std::string_view p, Interval window) {
  const double d = confidence(*this, p, window);
  effective_[node_of(p)] = d;
  return d;
}

namespace {

std::vector<EntityId> component_nodes(const AgentMind& mind, std::string_view p, Interval window) {
  const EntityId seeds[] = {mind.node_of(p)};
  // Minds are small and this runs inside the parallel per-agent kernels.
  return temporal_component(mind.structure(), seeds, window, Backend::serial);
}

// Best weight of a final edge over all journeys from the tree's source into k:
// a link (j,k) counts when it is active at some tick after j is reached and
// before the window closes.
double entering_weight(const AgentMind& mind, const ArrivalTree& tree, EntityId k, Interval window) {
  double w = 0.0;
  for (const SupportLink& l : mind.supports()) {
    const EntityId a = mind.node_of(l.a);
    const EntityId b = mind.node_of(l.b);
    if (a != k && b != k) continue;
    const auto ready = tree.arrival(a == k ? b : a);
    if (!ready) continue;
    const Interval usable = Interval{l.t1, l.t2}.intersect({*ready, window.end});
    if (!usable.empty()) w = std::max(w, l.weight);
  }
  return w;
}

}  // namespace

std::vector<PropositionId> activate(const AgentMind& mind, std::string_view stimulus, Interval window) {
  std::vector<PropositionId> out;
  for (EntityId n : component_nodes(mind, stimulus, window))
    out.push_back(mind.representations()[n].proposition);
  return out;
}

double confidence(const AgentMind& mind, std::string_view target, Interval window) {
  const EntityId t = mind.node_of(target);
  const auto reps = mind.representations();
  const double base = reps[t].confidence;
  const auto members = component_nodes(mind, target, window);
  if (members.size() == 1) return base;

  const EntityId sources[] = {t};
  const ArrivalTree tree(mind.structure(), sources, window);
  double disbelief = 1.0 - base;
  for (EntityId k : members) {
    if (k == t) continue;
    disbelief *= 1.0 - entering_weight(mind, tree, k, window) * reps[k].confidence;
  }
  return std::clamp(1.0 - disbelief, base, 1.0);
}

double resistance(const AgentMind& mind, std::string_view target, Interval window, ResistanceMode mode) {
  const auto members = component_nodes(mind, target, window);
  const auto reps = mind.representations();
  double acc = mode == ResistanceMode::min ? 1.0 : 0.0;
  for (EntityId n : members) {
    const double d = reps[n].confidence;
    switch (mode) {
      case ResistanceMode::mean: acc += d; break;
      case ResistanceMode::min: acc = std::min(acc, d); break;
      case ResistanceMode::max: acc = std::max(acc, d); break;
    }
  }
  return mode == ResistanceMode::mean ? acc / static_cast<double>(members.size()) : acc;
}

}  // namespace mindgraph
