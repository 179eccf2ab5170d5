#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mindgraph/journey.hpp"
#include "mindgraph/tvg.hpp"

namespace mindgraph {

using PropositionId = std::string;

/// Quadruplet {p, T_o, T_s, d_c} plus whether its truth can be verified at all.
struct EpistemicRepresentation {
  PropositionId proposition;
  std::optional<double> objective_truth;  // T_o; nullopt when unknown
  double perceived_truth = 0.0;           // T_s
  double confidence = 0.0;                // d_c
  bool verifiable = true;

  friend bool operator==(const EpistemicRepresentation&, const EpistemicRepresentation&) = default;
};

/// Throws std::invalid_argument unless every truth value and d_c lies in [0, 1]
/// and the proposition is nonempty.
void validate(const EpistemicRepresentation& r);

enum class RepresentationKind { knowledge, belief, opinion };

[[nodiscard]] std::string_view to_string(RepresentationKind kind) noexcept;

/// Total classification with precedence knowledge > opinion > belief:
/// knowledge when verifiable and T_o == T_s exactly, opinion when the truth
/// value is unverifiable or unknown, belief otherwise.
[[nodiscard]] RepresentationKind classify(const EpistemicRepresentation& r) noexcept;

/// Undirected support relation between two representations, active on [t1, t2).
struct SupportLink {
  PropositionId a;
  PropositionId b;
  double weight = 1.0;  // in (0, 1]
  Tick t1 = 0;
  Tick t2 = kForever;

  friend bool operator==(const SupportLink&, const SupportLink&) = default;
};

enum class ResistanceMode { mean, min, max };

/// One agent's epistemic representation graph. Node i of structure() is
/// representations()[i]. The structure is rebuilt whenever supports change,
/// so const access is safe from several threads.
class AgentMind {
 public:
  AgentMind() = default;
  explicit AgentMind(std::vector<EpistemicRepresentation> reps, std::vector<SupportLink> supports = {});

  void add_representation(EpistemicRepresentation r);
  void add_support(SupportLink link);
  /// Removes the first support equal to `link`; false if none matched.
  bool remove_support(const SupportLink& link);

  [[nodiscard]] bool holds(std::string_view p) const { return index_.find(p) != index_.end(); }
  [[nodiscard]] const EpistemicRepresentation& representation(std::string_view p) const;
  [[nodiscard]] std::span<const EpistemicRepresentation> representations() const noexcept { return reps_; }
  [[nodiscard]] std::span<const SupportLink> supports() const noexcept { return links_; }
  [[nodiscard]] const TimeVaryingGraph& structure() const noexcept { return structure_; }
  [[nodiscard]] EntityId node_of(std::string_view p) const;

  void set_perceived_truth(std::string_view p, double value);
  void set_confidence(std::string_view p, double value);

  /// Largest weight among supports on `e` active at t; 0 when none.
  [[nodiscard]] double support_weight(Edge e, Tick t) const;

  /// Last value stored by refresh_confidence, else the stored d_c.
  [[nodiscard]] double effective_confidence(std::string_view p) const;
  /// Computes confidence(*this, p, window) and stores it as p's effective confidence.
  double refresh_confidence(std::string_view p, Interval window);

 private:
  EpistemicRepresentation& mutable_representation(std::string_view p);
  void rebuild();

  std::vector<EpistemicRepresentation> reps_;
  std::map<PropositionId, EntityId, std::less<>> index_;
  std::vector<SupportLink> links_;
  std::vector<std::optional<double>> effective_;
  TimeVaryingGraph structure_{0, {0, kForever}};
};

/// Representations temporally connected to the stimulus inside `window`
/// (always including the stimulus), in node order.
/// Throws std::invalid_argument for an unknown stimulus.
[[nodiscard]] std::vector<PropositionId> activate(const AgentMind& mind, std::string_view stimulus,
                                                  Interval window);

/// Noisy-OR of the target's own d_c with each activated supporter's
/// weight * d_c, where the weight is taken on the edge through which the
/// foremost journey from the target enters the supporter.
[[nodiscard]] double confidence(const AgentMind& mind, std::string_view target, Interval window);

/// Aggregate of d_c over the activated component (mean by default).
[[nodiscard]] double resistance(const AgentMind& mind, std::string_view target, Interval window,
                                ResistanceMode mode = ResistanceMode::mean);

[[nodiscard]] std::string_view to_string(ResistanceMode mode) noexcept;

}  // namespace mindgraph
