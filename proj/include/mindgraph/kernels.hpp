#pragma once

// Data-parallel kernels. Every kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp that must return
// identical results; the dispatching overloads pick one by Backend.

#include <span>
#include <string_view>
#include <vector>

#include "mindgraph/backend.hpp"
#include "mindgraph/dynamics.hpp"
#include "mindgraph/tvg.hpp"

namespace mindgraph::kernels {

namespace serial {

/// For each candidate, whether a journey inside `window` leads to some target.
std::vector<char> reaches_any(const TimeVaryingGraph& g, std::span<const EntityId> candidates,
                              std::span<const EntityId> targets, Interval window);

/// tolerance() for every agent on the population topic; NaN for agents
/// that do not hold the topic.
std::vector<double> tolerances(const Population& pop, Interval window, const DynamicsParams& params);

/// Sharing of every entry against all the others, O(n^2).
std::vector<double> sharing_all(std::span<const double> values, double delta);

}  // namespace serial

namespace omp {

std::vector<char> reaches_any(const TimeVaryingGraph& g, std::span<const EntityId> candidates,
                              std::span<const EntityId> targets, Interval window);
std::vector<double> tolerances(const Population& pop, Interval window, const DynamicsParams& params);
std::vector<double> sharing_all(std::span<const double> values, double delta);

/// Threads the OpenMP kernels will use.
int thread_count();

}  // namespace omp

inline std::vector<char> reaches_any(Backend b, const TimeVaryingGraph& g, std::span<const EntityId> candidates,
                                     std::span<const EntityId> targets, Interval window) {
  return b == Backend::serial ? serial::reaches_any(g, candidates, targets, window)
                              : omp::reaches_any(g, candidates, targets, window);
}

inline std::vector<double> tolerances(Backend b, const Population& pop, Interval window,
                                      const DynamicsParams& params) {
  return b == Backend::serial ? serial::tolerances(pop, window, params) : omp::tolerances(pop, window, params);
}

inline std::vector<double> sharing_all(Backend b, std::span<const double> values, double delta) {
  return b == Backend::serial ? serial::sharing_all(values, delta) : omp::sharing_all(values, delta);
}

}  // namespace mindgraph::kernels
