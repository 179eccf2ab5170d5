#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mindgraph/harness.hpp"

namespace mindgraph {

enum class OutputFormat { csv, json };

inline constexpr std::size_t kFullVectorLimit = 1024;

struct EmitOptions {
  bool force_full_vectors = false;  // otherwise only when n_agents <= kFullVectorLimit
  bool timestamp = true;            // json only
};

/// Raised when the sink stops accepting output. `partial()` tells whether
/// anything was written before the failure.
class EmitError : public std::runtime_error {
 public:
  EmitError(const std::string& what, bool partial) : std::runtime_error(what), partial_(partial) {}
  [[nodiscard]] bool partial() const noexcept { return partial_; }

 private:
  bool partial_;
};

[[nodiscard]] bool writes_full_vectors(const TrajectoryRecord& tr, const EmitOptions& options);

/// JSON document: config echo, seed, convergence, final metrics, samples.
[[nodiscard]] nlohmann::json summary_json(const TrajectoryRecord& tr, const EmitOptions& options = {});

/// csv: one row per sample, header `tick,mean,variance,clusters[,x_0..x_{n-1}]`.
/// json: summary_json pretty-printed. Throws std::invalid_argument for an
/// empty trajectory and EmitError on a failed sink.
void emit_results(const TrajectoryRecord& tr, OutputFormat format, std::ostream& sink,
                  const EmitOptions& options = {});

}  // namespace mindgraph
