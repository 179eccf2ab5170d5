#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mindgraph/tvg.hpp"

namespace mindgraph {

class TvgFormatError : public std::runtime_error {
 public:
  TvgFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Text format:
//   tvg <n_entities> <t_a> <t_b|inf>
//   u v t1 t2 [label]
// Blank lines and lines starting with '#' are ignored.

[[nodiscard]] TimeVaryingGraph read_tvg(std::istream& in);
[[nodiscard]] TimeVaryingGraph read_tvg_file(const std::string& path);

/// Interactions sorted by (t1, u, v, t2, label); endpoints written as stored.
void write_tvg(std::ostream& out, const TimeVaryingGraph& g);

}  // namespace mindgraph
