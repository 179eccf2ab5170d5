#pragma once

namespace mindgraph {

/// Which implementation of the data-parallel kernels to use. Both produce
/// identical results; `serial` is the reference.
enum class Backend { serial, openmp };

}  // namespace mindgraph
