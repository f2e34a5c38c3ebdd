#pragma once

namespace specweb {

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// identical results; the serial path exists for testing and benchmarking.
enum class Exec { Serial, Parallel };

}  // namespace specweb
