#pragma once

namespace sentibt {

/// Switch between the parallel kernel and its serial reference; both must
/// produce identical results.
enum class ExecutionMode { serial, parallel };

}  // namespace sentibt
