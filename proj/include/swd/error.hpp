#pragma once

#include <stdexcept>

namespace swd {

/// Malformed, truncated or version-mismatched files.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Data that is structurally valid but statistically unusable
/// (single-class splits, zero-spread features, all-zero confusion matrices).
struct DegenerateDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace swd
