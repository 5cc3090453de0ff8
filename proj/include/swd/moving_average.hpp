#pragma once

#include <span>
#include <vector>

#include "swd/signal.hpp"

namespace swd {

/// Half-windows of the short (h1) and long (h2) two-sided moving averages.
/// A half-window h spans 2h+1 consecutive samples.
struct MaConfig {
    int h1 = 2;   // 5 samples at 256 Hz, spike scale (~20 ms)
    int h2 = 42;  // 85 samples, one period of a 3 Hz wave (~332 ms)

    /// Throws std::invalid_argument unless 0 <= h1 < h2.
    void validate() const;
};

/// Two-sided moving average with half-window h: output[k] is the mean of
/// values[k .. k+2h]. Edges are truncated, so the output has length n - 2h.
/// Direct summation; this is the reference kernel.
std::vector<double> moving_average(std::span<const double> values, int h);

/// Short MA minus long MA, both center-aligned on the original sample grid
/// and trimmed to the long MA's valid range (length L - 2*h2).
struct Residual {
    std::vector<double> values;
    Window source;
    MaConfig config;
};

Residual ma_residual(const Window& window, const MaConfig& config);

/// Span form of the residual for callers without a Signal at hand.
std::vector<double> ma_residual_values(std::span<const double> values, const MaConfig& config);

}  // namespace swd
