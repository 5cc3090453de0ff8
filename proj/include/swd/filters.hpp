#pragma once

#include <span>
#include <vector>

#include "swd/signal.hpp"

namespace swd {

/// Acquisition-style pre-filtering. The low-pass models the 30 Hz
/// anti-aliasing stage routinely applied to clinical EEG. The high-pass is
/// off by default and has no default cutoff; enabling it requires an
/// explicit cutoff below Nyquist.
struct FilterConfig {
    bool lowpass_enabled = true;
    double lowpass_cutoff_hz = 30.0;
    bool highpass_enabled = false;
    double highpass_cutoff_hz = 0.0;

    void validate(double fs) const;
};

/// Second-order Butterworth low-pass (bilinear transform biquad).
std::vector<double> lowpass_biquad(std::span<const double> values, double fs, double cutoff_hz);

/// First-order high-pass (bilinear transform).
std::vector<double> highpass_first_order(std::span<const double> values, double fs,
                                         double cutoff_hz);

/// Applies the enabled stages in order (low-pass, then high-pass) and
/// returns the filtered signal with metadata preserved.
Signal apply_filters(const Signal& signal, const FilterConfig& config);

}  // namespace swd
