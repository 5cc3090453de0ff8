#include "swd/filters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swd {

void FilterConfig::validate(double fs) const {
    if (fs <= 0.0) throw std::invalid_argument("sampling rate must be positive");
    const double nyquist = fs / 2.0;
    if (lowpass_enabled && (lowpass_cutoff_hz <= 0.0 || lowpass_cutoff_hz >= nyquist)) {
        throw std::invalid_argument("low-pass cutoff must lie in (0, fs/2)");
    }
    if (highpass_enabled && (highpass_cutoff_hz <= 0.0 || highpass_cutoff_hz >= nyquist)) {
        throw std::invalid_argument("high-pass cutoff must lie in (0, fs/2); fs=" +
                                    std::to_string(fs));
    }
}

std::vector<double> lowpass_biquad(std::span<const double> values, double fs, double cutoff_hz) {
    if (fs <= 0.0 || cutoff_hz <= 0.0 || cutoff_hz >= fs / 2.0) {
        throw std::invalid_argument("low-pass cutoff must lie in (0, fs/2)");
    }

    // RBJ cookbook LPF with Butterworth Q.
    const double w0 = 2.0 * std::numbers::pi * cutoff_hz / fs;
    const double q = 1.0 / std::numbers::sqrt2;
    const double alpha = std::sin(w0) / (2.0 * q);
    const double cw = std::cos(w0);

    const double a0 = 1.0 + alpha;
    const double b0 = (1.0 - cw) / 2.0 / a0;
    const double b1 = (1.0 - cw) / a0;
    const double b2 = b0;
    const double a1 = -2.0 * cw / a0;
    const double a2 = (1.0 - alpha) / a0;

    std::vector<double> out(values.size());
    double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = values[i];
        const double y = b0 * x + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
        x2 = x1;
        x1 = x;
        y2 = y1;
        y1 = y;
        out[i] = y;
    }
    return out;
}

std::vector<double> highpass_first_order(std::span<const double> values, double fs,
                                         double cutoff_hz) {
    if (fs <= 0.0 || cutoff_hz <= 0.0 || cutoff_hz >= fs / 2.0) {
        throw std::invalid_argument("high-pass cutoff must lie in (0, fs/2)");
    }

    const double k = std::tan(std::numbers::pi * cutoff_hz / fs);
    const double b0 = 1.0 / (1.0 + k);
    const double b1 = -b0;
    const double a1 = (k - 1.0) / (k + 1.0);

    std::vector<double> out(values.size());
    double x1 = 0.0, y1 = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = values[i];
        const double y = b0 * x + b1 * x1 - a1 * y1;
        x1 = x;
        y1 = y;
        out[i] = y;
    }
    return out;
}

Signal apply_filters(const Signal& signal, const FilterConfig& config) {
    config.validate(signal.fs);
    Signal out = signal;
    if (config.lowpass_enabled) {
        out.samples = lowpass_biquad(out.samples, out.fs, config.lowpass_cutoff_hz);
    }
    if (config.highpass_enabled) {
        out.samples = highpass_first_order(out.samples, out.fs, config.highpass_cutoff_hz);
    }
    return out;
}

}  // namespace swd
