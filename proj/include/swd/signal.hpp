#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swd {

enum class ClassLabel { SWD, NonSWD };

std::string to_string(ClassLabel label);
std::optional<ClassLabel> parse_label(std::string_view text);

/// One channel's samples (microvolts) at a fixed sampling rate.
struct Signal {
    std::vector<double> samples;
    double fs = 256.0;                 // Hz, > 0
    std::string channel;               // e.g. "Fp1"; metadata only
    std::optional<ClassLabel> label;
    std::string patient_id;
    std::string id;                    // corpus record id, empty if ad hoc

    double duration_s() const { return static_cast<double>(samples.size()) / fs; }
};

/// A view into a contiguous stretch of a Signal. The parent must outlive the
/// window.
struct Window {
    const Signal* parent = nullptr;
    std::size_t start_index = 0;
    std::size_t length_samples = 0;

    double duration_s() const { return static_cast<double>(length_samples) / parent->fs; }

    std::span<const double> samples() const {
        return std::span<const double>(parent->samples).subspan(start_index, length_samples);
    }
};

/// Tiles the signal into windows of `duration_s` every `hop_s` seconds, in
/// chronological order. A trailing stretch shorter than one window is
/// dropped. Throws std::invalid_argument ("signal too short") if not even
/// one window fits, with the required vs. available sample counts.
std::vector<Window> segment(const Signal& signal, double duration_s, double hop_s);

/// Window spanning the whole signal; the per-signal feature path.
Window whole_signal_window(const Signal& signal);

}  // namespace swd
