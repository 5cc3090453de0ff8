#include "swd/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swd {

std::string to_string(ClassLabel label) {
    return label == ClassLabel::SWD ? "SWD" : "nSWD";
}

std::optional<ClassLabel> parse_label(std::string_view text) {
    if (text == "SWD") return ClassLabel::SWD;
    if (text == "nSWD") return ClassLabel::NonSWD;
    return std::nullopt;
}

std::vector<Window> segment(const Signal& signal, double duration_s, double hop_s) {
    if (signal.fs <= 0.0) throw std::invalid_argument("sampling rate must be positive");
    if (duration_s <= 0.0) throw std::invalid_argument("window duration must be positive");
    if (hop_s <= 0.0) throw std::invalid_argument("hop must be positive");

    const auto win_len = static_cast<std::size_t>(std::llround(duration_s * signal.fs));
    const auto hop = static_cast<std::size_t>(std::llround(hop_s * signal.fs));
    if (win_len == 0 || hop == 0)
        throw std::invalid_argument("window and hop must span at least one sample");

    const std::size_t n = signal.samples.size();
    if (n < win_len) {
        throw std::invalid_argument("signal too short: need " + std::to_string(win_len) +
                                    " samples, have " + std::to_string(n));
    }

    std::vector<Window> windows;
    for (std::size_t start = 0; start + win_len <= n; start += hop) {
        windows.push_back(Window{&signal, start, win_len});
    }
    return windows;
}

Window whole_signal_window(const Signal& signal) {
    if (signal.samples.empty()) throw std::invalid_argument("signal is empty");
    return Window{&signal, 0, signal.samples.size()};
}

}  // namespace swd
