#include "swd/moving_average.hpp"

#include <stdexcept>
#include <string>

namespace swd {

void MaConfig::validate() const {
    if (h1 < 0 || h2 < 0) throw std::invalid_argument("MA half-windows must be >= 0");
    if (h1 >= h2) {
        throw std::invalid_argument("short MA half-window must be smaller than the long one (h1=" +
                                    std::to_string(h1) + ", h2=" + std::to_string(h2) + ")");
    }
}

std::vector<double> moving_average(std::span<const double> values, int h) {
    if (h < 0) throw std::invalid_argument("MA half-window must be >= 0");
    const std::size_t n = values.size();
    const std::size_t k = 2 * static_cast<std::size_t>(h) + 1;
    if (k > n) {
        throw std::invalid_argument("window exceeds series: 2h+1 = " + std::to_string(k) +
                                    " > " + std::to_string(n) + " samples");
    }

    std::vector<double> out(n - 2 * static_cast<std::size_t>(h));
    const double inv_k = 1.0 / static_cast<double>(k);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) sum += values[i + j];
        out[i] = sum * inv_k;
    }
    return out;
}

std::vector<double> ma_residual_values(std::span<const double> values, const MaConfig& config) {
    config.validate();
    const std::size_t n = values.size();
    if (2 * static_cast<std::size_t>(config.h2) + 1 > n) {
        throw std::invalid_argument("window exceeds series: 2h+1 = " +
                                    std::to_string(2 * config.h2 + 1) + " > " +
                                    std::to_string(n) + " samples");
    }

    const std::vector<double> short_ma = moving_average(values, config.h1);
    const std::vector<double> long_ma = moving_average(values, config.h2);

    // Both MAs are centered on the original grid; trimming the short one by
    // h2-h1 at each end lines the centers up.
    const std::size_t offset = static_cast<std::size_t>(config.h2 - config.h1);
    std::vector<double> residual(long_ma.size());
    for (std::size_t i = 0; i < residual.size(); ++i) {
        residual[i] = short_ma[i + offset] - long_ma[i];
    }
    return residual;
}

Residual ma_residual(const Window& window, const MaConfig& config) {
    return Residual{ma_residual_values(window.samples(), config), window, config};
}

}  // namespace swd
