#include "swd/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "swd/error.hpp"

namespace swd {

namespace {

std::string window_source_id(const Window& window) {
    const std::string base = window.parent->id.empty()
                                 ? (window.parent->channel.empty() ? "signal"
                                                                   : window.parent->channel)
                                 : window.parent->id;
    return base + "@" + std::to_string(window.start_index);
}

}  // namespace

MleEstimate gaussian_mle(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("insufficient samples: Gaussian MLE needs >= 2, got " +
                                    std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw std::invalid_argument("non-finite sample at index " + std::to_string(i));
        }
    }

    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mu = sum / n;

    double ss = 0.0;
    for (double v : values) ss += (v - mu) * (v - mu);
    return MleEstimate{mu, std::sqrt(ss / n)};
}

double log_likelihood(std::span<const double> values, double mu, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
    const double n = static_cast<double>(values.size());
    const double log_norm = std::log(sigma * std::sqrt(2.0 * std::numbers::pi));
    double quad = 0.0;
    for (double v : values) {
        const double z = (v - mu) / sigma;
        quad += 0.5 * z * z;
    }
    return -n * log_norm - quad;
}

FeatureVector extract(const Window& window, const MaConfig& config) {
    const Residual residual = ma_residual(window, config);
    const MleEstimate est = gaussian_mle(residual.values);
    return FeatureVector{est.mu, est.sigma, window_source_id(window), window.parent->label};
}

FeatureVector extract_raw(const Window& window) {
    const MleEstimate est = gaussian_mle(window.samples());
    return FeatureVector{est.mu, est.sigma, window_source_id(window), window.parent->label};
}

Normalizer fit_normalizer(std::span<const FeatureVector> train_features, NormKind kind) {
    if (train_features.size() < 2) {
        throw std::invalid_argument("normalizer needs >= 2 training features");
    }

    Normalizer nz;
    nz.kind = kind;
    const double n = static_cast<double>(train_features.size());

    if (kind == NormKind::ZScore) {
        double mu_sum = 0.0, sigma_sum = 0.0;
        for (const auto& fv : train_features) {
            mu_sum += fv.mu;
            sigma_sum += fv.sigma;
        }
        nz.mu_mean = mu_sum / n;
        nz.sigma_mean = sigma_sum / n;

        double mu_ss = 0.0, sigma_ss = 0.0;
        for (const auto& fv : train_features) {
            mu_ss += (fv.mu - nz.mu_mean) * (fv.mu - nz.mu_mean);
            sigma_ss += (fv.sigma - nz.sigma_mean) * (fv.sigma - nz.sigma_mean);
        }
        nz.mu_std = std::sqrt(mu_ss / n);
        nz.sigma_std = std::sqrt(sigma_ss / n);
    } else {
        auto [mu_min, mu_max] = std::minmax_element(
            train_features.begin(), train_features.end(),
            [](const auto& a, const auto& b) { return a.mu < b.mu; });
        auto [sg_min, sg_max] = std::minmax_element(
            train_features.begin(), train_features.end(),
            [](const auto& a, const auto& b) { return a.sigma < b.sigma; });
        nz.mu_mean = mu_min->mu;
        nz.mu_std = mu_max->mu - mu_min->mu;
        nz.sigma_mean = sg_min->sigma;
        nz.sigma_std = sg_max->sigma - sg_min->sigma;
    }

    if (nz.mu_std <= 0.0 || nz.sigma_std <= 0.0) {
        throw DegenerateDataError("degenerate training features: zero spread in " +
                                  std::string(nz.mu_std <= 0.0 ? "mu" : "sigma"));
    }
    return nz;
}

std::array<double, 2> normalize(const Normalizer& nz, const FeatureVector& fv) {
    return {(fv.mu - nz.mu_mean) / nz.mu_std, (fv.sigma - nz.sigma_mean) / nz.sigma_std};
}

}  // namespace swd
