#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swd/moving_average.hpp"
#include "swd/signal.hpp"

namespace swd {

/// Gaussian location/scale of one windowed, MA-residualized signal.
struct FeatureVector {
    double mu = 0.0;
    double sigma = 0.0;             // >= 0; 0 only for a constant residual
    std::string source_id;
    std::optional<ClassLabel> label;
};

struct MleEstimate {
    double mu;
    double sigma;
};

/// Closed-form Gaussian MLE: mu is the arithmetic mean, sigma the biased
/// (1/n) standard deviation. Requires length >= 2 and finite samples.
MleEstimate gaussian_mle(std::span<const double> values);

/// Gaussian log-likelihood sum_i log f(p_i | mu, sigma^2). Requires
/// sigma > 0. Used to verify that the MLE maximizes it.
double log_likelihood(std::span<const double> values, double mu, double sigma);

/// gaussian_mle of the MA residual of the window, with provenance.
FeatureVector extract(const Window& window, const MaConfig& config);

/// gaussian_mle of the window samples themselves (pre-MA features).
FeatureVector extract_raw(const Window& window);

enum class NormKind { ZScore, MinMax };

/// Per-coordinate affine normalizer fitted on training-split features only.
/// For ZScore the fields hold mean/std; for MinMax they hold min/range.
struct Normalizer {
    NormKind kind = NormKind::ZScore;
    double mu_mean = 0.0;
    double mu_std = 1.0;
    double sigma_mean = 0.0;
    double sigma_std = 1.0;
};

/// Throws DegenerateDataError ("degenerate training features") when either
/// coordinate has zero spread. Requires >= 2 features.
Normalizer fit_normalizer(std::span<const FeatureVector> train_features,
                          NormKind kind = NormKind::ZScore);

std::array<double, 2> normalize(const Normalizer& nz, const FeatureVector& fv);

}  // namespace swd
