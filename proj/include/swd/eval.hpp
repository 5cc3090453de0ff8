#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swd/features.hpp"
#include "swd/signal.hpp"

namespace swd {

/// SWD is the positive class throughout.
struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + tn + fp + fn; }
    bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(std::span<const ClassLabel> predictions,
                          std::span<const ClassLabel> labels);

/// Rates are nullopt when their denominator is zero (undefined, not 0).
struct MetricsReport {
    std::optional<double> tpr;
    std::optional<double> tnr;
    std::optional<double> fpr;
    std::optional<double> fnr;
    std::optional<double> misclassification;
    std::optional<double> precision;
    std::optional<double> prevalence;
    std::optional<double> accuracy;
};

MetricsReport metrics(const ConfusionMatrix& cm);

struct RocPoint {
    double fpr;
    double tpr;
    double threshold;  // +inf at (0,0), -inf at (1,1)
};

struct RocCurve {
    std::vector<RocPoint> points;  // threshold descending
    double auc = 0.0;
};

/// Threshold sweep over all unique scores (classify positive when
/// score >= threshold), trapezoidal AUC - exact for finite samples and
/// equal to the Mann-Whitney U statistic with half credit for ties.
/// n_thresholds > 0 thins the emitted point list for plotting; the AUC is
/// always computed from the full sweep.
RocCurve roc(std::span<const double> scores, std::span<const ClassLabel> labels,
             std::size_t n_thresholds = 0);

struct Histogram {
    std::vector<double> edges;        // n_bins + 1, equal width over [min, max]
    std::vector<std::uint64_t> counts;  // n_bins, sums to n
};

/// Histogram of targets - outputs.
Histogram error_histogram(std::span<const double> outputs, std::span<const double> targets,
                          int n_bins = 20);

struct ClassStats {
    double mu_mean = 0.0;
    double mu_std = 0.0;     // 1/n form, consistent with the feature MLE
    double sigma_mean = 0.0;
    double sigma_std = 0.0;
    std::size_t count = 0;
};

struct DescriptiveStats {
    ClassStats swd;
    ClassStats nswd;
};

/// Per-class mean/std of the mu and sigma features. Requires >= 2 labeled
/// features per class.
DescriptiveStats descriptive_stats(std::span<const FeatureVector> features);

struct EffectSize {
    double cohens_d;
    double p_value;  // Welch two-sided
};

/// Cohen's d with the pooled (n-1)-weighted standard deviation, p-value from
/// Welch's t-test.
EffectSize effect_size(std::span<const double> class1, std::span<const double> class0);

}  // namespace swd
