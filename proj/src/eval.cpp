#include "swd/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "swd/error.hpp"
#include "swd/stats.hpp"

namespace swd {

ConfusionMatrix confusion(std::span<const ClassLabel> predictions,
                          std::span<const ClassLabel> labels) {
    if (predictions.size() != labels.size()) {
        throw std::invalid_argument("predictions/labels length mismatch: " +
                                    std::to_string(predictions.size()) + " vs " +
                                    std::to_string(labels.size()));
    }
    if (predictions.empty()) throw std::invalid_argument("confusion of empty input");

    ConfusionMatrix cm;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool truth = labels[i] == ClassLabel::SWD;
        const bool pred = predictions[i] == ClassLabel::SWD;
        if (truth && pred) ++cm.tp;
        else if (truth && !pred) ++cm.fn;
        else if (!truth && pred) ++cm.fp;
        else ++cm.tn;
    }
    return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw DegenerateDataError("metrics of an all-zero confusion matrix");

    const double tp = static_cast<double>(cm.tp);
    const double tn = static_cast<double>(cm.tn);
    const double fp = static_cast<double>(cm.fp);
    const double fn = static_cast<double>(cm.fn);
    const double total = static_cast<double>(cm.total());

    MetricsReport r;
    if (cm.tp + cm.fn > 0) {
        r.tpr = tp / (tp + fn);
        r.fnr = fn / (tp + fn);
    }
    if (cm.tn + cm.fp > 0) {
        r.tnr = tn / (tn + fp);
        r.fpr = fp / (tn + fp);
    }
    if (cm.tp + cm.fp > 0) r.precision = tp / (tp + fp);
    r.prevalence = (tp + fn) / total;
    r.accuracy = (tp + tn) / total;
    r.misclassification = (fp + fn) / total;
    return r;
}

RocCurve roc(std::span<const double> scores, std::span<const ClassLabel> labels,
             std::size_t n_thresholds) {
    if (scores.size() != labels.size()) {
        throw std::invalid_argument("scores/labels length mismatch");
    }
    std::size_t n_pos = 0, n_neg = 0;
    for (ClassLabel l : labels) (l == ClassLabel::SWD ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0) {
        throw DegenerateDataError("ROC needs both classes, got " + std::to_string(n_pos) +
                                  " positive / " + std::to_string(n_neg) + " negative");
    }

    // Sort by score descending; walking the list accumulates the curve one
    // unique threshold at a time.
    std::vector<std::size_t> order(scores.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });

    const double inf = std::numeric_limits<double>::infinity();
    RocCurve curve;
    curve.points.push_back(RocPoint{0.0, 0.0, inf});

    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double threshold = scores[order[i]];
        while (i < order.size() && scores[order[i]] == threshold) {
            (labels[order[i]] == ClassLabel::SWD ? tp : fp)++;
            ++i;
        }
        curve.points.push_back(RocPoint{static_cast<double>(fp) / static_cast<double>(n_neg),
                                        static_cast<double>(tp) / static_cast<double>(n_pos),
                                        threshold});
    }
    curve.points.push_back(RocPoint{1.0, 1.0, -inf});

    double auc = 0.0;
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        const RocPoint& a = curve.points[k - 1];
        const RocPoint& b = curve.points[k];
        auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    curve.auc = auc;

    // Optional thinning for plotting; endpoints always kept, AUC untouched.
    if (n_thresholds > 0 && curve.points.size() > n_thresholds + 2) {
        std::vector<RocPoint> thin;
        thin.push_back(curve.points.front());
        const std::size_t inner = curve.points.size() - 2;
        for (std::size_t k = 0; k < n_thresholds; ++k) {
            const std::size_t idx = 1 + (k * inner) / n_thresholds;
            if (thin.back().threshold != curve.points[idx].threshold) {
                thin.push_back(curve.points[idx]);
            }
        }
        thin.push_back(curve.points.back());
        curve.points = std::move(thin);
    }
    return curve;
}

Histogram error_histogram(std::span<const double> outputs, std::span<const double> targets,
                          int n_bins) {
    if (outputs.size() != targets.size()) {
        throw std::invalid_argument("outputs/targets length mismatch");
    }
    if (outputs.empty()) throw std::invalid_argument("error histogram of empty input");
    if (n_bins < 1) throw std::invalid_argument("n_bins must be >= 1");

    std::vector<double> errors(outputs.size());
    for (std::size_t i = 0; i < outputs.size(); ++i) errors[i] = targets[i] - outputs[i];

    const auto [lo_it, hi_it] = std::minmax_element(errors.begin(), errors.end());
    const double lo = *lo_it;
    const double hi = *hi_it;

    Histogram hist;
    hist.counts.assign(static_cast<std::size_t>(n_bins), 0);
    hist.edges.resize(static_cast<std::size_t>(n_bins) + 1);
    const double width = (hi - lo) / n_bins;
    for (int b = 0; b <= n_bins; ++b) hist.edges[b] = lo + width * b;
    hist.edges.back() = hi;

    for (double e : errors) {
        std::size_t bin = 0;
        if (width > 0.0) {
            bin = std::min(static_cast<std::size_t>((e - lo) / width),
                           static_cast<std::size_t>(n_bins - 1));
        }
        ++hist.counts[bin];
    }
    return hist;
}

namespace {

ClassStats class_stats(const std::vector<const FeatureVector*>& group) {
    std::vector<double> mus, sigmas;
    mus.reserve(group.size());
    sigmas.reserve(group.size());
    for (const FeatureVector* fv : group) {
        mus.push_back(fv->mu);
        sigmas.push_back(fv->sigma);
    }
    ClassStats st;
    st.count = group.size();
    st.mu_mean = mean(mus);
    st.mu_std = std::sqrt(variance_biased(mus));
    st.sigma_mean = mean(sigmas);
    st.sigma_std = std::sqrt(variance_biased(sigmas));
    return st;
}

}  // namespace

DescriptiveStats descriptive_stats(std::span<const FeatureVector> features) {
    std::vector<const FeatureVector*> swd, nswd;
    for (const auto& fv : features) {
        if (!fv.label) throw std::invalid_argument("descriptive stats need labeled features");
        (*fv.label == ClassLabel::SWD ? swd : nswd).push_back(&fv);
    }
    if (swd.size() < 2 || nswd.size() < 2) {
        throw DegenerateDataError("degenerate class: need >= 2 features per class, got " +
                                  std::to_string(swd.size()) + " SWD / " +
                                  std::to_string(nswd.size()) + " nSWD");
    }
    return DescriptiveStats{class_stats(swd), class_stats(nswd)};
}

EffectSize effect_size(std::span<const double> class1, std::span<const double> class0) {
    if (class1.size() < 2 || class0.size() < 2) {
        throw std::invalid_argument("effect size needs >= 2 values per class");
    }

    const double n1 = static_cast<double>(class1.size());
    const double n0 = static_cast<double>(class0.size());
    const double v1 = variance_unbiased(class1);
    const double v0 = variance_unbiased(class0);
    const double pooled =
        std::sqrt(((n1 - 1.0) * v1 + (n0 - 1.0) * v0) / (n1 + n0 - 2.0));
    if (pooled <= 0.0) {
        if (mean(class1) == mean(class0)) return EffectSize{0.0, 1.0};
        throw DegenerateDataError("effect size: zero pooled standard deviation");
    }

    const double d = (mean(class1) - mean(class0)) / pooled;
    const WelchResult welch = welch_t_test(class1, class0);
    return EffectSize{d, welch.p_value};
}

}  // namespace swd
