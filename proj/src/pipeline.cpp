#include "swd/pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include "swd/error.hpp"

namespace swd {

namespace {

void extract_one(const Signal& raw_signal, const ExtractOptions& options,
                 FeatureVector& residual_out, FeatureVector& raw_out) {
    const Signal filtered = apply_filters(raw_signal, options.filter);
    const Window window = whole_signal_window(filtered);
    raw_out = extract_raw(window);
    residual_out = extract(window, options.ma);
    // The filtered parent dies here; keep only the id-based provenance.
    raw_out.source_id = raw_signal.id.empty() ? raw_out.source_id : raw_signal.id;
    residual_out.source_id = raw_out.source_id;
}

}  // namespace

CorpusFeatures extract_corpus_features(std::span<const Signal> signals,
                                       const ExtractOptions& options) {
    options.ma.validate();
    CorpusFeatures out;
    out.residual.resize(signals.size());
    out.raw.resize(signals.size());
    for (std::size_t i = 0; i < signals.size(); ++i) {
        extract_one(signals[i], options, out.residual[i], out.raw[i]);
    }
    return out;
}

CorpusFeatures extract_corpus_features_openmp(std::span<const Signal> signals,
                                              const ExtractOptions& options) {
    options.ma.validate();
    CorpusFeatures out;
    out.residual.resize(signals.size());
    out.raw.resize(signals.size());
    const auto n = static_cast<std::int64_t>(signals.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        extract_one(signals[i], options, out.residual[i], out.raw[i]);
    }
    return out;
}

namespace {

Detection score_window(const Window& window, const Signal& source, const ModelFile& model,
                       double threshold) {
    const FeatureVector fv = extract(window, model.ma);
    const Prediction pred = predict(model.net, model.normalizer, fv, threshold);
    Detection d;
    d.id = source.id.empty() ? source.channel : source.id;
    d.start_sample = window.start_index;
    d.start_s = static_cast<double>(window.start_index) / source.fs;
    d.score = pred.score;
    d.cls = pred.cls;
    return d;
}

}  // namespace

std::vector<Detection> detect_signal(const Signal& signal, const ModelFile& model,
                                     double window_s, double hop_s, double threshold) {
    const Signal filtered = apply_filters(signal, model.filter);
    const std::vector<Window> windows = segment(filtered, window_s, hop_s);
    std::vector<Detection> out(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
        out[i] = score_window(windows[i], signal, model, threshold);
    }
    return out;
}

std::vector<Detection> detect_signal_openmp(const Signal& signal, const ModelFile& model,
                                            double window_s, double hop_s, double threshold) {
    const Signal filtered = apply_filters(signal, model.filter);
    const std::vector<Window> windows = segment(filtered, window_s, hop_s);
    std::vector<Detection> out(windows.size());
    const auto n = static_cast<std::int64_t>(windows.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        out[i] = score_window(windows[i], signal, model, threshold);
    }
    return out;
}

namespace {

SplitEval evaluate_subset(const ModelFile& model, std::span<const FeatureVector> features,
                          const std::vector<std::size_t>& indices, const std::string& name,
                          double threshold) {
    std::vector<double> scores, targets;
    std::vector<ClassLabel> predictions, labels;
    scores.reserve(indices.size());
    for (std::size_t i : indices) {
        const FeatureVector& fv = features[i];
        if (!fv.label) throw std::invalid_argument("evaluation features must be labeled");
        const Prediction pred = predict(model.net, model.normalizer, fv, threshold);
        scores.push_back(pred.score);
        predictions.push_back(pred.cls);
        labels.push_back(*fv.label);
        targets.push_back(*fv.label == ClassLabel::SWD ? 1.0 : 0.0);
    }

    SplitEval se;
    se.split = name;
    se.n = indices.size();
    se.cm = confusion(predictions, labels);
    se.rates = metrics(se.cm);
    se.roc = roc(scores, labels);
    se.error_hist = error_histogram(scores, targets);
    return se;
}

FeatureDiagnostics diagnose(std::span<const FeatureVector> features) {
    FeatureDiagnostics d;
    d.stats = descriptive_stats(features);

    std::vector<double> mu1, mu0, sg1, sg0;
    for (const auto& fv : features) {
        if (fv.label == ClassLabel::SWD) {
            mu1.push_back(fv.mu);
            sg1.push_back(fv.sigma);
        } else {
            mu0.push_back(fv.mu);
            sg0.push_back(fv.sigma);
        }
    }
    d.d_mu = effect_size(mu1, mu0);
    d.d_sigma = effect_size(sg1, sg0);
    return d;
}

}  // namespace

EvalSummary evaluate_model(const ModelFile& model, std::span<const FeatureVector> residual,
                           std::span<const FeatureVector> raw, const std::string& splits,
                           double threshold) {
    if (residual.empty()) throw std::invalid_argument("no features to evaluate");
    if (!raw.empty() && raw.size() != residual.size()) {
        throw std::invalid_argument("raw/residual feature counts differ");
    }

    EvalSummary summary;
    summary.threshold = threshold;

    const SplitIndices split = split_indices(residual.size(), model.seed, model.split);
    std::vector<std::size_t> overall(residual.size());
    for (std::size_t i = 0; i < overall.size(); ++i) overall[i] = i;

    const auto want = [&](const std::string& name) {
        return splits == "each" || splits == name;
    };
    if (splits != "each" && splits != "train" && splits != "val" && splits != "test" &&
        splits != "overall") {
        throw std::invalid_argument("unknown split \"" + splits +
                                    "\" (expected train|val|test|overall|each)");
    }

    if (want("train"))
        summary.splits.push_back(evaluate_subset(model, residual, split.train, "train", threshold));
    if (want("val"))
        summary.splits.push_back(evaluate_subset(model, residual, split.val, "val", threshold));
    if (want("test"))
        summary.splits.push_back(evaluate_subset(model, residual, split.test, "test", threshold));
    if (want("overall"))
        summary.splits.push_back(evaluate_subset(model, residual, overall, "overall", threshold));

    summary.post_ma = diagnose(residual);
    if (!raw.empty()) summary.pre_ma = diagnose(raw);
    return summary;
}

}  // namespace swd
