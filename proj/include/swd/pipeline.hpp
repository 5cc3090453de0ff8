#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swd/io.hpp"

namespace swd {

struct ExtractOptions {
    MaConfig ma;
    FilterConfig filter;
};

struct CorpusFeatures {
    std::vector<FeatureVector> residual;  // post-MA, what the classifier consumes
    std::vector<FeatureVector> raw;       // pre-MA, for before/after comparisons
};

/// Filter + residual + MLE for every signal, one feature pair per signal.
/// Serial reference kernel.
CorpusFeatures extract_corpus_features(std::span<const Signal> signals,
                                       const ExtractOptions& options);

/// OpenMP kernel, parallel over signals. Output is identical to the serial
/// reference (each signal's arithmetic is untouched).
CorpusFeatures extract_corpus_features_openmp(std::span<const Signal> signals,
                                              const ExtractOptions& options);

/// Sliding-window scoring of one signal with a trained model. Windows are
/// ordered by start sample. Serial reference kernel.
std::vector<Detection> detect_signal(const Signal& signal, const ModelFile& model,
                                     double window_s, double hop_s, double threshold);

/// OpenMP kernel, parallel over windows, deterministically ordered output.
std::vector<Detection> detect_signal_openmp(const Signal& signal, const ModelFile& model,
                                            double window_s, double hop_s, double threshold);

/// Scores + per-split evaluation battery for a labeled feature set. The
/// split is reconstructed from (model.seed, model.split) over the feature
/// order, so the set must match the one used at training time. `splits`
/// selects sections; "each" expands to train/val/test/overall.
EvalSummary evaluate_model(const ModelFile& model, std::span<const FeatureVector> residual,
                           std::span<const FeatureVector> raw,  // may be empty
                           const std::string& splits, double threshold = 0.5);

}  // namespace swd
