#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swd/ann.hpp"
#include "swd/datagen.hpp"
#include "swd/eval.hpp"
#include "swd/features.hpp"
#include "swd/filters.hpp"
#include "swd/moving_average.hpp"
#include "swd/signal.hpp"

namespace swd {

inline constexpr int kCorpusFormatVersion = 1;
inline constexpr int kFeaturesFormatVersion = 1;
inline constexpr int kModelFormatVersion = 1;
inline constexpr int kConfigFormatVersion = 1;
inline constexpr int kReportFormatVersion = 1;

/// Everything a run needs; persisted as a single JSON document.
struct RunConfig {
    MaConfig ma;
    FilterConfig filter;
    TrainConfig train;
    GenConfig gen;
};

/// FNV-1a 64 over the canonical JSON form, as "fnv1a64:<hex>".
std::string config_digest(const RunConfig& config);

struct CorpusMeta {
    double fs = 256.0;
    double duration_s = 20.0;
    std::string source;       // free-form provenance note
    std::string produced_by;  // exact flag set of the producing command
    std::string config_digest;
};

struct CorpusFile {
    CorpusMeta meta;
    std::vector<Signal> signals;
};

/// CSV, one signal per record, samples as a quoted space-separated list at
/// full precision. Round-trips sample values losslessly.
void write_corpus(std::span<const Signal> signals, const std::string& path,
                  const CorpusMeta& meta);
CorpusFile read_corpus(const std::string& path);

struct FeaturesMeta {
    std::string kind = "residual";  // "residual" (post-MA) or "raw" (pre-MA)
    MaConfig ma;
    std::string produced_by;
    std::string config_digest;
};

struct FeaturesFile {
    FeaturesMeta meta;
    std::vector<FeatureVector> features;
};

void write_features(std::span<const FeatureVector> features, const std::string& path,
                    const FeaturesMeta& meta);
FeaturesFile read_features(const std::string& path);

/// Self-describing model document; round-trips bit-exactly.
struct ModelFile {
    Network net;
    Normalizer normalizer;
    MaConfig ma;
    FilterConfig filter;
    std::uint64_t seed = 0;
    std::array<double, 3> split = {0.70, 0.15, 0.15};
    TrainConfig train;
    std::string config_digest;
    std::string produced_by;
};

void write_model(const ModelFile& model, const std::string& path);
ModelFile read_model(const std::string& path);

void write_config(const RunConfig& config, const std::string& path,
                  const std::string& produced_by);
RunConfig read_config(const std::string& path);

/// Per-split evaluation plus corpus-level feature diagnostics.
struct SplitEval {
    std::string split;  // "train", "val", "test", "overall"
    std::size_t n = 0;
    ConfusionMatrix cm;
    MetricsReport rates;
    RocCurve roc;
    Histogram error_hist;
};

struct FeatureDiagnostics {
    DescriptiveStats stats;
    EffectSize d_mu;
    EffectSize d_sigma;
};

struct EvalSummary {
    std::vector<SplitEval> splits;
    FeatureDiagnostics post_ma;                 // on the features the model consumes
    std::optional<FeatureDiagnostics> pre_ma;   // available when raw features are known
    double threshold = 0.5;
};

void write_eval_report(const EvalSummary& summary, const std::string& path,
                       const std::string& config_digest, const std::string& produced_by);
EvalSummary read_eval_report(const std::string& path);

void write_train_report(const TrainReport& report, const std::string& path,
                        const std::string& config_digest, const std::string& produced_by);

void write_roc_csv(const RocCurve& curve, const std::string& path,
                   const std::string& config_digest, const std::string& produced_by);

/// One scored window of the detect sweep.
struct Detection {
    std::string id;           // source signal id
    std::size_t start_sample = 0;
    double start_s = 0.0;
    double score = 0.0;
    ClassLabel cls = ClassLabel::NonSWD;
};

struct DetectionsMeta {
    double window_s = 20.0;
    double hop_s = 20.0;
    double threshold = 0.5;
    std::string produced_by;
    std::string config_digest;
};

void write_detections_csv(std::span<const Detection> detections, const std::string& path,
                          const DetectionsMeta& meta);

}  // namespace swd
