#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swd/features.hpp"

namespace swd {

/// Single-hidden-layer sigmoid network over the 2-D (mu, sigma) input.
struct Network {
    int n_hidden = 0;
    std::vector<double> w_in;   // n_hidden x 2, row-major
    std::vector<double> b_in;   // n_hidden
    std::vector<double> w_out;  // n_hidden
    double b_out = 0.0;

    bool operator==(const Network&) const = default;
};

/// sigmoid(eta) = 1 / (1 + exp(-eta))
double sigmoid(double eta);

/// Hidden layer then single sigmoid output; strictly inside (0, 1) for
/// finite parameters.
double forward(const Network& net, const std::array<double, 2>& input);

struct Example {
    std::array<double, 2> input;
    double target;  // 1 = SWD, 0 = nSWD
};

/// Mean squared error over the batch.
double loss(const Network& net, std::span<const Example> batch);

struct Gradient {
    std::vector<double> w_in;
    std::vector<double> b_in;
    std::vector<double> w_out;
    double b_out = 0.0;

    double norm() const;  // L2 over all components
};

/// Exact analytic gradient of loss() with respect to every parameter.
Gradient backprop_grad(const Network& net, std::span<const Example> batch);

struct TrainConfig {
    int n_hidden = 10;
    double learning_rate = 0.1;
    int max_epochs = 100;
    int patience = 6;  // consecutive validation-loss increases before stopping
    std::uint64_t seed = 0;
    std::array<double, 3> split = {0.70, 0.15, 0.15};  // train/val/test
    NormKind normalizer = NormKind::ZScore;

    void validate() const;
};

struct EpochRecord {
    int epoch;  // 0 is the untrained network
    double train_loss;
    double val_loss;
    double test_loss;
    double gradient_norm;
};

enum class StopReason { Patience, MaxEpochs, GradientFloor };

std::string to_string(StopReason reason);

struct TrainReport {
    std::vector<EpochRecord> epochs;
    int best_epoch = 0;  // minimal validation loss, earliest on ties
    StopReason stop_reason = StopReason::MaxEpochs;
};

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
    std::vector<std::size_t> test;
};

/// Seeded shuffle + 70/15/15 partition (floor for train and val, remainder
/// to test). Deterministic in (n, seed, fractions).
SplitIndices split_indices(std::size_t n, std::uint64_t seed,
                           const std::array<double, 3>& fractions);

struct TrainOutput {
    Network net;
    Normalizer normalizer;
    TrainReport report;
};

/// Full-batch gradient descent with early stopping. Returns the best-epoch
/// snapshot. Deterministic: (features, cfg) -> bit-identical output.
/// Throws DegenerateDataError ("degenerate split") when any split lacks a
/// class.
TrainOutput train(std::span<const FeatureVector> features, const TrainConfig& cfg);

struct Prediction {
    ClassLabel cls;
    double score;
};

/// score = forward(net, normalize(nz, fv)); SWD iff score >= threshold.
Prediction predict(const Network& net, const Normalizer& nz, const FeatureVector& fv,
                   double threshold = 0.5);

/// Seed-driven initial network, weights uniform in [-0.5, 0.5].
Network init_network(int n_hidden, std::uint64_t seed);

}  // namespace swd
