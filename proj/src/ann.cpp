#include "swd/ann.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "swd/error.hpp"
#include "swd/rng.hpp"

namespace swd {

double sigmoid(double eta) {
    return 1.0 / (1.0 + std::exp(-eta));
}

void TrainConfig::validate() const {
    if (n_hidden < 1) throw std::invalid_argument("n_hidden must be >= 1");
    if (learning_rate <= 0.0) throw std::invalid_argument("learning rate must be positive");
    if (max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");
    if (patience < 1) throw std::invalid_argument("patience must be >= 1");
    for (double f : split) {
        if (f <= 0.0) throw std::invalid_argument("split fractions must be positive");
    }
    const double sum = split[0] + split[1] + split[2];
    if (std::fabs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("split fractions must sum to 1, got " + std::to_string(sum));
    }
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::Patience: return "patience";
        case StopReason::MaxEpochs: return "max_epochs";
        case StopReason::GradientFloor: return "gradient_floor";
    }
    return "unknown";
}

namespace {

void check_finite_input(const std::array<double, 2>& input) {
    if (!std::isfinite(input[0]) || !std::isfinite(input[1])) {
        throw std::invalid_argument("non-finite network input");
    }
}

struct ForwardState {
    std::vector<double> hidden;
    double output;
};

ForwardState forward_state(const Network& net, const std::array<double, 2>& input) {
    ForwardState st;
    st.hidden.resize(net.n_hidden);
    double eta_out = net.b_out;
    for (int j = 0; j < net.n_hidden; ++j) {
        const double eta = net.w_in[2 * j] * input[0] + net.w_in[2 * j + 1] * input[1] +
                           net.b_in[j];
        st.hidden[j] = sigmoid(eta);
        eta_out += net.w_out[j] * st.hidden[j];
    }
    st.output = sigmoid(eta_out);
    return st;
}

}  // namespace

double forward(const Network& net, const std::array<double, 2>& input) {
    check_finite_input(input);
    return forward_state(net, input).output;
}

double loss(const Network& net, std::span<const Example> batch) {
    if (batch.empty()) throw std::invalid_argument("loss over empty batch");
    double sum = 0.0;
    for (const Example& ex : batch) {
        const double delta = forward(net, ex.input);
        sum += (delta - ex.target) * (delta - ex.target);
    }
    return sum / static_cast<double>(batch.size());
}

double Gradient::norm() const {
    double ss = b_out * b_out;
    for (double v : w_in) ss += v * v;
    for (double v : b_in) ss += v * v;
    for (double v : w_out) ss += v * v;
    return std::sqrt(ss);
}

Gradient backprop_grad(const Network& net, std::span<const Example> batch) {
    if (batch.empty()) throw std::invalid_argument("gradient over empty batch");

    Gradient g;
    g.w_in.assign(net.w_in.size(), 0.0);
    g.b_in.assign(net.b_in.size(), 0.0);
    g.w_out.assign(net.w_out.size(), 0.0);
    g.b_out = 0.0;

    const double inv_n = 1.0 / static_cast<double>(batch.size());
    for (const Example& ex : batch) {
        check_finite_input(ex.input);
        const ForwardState st = forward_state(net, ex.input);

        // d(mean squared error)/d(output pre-activation)
        const double d_out = 2.0 * inv_n * (st.output - ex.target) * st.output *
                             (1.0 - st.output);
        g.b_out += d_out;
        for (int j = 0; j < net.n_hidden; ++j) {
            g.w_out[j] += d_out * st.hidden[j];
            const double d_hidden = d_out * net.w_out[j] * st.hidden[j] * (1.0 - st.hidden[j]);
            g.b_in[j] += d_hidden;
            g.w_in[2 * j] += d_hidden * ex.input[0];
            g.w_in[2 * j + 1] += d_hidden * ex.input[1];
        }
    }
    return g;
}

Network init_network(int n_hidden, std::uint64_t seed) {
    if (n_hidden < 1) throw std::invalid_argument("n_hidden must be >= 1");
    Network net;
    net.n_hidden = n_hidden;
    net.w_in.resize(2 * static_cast<std::size_t>(n_hidden));
    net.b_in.resize(n_hidden);
    net.w_out.resize(n_hidden);

    Xoshiro256pp rng(seed);
    for (auto& w : net.w_in) w = rng.uniform(-0.5, 0.5);
    for (auto& b : net.b_in) b = rng.uniform(-0.5, 0.5);
    for (auto& w : net.w_out) w = rng.uniform(-0.5, 0.5);
    net.b_out = rng.uniform(-0.5, 0.5);
    return net;
}

SplitIndices split_indices(std::size_t n, std::uint64_t seed,
                           const std::array<double, 3>& fractions) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    // Fisher-Yates with the run seed; the shuffle stream is independent of
    // the weight-init stream (separate splitmix derivation).
    Xoshiro256pp rng(splitmix64_at(seed, 1));
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(order[i - 1], order[j]);
    }

    const auto n_train = static_cast<std::size_t>(std::floor(fractions[0] * static_cast<double>(n)));
    const auto n_val = static_cast<std::size_t>(std::floor(fractions[1] * static_cast<double>(n)));

    SplitIndices split;
    split.train.assign(order.begin(), order.begin() + n_train);
    split.val.assign(order.begin() + n_train, order.begin() + n_train + n_val);
    split.test.assign(order.begin() + n_train + n_val, order.end());
    return split;
}

namespace {

std::vector<Example> gather_examples(std::span<const FeatureVector> features,
                                     const std::vector<std::size_t>& indices,
                                     const Normalizer& nz) {
    std::vector<Example> batch;
    batch.reserve(indices.size());
    for (std::size_t i : indices) {
        const FeatureVector& fv = features[i];
        batch.push_back(Example{normalize(nz, fv), fv.label == ClassLabel::SWD ? 1.0 : 0.0});
    }
    return batch;
}

void check_split_has_both_classes(std::span<const FeatureVector> features,
                                  const std::vector<std::size_t>& indices,
                                  const std::string& name) {
    bool has_pos = false, has_neg = false;
    for (std::size_t i : indices) {
        if (features[i].label == ClassLabel::SWD) has_pos = true;
        else has_neg = true;
    }
    if (!has_pos || !has_neg) {
        throw DegenerateDataError("degenerate split: " + name + " split is missing the " +
                                  (has_pos ? "nSWD" : "SWD") + " class");
    }
}

void apply_update(Network& net, const Gradient& g, double lr) {
    for (std::size_t i = 0; i < net.w_in.size(); ++i) net.w_in[i] -= lr * g.w_in[i];
    for (std::size_t i = 0; i < net.b_in.size(); ++i) net.b_in[i] -= lr * g.b_in[i];
    for (std::size_t i = 0; i < net.w_out.size(); ++i) net.w_out[i] -= lr * g.w_out[i];
    net.b_out -= lr * g.b_out;
}

constexpr double kGradientFloor = 1e-7;

}  // namespace

TrainOutput train(std::span<const FeatureVector> features, const TrainConfig& cfg) {
    cfg.validate();
    if (features.size() < 10) {
        throw std::invalid_argument("training needs >= 10 labeled examples, got " +
                                    std::to_string(features.size()));
    }
    for (const auto& fv : features) {
        if (!fv.label) throw std::invalid_argument("training features must be labeled");
    }

    const SplitIndices split = split_indices(features.size(), cfg.seed, cfg.split);
    check_split_has_both_classes(features, split.train, "train");
    check_split_has_both_classes(features, split.val, "validation");
    check_split_has_both_classes(features, split.test, "test");

    std::vector<FeatureVector> train_features;
    train_features.reserve(split.train.size());
    for (std::size_t i : split.train) train_features.push_back(features[i]);
    const Normalizer nz = fit_normalizer(train_features, cfg.normalizer);

    const std::vector<Example> train_batch = gather_examples(features, split.train, nz);
    const std::vector<Example> val_batch = gather_examples(features, split.val, nz);
    const std::vector<Example> test_batch = gather_examples(features, split.test, nz);

    Network net = init_network(cfg.n_hidden, cfg.seed);

    TrainReport report;
    report.stop_reason = StopReason::MaxEpochs;

    Network best_net = net;
    double best_val = std::numeric_limits<double>::infinity();
    int streak = 0;  // consecutive validation-loss increases
    double prev_val = std::numeric_limits<double>::infinity();

    Gradient grad = backprop_grad(net, train_batch);
    for (int epoch = 0; epoch <= cfg.max_epochs; ++epoch) {
        if (epoch > 0) {
            apply_update(net, grad, cfg.learning_rate);
            grad = backprop_grad(net, train_batch);
        }

        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_loss = loss(net, train_batch);
        rec.val_loss = loss(net, val_batch);
        rec.test_loss = loss(net, test_batch);
        rec.gradient_norm = grad.norm();
        report.epochs.push_back(rec);

        if (rec.val_loss < best_val) {
            best_val = rec.val_loss;
            best_net = net;
            report.best_epoch = epoch;
        }

        if (epoch > 0) {
            streak = rec.val_loss > prev_val ? streak + 1 : 0;
            if (streak >= cfg.patience) {
                report.stop_reason = StopReason::Patience;
                break;
            }
        }
        prev_val = rec.val_loss;

        if (rec.gradient_norm < kGradientFloor) {
            report.stop_reason = StopReason::GradientFloor;
            break;
        }
    }

    return TrainOutput{best_net, nz, report};
}

Prediction predict(const Network& net, const Normalizer& nz, const FeatureVector& fv,
                   double threshold) {
    const double score = forward(net, normalize(nz, fv));
    return Prediction{score >= threshold ? ClassLabel::SWD : ClassLabel::NonSWD, score};
}

}  // namespace swd
