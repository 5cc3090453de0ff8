// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "swd/datagen.hpp"
#include "swd/io.hpp"
#include "swd/pipeline.hpp"
#include "swd/rng.hpp"
#include "swd/stats.hpp"

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("[%s] %d. %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1. gradient correctness ------------------------------------------------

double* param_at(swd::Network& net, std::size_t i) {
    const std::size_t nw = net.w_in.size();
    const std::size_t nb = net.b_in.size();
    const std::size_t no = net.w_out.size();
    if (i < nw) return &net.w_in[i];
    if (i < nw + nb) return &net.b_in[i - nw];
    if (i < nw + nb + no) return &net.w_out[i - nw - nb];
    return &net.b_out;
}

double grad_at(const swd::Gradient& g, std::size_t i) {
    const std::size_t nw = g.w_in.size();
    const std::size_t nb = g.b_in.size();
    const std::size_t no = g.w_out.size();
    if (i < nw) return g.w_in[i];
    if (i < nw + nb) return g.b_in[i - nw];
    if (i < nw + nb + no) return g.w_out[i - nw - nb];
    return g.b_out;
}

void criterion_gradient() {
    const auto t0 = std::chrono::steady_clock::now();
    swd::Xoshiro256pp rng(1001);
    const double step = 1e-5;
    bool ok = true;
    double worst = 0.0;

    for (int trial = 0; trial < 20; ++trial) {
        const int n_hidden = 1 + static_cast<int>(rng.below(10));
        swd::Network net = swd::init_network(n_hidden, rng.next());
        std::vector<swd::Example> batch(2 + rng.below(16));
        for (auto& ex : batch) {
            ex.input = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
            ex.target = rng.uniform01() < 0.5 ? 0.0 : 1.0;
        }

        const swd::Gradient analytic = swd::backprop_grad(net, batch);
        const std::size_t n_params = net.w_in.size() + net.b_in.size() + net.w_out.size() + 1;
        for (std::size_t p = 0; p < n_params; ++p) {
            double* value = param_at(net, p);
            const double saved = *value;
            *value = saved + step;
            const double up = swd::loss(net, batch);
            *value = saved - step;
            const double down = swd::loss(net, batch);
            *value = saved;

            const double fd = (up - down) / (2.0 * step);
            const double an = grad_at(analytic, p);
            const double rel = std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), 1e-4});
            worst = std::max(worst, rel);
            ok = ok && rel <= 1e-6;
        }
    }

    const double dt = elapsed_s(t0);
    ok = ok && dt < 5.0;
    char detail[96];
    std::snprintf(detail, sizeof detail, "worst relative error %.2e, %.2f s", worst, dt);
    report(1, "backprop matches central finite differences", ok, detail);
}

// ---- 2. MA residual vs brute force ------------------------------------------

void criterion_ma_oracle() {
    swd::Xoshiro256pp rng(1002);
    bool ok = true;
    double worst = 0.0;

    for (std::size_t n = 3; n <= 32; ++n) {
        std::vector<double> x(n);
        for (auto& v : x) v = rng.uniform(-100.0, 100.0);
        for (int h2 = 1; 2 * h2 + 1 <= static_cast<int>(n); ++h2) {
            for (int h1 = 0; h1 < h2; ++h1) {
                const auto got = swd::ma_residual_values(x, swd::MaConfig{h1, h2});
                const auto expected = oracle::ma_residual(x, h1, h2);
                if (got.size() != expected.size() ||
                    got.size() != n - 2 * static_cast<std::size_t>(h2)) {
                    ok = false;
                    continue;
                }
                for (std::size_t i = 0; i < got.size(); ++i) {
                    const double rel =
                        std::abs(got[i] - expected[i]) / std::max(std::abs(expected[i]), 100.0);
                    worst = std::max(worst, rel);
                    ok = ok && rel <= 1e-12;
                }
            }
        }
    }

    // Shift invariance: the additive constant cancels.
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 20 + rng.below(180);
        std::vector<double> x(n);
        for (auto& v : x) v = rng.uniform(-50.0, 50.0);
        const double b = rng.uniform(-1000.0, 1000.0);
        std::vector<double> shifted(n);
        for (std::size_t i = 0; i < n; ++i) shifted[i] = x[i] + b;

        const int h2 = 1 + static_cast<int>(rng.below((n - 1) / 2));
        const int h1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(h2)));
        const swd::MaConfig config{h1, h2};
        const auto base = swd::ma_residual_values(x, config);
        const auto moved = swd::ma_residual_values(shifted, config);
        const double scale = std::abs(b) + 50.0;
        for (std::size_t i = 0; i < base.size(); ++i) {
            const double rel = std::abs(moved[i] - base[i]) / scale;
            worst = std::max(worst, rel);
            ok = ok && rel <= 1e-12;
        }
    }

    char detail[64];
    std::snprintf(detail, sizeof detail, "worst relative error %.2e", worst);
    report(2, "MA residual equals the brute-force oracle; shifts cancel", ok, detail);
}

// ---- 3. MLE maximality + std identity ----------------------------------------

void criterion_mle() {
    swd::Xoshiro256pp rng(1003);
    bool ok = true;

    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 16 + rng.below(240);
        std::vector<double> x(n);
        const double mu_true = rng.uniform(-10.0, 10.0);
        const double sigma_true = rng.uniform(0.5, 5.0);
        for (auto& v : x) v = rng.normal(mu_true, sigma_true);

        const auto est = swd::gaussian_mle(x);
        const double best = swd::log_likelihood(x, est.mu, est.sigma);
        for (double delta : {0.1, -0.1, 0.01, -0.01}) {
            ok = ok && best >= swd::log_likelihood(x, est.mu + delta, est.sigma);
            ok = ok && best >= swd::log_likelihood(x, est.mu, est.sigma + delta);
        }

        // sigma (1/n) = sample std (1/(n-1)) * sqrt((n-1)/n)
        const double sample_std = std::sqrt(swd::variance_unbiased(x));
        const double expected =
            sample_std * std::sqrt((static_cast<double>(n) - 1.0) / static_cast<double>(n));
        ok = ok && std::abs(est.sigma - expected) <= 1e-12 * std::max(1.0, expected);
    }

    report(3, "Gaussian MLE maximizes the log-likelihood; std identity holds", ok);
}

// ---- 4. AUC vs Mann-Whitney U -------------------------------------------------

void criterion_auc() {
    swd::Xoshiro256pp rng(1004);
    bool ok = true;
    double worst = 0.0;

    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 10 + rng.below(191);
        std::vector<double> scores(n);
        std::vector<swd::ClassLabel> labels(n);
        std::vector<bool> positive(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Half the trials use a coarse grid to force tied scores.
            scores[i] = trial % 2 == 0 ? std::round(rng.uniform01() * 8.0) / 8.0
                                       : rng.uniform01();
            positive[i] = rng.uniform01() < 0.5;
        }
        positive[0] = true;
        positive[1] = false;
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = positive[i] ? swd::ClassLabel::SWD : swd::ClassLabel::NonSWD;
        }

        const double got = swd::roc(scores, labels).auc;
        const double expected = oracle::auc_u_statistic(scores, positive);
        const double err = std::abs(got - expected);
        worst = std::max(worst, err);
        ok = ok && err <= 1e-9;
    }

    char detail[64];
    std::snprintf(detail, sizeof detail, "worst |AUC - U/(n1*n0)| = %.2e", worst);
    report(4, "trapezoidal AUC equals the Mann-Whitney U statistic", ok, detail);
}

// ---- 5. metric identities + Table-style reconstruction ------------------------

void criterion_metrics() {
    swd::Xoshiro256pp rng(1005);
    bool ok = true;

    for (int trial = 0; trial < 1000; ++trial) {
        swd::ConfusionMatrix cm;
        cm.tp = 1 + rng.below(1000);
        cm.fn = 1 + rng.below(1000);
        cm.tn = 1 + rng.below(1000);
        cm.fp = 1 + rng.below(1000);
        const auto r = swd::metrics(cm);
        ok = ok && std::abs(*r.tpr + *r.fnr - 1.0) <= 1e-12;
        ok = ok && std::abs(*r.tnr + *r.fpr - 1.0) <= 1e-12;
        ok = ok && std::abs(*r.accuracy + *r.misclassification - 1.0) <= 1e-12;
    }

    // Reconstruction of the published headline rates from a consistent
    // balanced confusion matrix; agreement to one decimal (percent).
    const swd::ConfusionMatrix cm{382, 375, 15, 8};
    const auto r = swd::metrics(cm);
    const auto round1 = [](double pct) { return std::round(pct * 10.0) / 10.0; };
    ok = ok && std::abs(round1(*r.tpr * 100.0) - 98.0) <= 0.1 + 1e-9;
    ok = ok && std::abs(round1(*r.tnr * 100.0) - 96.2) <= 0.1 + 1e-9;
    ok = ok && std::abs(round1(*r.accuracy * 100.0) - 97.2) <= 0.1 + 1e-9;

    char detail[96];
    std::snprintf(detail, sizeof detail, "reconstruction: sen %.1f%%, spe %.1f%%, acc %.1f%%",
                  *r.tpr * 100.0, *r.tnr * 100.0, *r.accuracy * 100.0);
    report(5, "metric identities hold; reconstructed rates match to one decimal", ok, detail);
}

// ---- 6..8. end-to-end pipeline -------------------------------------------------

struct PipelineArtifacts {
    std::string corpus_bytes;
    std::string model_bytes;
    std::string report_bytes;
    double test_accuracy = 0.0;
    double test_auc = 0.0;
    double d_sigma_pre = 0.0;
    double d_sigma_post = 0.0;
    double sigma_mean_swd = 0.0;
    double sigma_mean_nswd = 0.0;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PipelineArtifacts run_pipeline(const std::filesystem::path& dir, const std::string& tag) {
    swd::RunConfig config;
    config.gen.seed = 42;
    config.train.seed = 42;

    const auto corpus = swd::gen_corpus_openmp(config.gen);

    const std::string corpus_path = (dir / ("corpus-" + tag + ".csv")).string();
    swd::CorpusMeta corpus_meta;
    corpus_meta.fs = config.gen.fs;
    corpus_meta.duration_s = config.gen.duration_s;
    corpus_meta.source = "acceptance";
    corpus_meta.config_digest = swd::config_digest(config);
    swd::write_corpus(corpus, corpus_path, corpus_meta);

    const swd::ExtractOptions options{config.ma, config.filter};
    const auto features = swd::extract_corpus_features_openmp(corpus, options);

    const auto result = swd::train(features.residual, config.train);

    swd::ModelFile model;
    model.net = result.net;
    model.normalizer = result.normalizer;
    model.ma = config.ma;
    model.filter = config.filter;
    model.seed = config.train.seed;
    model.split = config.train.split;
    model.train = config.train;
    model.config_digest = swd::config_digest(config);
    const std::string model_path = (dir / ("model-" + tag + ".json")).string();
    swd::write_model(model, model_path);

    const auto summary = swd::evaluate_model(model, features.residual, features.raw, "each", 0.5);
    const std::string report_path = (dir / ("eval-" + tag + ".json")).string();
    swd::write_eval_report(summary, report_path, model.config_digest, "acceptance");

    PipelineArtifacts artifacts;
    artifacts.corpus_bytes = slurp(corpus_path);
    artifacts.model_bytes = slurp(model_path);
    artifacts.report_bytes = slurp(report_path);
    for (const auto& se : summary.splits) {
        if (se.split == "test") {
            artifacts.test_accuracy = se.rates.accuracy.value_or(0.0);
            artifacts.test_auc = se.roc.auc;
        }
    }
    artifacts.d_sigma_post = summary.post_ma.d_sigma.cohens_d;
    artifacts.d_sigma_pre = summary.pre_ma ? summary.pre_ma->d_sigma.cohens_d : 0.0;
    artifacts.sigma_mean_swd = summary.post_ma.stats.swd.sigma_mean;
    artifacts.sigma_mean_nswd = summary.post_ma.stats.nswd.sigma_mean;
    return artifacts;
}

void criteria_pipeline(const std::filesystem::path& dir) {
    const auto t0 = std::chrono::steady_clock::now();
    const PipelineArtifacts first = run_pipeline(dir, "run1");
    const double dt = elapsed_s(t0);

    {
        const bool ok = first.test_accuracy >= 0.95 && first.test_auc >= 0.97 && dt < 60.0;
        char detail[96];
        std::snprintf(detail, sizeof detail, "test accuracy %.1f%%, AUC %.4f, %.1f s",
                      first.test_accuracy * 100.0, first.test_auc, dt);
        report(6, "end-to-end synthetic pipeline hits the accuracy/AUC target", ok, detail);
    }

    {
        const bool direction = first.sigma_mean_swd > first.sigma_mean_nswd;
        const bool improved = std::abs(first.d_sigma_post) > std::abs(first.d_sigma_pre);
        char detail[128];
        std::snprintf(detail, sizeof detail,
                      "|d_sigma| %.2f -> %.2f; sigma mean SWD %.1f vs nSWD %.1f",
                      std::abs(first.d_sigma_pre), std::abs(first.d_sigma_post),
                      first.sigma_mean_swd, first.sigma_mean_nswd);
        report(7, "MA improves the sigma effect size; SWD sigma dominates", direction && improved,
               detail);
    }

    {
        const PipelineArtifacts second = run_pipeline(dir, "run2");
        const bool ok = first.corpus_bytes == second.corpus_bytes &&
                        first.model_bytes == second.model_bytes &&
                        first.report_bytes == second.report_bytes &&
                        !first.corpus_bytes.empty();
        report(8, "rerunning the seeded pipeline reproduces identical artifacts", ok);
    }
}

// ---- 9. throughput --------------------------------------------------------------

void criterion_throughput(const std::filesystem::path& dir) {
    swd::RunConfig config;
    config.gen.seed = 42;
    config.train.seed = 42;
    config.gen.n_per_class = 40;

    const auto corpus = swd::gen_corpus_openmp(config.gen);
    const swd::ExtractOptions options{config.ma, config.filter};
    const auto features = swd::extract_corpus_features_openmp(corpus, options);
    const auto result = swd::train(features.residual, config.train);

    swd::ModelFile model;
    model.net = result.net;
    model.normalizer = result.normalizer;
    model.ma = config.ma;
    model.filter = config.filter;
    model.seed = config.train.seed;
    model.split = config.train.split;
    model.train = config.train;

    // One hour of single-channel background at 256 Hz.
    swd::GenConfig hour = config.gen;
    hour.duration_s = 3600.0;
    const swd::Signal signal = swd::gen_background(hour, 0);

    const auto t0 = std::chrono::steady_clock::now();
    const auto detections = swd::detect_signal_openmp(signal, model, 20.0, 1.0, 0.5);
    const double dt = elapsed_s(t0);

    const bool ok = dt < 36.0 && detections.size() == 3581;
    char detail[96];
    std::snprintf(detail, sizeof detail, "%zu windows over 3600 s in %.2f s (%.0fx real-time)",
                  detections.size(), dt, 3600.0 / dt);
    report(9, "detect runs at >= 100x real-time on an hour of signal", ok, detail);

    swd::DetectionsMeta meta;
    meta.window_s = 20.0;
    meta.hop_s = 1.0;
    meta.threshold = 0.5;
    meta.produced_by = "acceptance";
    swd::write_detections_csv(detections, (dir / "detections.csv").string(), meta);
}

}  // namespace

int main() {
    const auto dir = std::filesystem::temp_directory_path() / "swd-acceptance";
    std::filesystem::create_directories(dir);

    criterion_gradient();
    criterion_ma_oracle();
    criterion_mle();
    criterion_auc();
    criterion_metrics();
    criteria_pipeline(dir);
    criterion_throughput(dir);

    std::filesystem::remove_all(dir);

    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
