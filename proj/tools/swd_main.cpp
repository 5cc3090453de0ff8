// Command-line surface for the SWD detection pipeline:
//   simulate -> extract -> train -> eval, plus detect and roc.
// Exit codes: 0 success, 1 internal error, 2 usage error, 3 input error,
// 4 degenerate-data error.

#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swd/error.hpp"
#include "swd/pipeline.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitDegenerate = 4;

std::string join_argv(int argc, char** argv) {
    std::string joined;
    for (int i = 0; i < argc; ++i) {
        if (i) joined += ' ';
        const std::string arg = argv[i];
        if (arg.find(' ') != std::string::npos) joined += "\"" + arg + "\"";
        else joined += arg;
    }
    return joined;
}

struct CommonState {
    std::string produced_by;
    std::string config_path;
    swd::RunConfig config;

    void load_config() {
        if (!config_path.empty()) config = swd::read_config(config_path);
    }
    std::string digest() const { return swd::config_digest(config); }
};

void print_rates(const swd::SplitEval& se) {
    const auto pct = [](const std::optional<double>& r) {
        if (!r) return std::string("  n/a");
        char buf[16];
        std::snprintf(buf, sizeof buf, "%5.1f", *r * 100.0);
        return std::string(buf);
    };
    std::printf("  %-8s n=%-5zu tp=%llu tn=%llu fp=%llu fn=%llu\n", se.split.c_str(), se.n,
                static_cast<unsigned long long>(se.cm.tp),
                static_cast<unsigned long long>(se.cm.tn),
                static_cast<unsigned long long>(se.cm.fp),
                static_cast<unsigned long long>(se.cm.fn));
    std::printf("           sen=%s%%  spe=%s%%  pre=%s%%  acc=%s%%  auc=%6.4f\n",
                pct(se.rates.tpr).c_str(), pct(se.rates.tnr).c_str(),
                pct(se.rates.precision).c_str(), pct(se.rates.accuracy).c_str(), se.roc.auc);
}

swd::CorpusFeatures extract_from_corpus(const std::string& corpus_path,
                                        const swd::ExtractOptions& options,
                                        std::vector<swd::Signal>* signals_out = nullptr) {
    swd::CorpusFile corpus = swd::read_corpus(corpus_path);
    const swd::CorpusFeatures features = swd::extract_corpus_features_openmp(corpus.signals, options);
    if (signals_out) *signals_out = std::move(corpus.signals);
    return features;
}

int run_simulate(CommonState& st, const std::string& out_path) {
    st.config.gen.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<swd::Signal> corpus = swd::gen_corpus_openmp(st.config.gen);
    const auto t1 = std::chrono::steady_clock::now();

    swd::CorpusMeta meta;
    meta.fs = st.config.gen.fs;
    meta.duration_s = st.config.gen.duration_s;
    meta.source = "datagen seed=" + std::to_string(st.config.gen.seed);
    meta.config_digest = st.digest();
    meta.produced_by = st.produced_by;
    swd::write_corpus(corpus, out_path, meta);

    std::printf("simulate: %zu signals (%d per class) in %.2f s -> %s\n", corpus.size(),
                st.config.gen.n_per_class,
                std::chrono::duration<double>(t1 - t0).count(), out_path.c_str());
    return 0;
}

int run_extract(CommonState& st, const std::string& corpus_path, const std::string& out_path,
                const std::string& raw_out_path) {
    const swd::ExtractOptions options{st.config.ma, st.config.filter};
    const swd::CorpusFeatures features = extract_from_corpus(corpus_path, options);

    swd::FeaturesMeta meta;
    meta.kind = "residual";
    meta.ma = st.config.ma;
    meta.config_digest = st.digest();
    meta.produced_by = st.produced_by;
    swd::write_features(features.residual, out_path, meta);
    if (!raw_out_path.empty()) {
        meta.kind = "raw";
        swd::write_features(features.raw, raw_out_path, meta);
    }

    std::printf("extract: %zu feature vectors (h1=%d, h2=%d) -> %s\n", features.residual.size(),
                st.config.ma.h1, st.config.ma.h2, out_path.c_str());
    return 0;
}

int run_train(CommonState& st, const std::string& features_path, const std::string& corpus_path,
              const std::string& model_out, const std::string& report_out) {
    std::vector<swd::FeatureVector> features;
    swd::MaConfig used_ma = st.config.ma;
    if (!features_path.empty()) {
        swd::FeaturesFile file = swd::read_features(features_path);
        features = std::move(file.features);
        if (file.meta.kind == "residual" && file.meta.ma.h2 > 0) used_ma = file.meta.ma;
    } else {
        const swd::ExtractOptions options{st.config.ma, st.config.filter};
        features = extract_from_corpus(corpus_path, options).residual;
    }

    const swd::TrainOutput result = swd::train(features, st.config.train);

    swd::ModelFile model;
    model.net = result.net;
    model.normalizer = result.normalizer;
    model.ma = used_ma;
    model.filter = st.config.filter;
    model.seed = st.config.train.seed;
    model.split = st.config.train.split;
    model.train = st.config.train;
    model.config_digest = st.digest();
    model.produced_by = st.produced_by;
    swd::write_model(model, model_out);
    if (!report_out.empty()) {
        swd::write_train_report(result.report, report_out, st.digest(), st.produced_by);
    }

    const swd::EpochRecord& best = result.report.epochs[result.report.best_epoch];
    std::printf("train: %zu examples, stop=%s after %zu epochs\n", features.size(),
                swd::to_string(result.report.stop_reason).c_str(),
                result.report.epochs.size() - 1);
    std::printf("  best epoch %d: train %.4f  val %.4f  test %.4f  |grad| %.2e\n", best.epoch,
                best.train_loss, best.val_loss, best.test_loss, best.gradient_norm);
    std::printf("  model -> %s\n", model_out.c_str());
    return 0;
}

int run_eval(CommonState& st, const std::string& model_path, const std::string& corpus_path,
             const std::string& features_path, const std::string& split, double threshold,
             const std::string& out_path, const std::string& roc_csv_path) {
    const swd::ModelFile model = swd::read_model(model_path);

    std::vector<swd::FeatureVector> residual, raw;
    if (!corpus_path.empty()) {
        const swd::ExtractOptions options{model.ma, model.filter};
        swd::CorpusFeatures features = extract_from_corpus(corpus_path, options);
        residual = std::move(features.residual);
        raw = std::move(features.raw);
    } else {
        residual = swd::read_features(features_path).features;
    }

    const swd::EvalSummary summary =
        swd::evaluate_model(model, residual, raw, split, threshold);
    swd::write_eval_report(summary, out_path, model.config_digest, st.produced_by);

    std::printf("eval: threshold %.2f\n", threshold);
    for (const auto& se : summary.splits) print_rates(se);
    std::printf("  post-MA Cohen's d: mu %+.3f (p=%.3g)  sigma %+.3f (p=%.3g)\n",
                summary.post_ma.d_mu.cohens_d, summary.post_ma.d_mu.p_value,
                summary.post_ma.d_sigma.cohens_d, summary.post_ma.d_sigma.p_value);
    if (summary.pre_ma) {
        std::printf("  pre-MA  Cohen's d: mu %+.3f (p=%.3g)  sigma %+.3f (p=%.3g)\n",
                    summary.pre_ma->d_mu.cohens_d, summary.pre_ma->d_mu.p_value,
                    summary.pre_ma->d_sigma.cohens_d, summary.pre_ma->d_sigma.p_value);
    }
    std::printf("  report -> %s\n", out_path.c_str());

    if (!roc_csv_path.empty()) {
        const swd::SplitEval* chosen = nullptr;
        for (const auto& se : summary.splits) {
            if (se.split == (split == "each" ? "overall" : split)) chosen = &se;
        }
        if (chosen) swd::write_roc_csv(chosen->roc, roc_csv_path, model.config_digest, st.produced_by);
    }
    return 0;
}

int run_detect(CommonState& st, const std::string& model_path, const std::string& corpus_path,
               double window_s, double hop_s, double threshold, const std::string& out_path,
               bool bench) {
    const swd::ModelFile model = swd::read_model(model_path);
    const swd::CorpusFile corpus = swd::read_corpus(corpus_path);

    std::vector<swd::Detection> all;
    std::size_t total_samples = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (const swd::Signal& signal : corpus.signals) {
        const auto detections =
            swd::detect_signal_openmp(signal, model, window_s, hop_s, threshold);
        all.insert(all.end(), detections.begin(), detections.end());
        total_samples += signal.samples.size();
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double elapsed = std::chrono::duration<double>(t1 - t0).count();

    swd::DetectionsMeta meta;
    meta.window_s = window_s;
    meta.hop_s = hop_s;
    meta.threshold = threshold;
    meta.config_digest = model.config_digest;
    meta.produced_by = st.produced_by;
    swd::write_detections_csv(all, out_path, meta);

    std::size_t hits = 0;
    for (const auto& d : all) hits += d.cls == swd::ClassLabel::SWD;
    std::printf("detect: %zu windows scored, %zu flagged SWD -> %s\n", all.size(), hits,
                out_path.c_str());
    if (bench) {
        const double audio_s = static_cast<double>(total_samples) / corpus.meta.fs;
        std::printf("  bench: %.1f s of signal in %.3f s (%.0fx real-time)\n", audio_s, elapsed,
                    audio_s / elapsed);
    }
    return 0;
}

int run_roc(CommonState& st, const std::string& model_path, const std::string& features_path,
            const std::string& out_path) {
    const swd::ModelFile model = swd::read_model(model_path);
    const swd::FeaturesFile file = swd::read_features(features_path);

    std::vector<double> scores;
    std::vector<swd::ClassLabel> labels;
    for (const auto& fv : file.features) {
        if (!fv.label) throw std::invalid_argument("roc needs labeled features");
        scores.push_back(swd::predict(model.net, model.normalizer, fv).score);
        labels.push_back(*fv.label);
    }
    const swd::RocCurve curve = swd::roc(scores, labels);
    swd::write_roc_csv(curve, out_path, model.config_digest, st.produced_by);
    std::printf("roc: %zu points, AUC %.6f -> %s\n", curve.points.size(), curve.auc,
                out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spike-and-wave discharge detection pipeline"};
    app.require_subcommand(1);

    CommonState st;
    st.produced_by = join_argv(argc, argv);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic labeled corpus");
    std::string sim_out = "corpus.csv";
    bool seed_given = false, n_given = false;
    std::uint64_t seed_flag = 0;
    int n_per_class_flag = 0;
    simulate->add_option("--config", st.config_path, "Run configuration JSON");
    simulate->add_option("--seed", seed_flag, "Corpus seed")->each([&](const std::string&) {
        seed_given = true;
    });
    simulate->add_option("--n-per-class", n_per_class_flag, "Signals per class")
        ->each([&](const std::string&) { n_given = true; });
    simulate->add_option("--out", sim_out, "Output corpus CSV");

    // extract
    auto* extract = app.add_subcommand("extract", "Extract (mu, sigma) features from a corpus");
    std::string ext_corpus, ext_out = "features.csv", ext_raw_out;
    std::optional<int> ma_h1, ma_h2;
    std::optional<double> lowpass_hz, highpass_hz;
    bool no_lowpass = false;
    extract->add_option("--config", st.config_path, "Run configuration JSON");
    extract->add_option("--corpus", ext_corpus, "Input corpus CSV")->required();
    extract->add_option("--ma-h1", ma_h1, "Short MA half-window (samples)");
    extract->add_option("--ma-h2", ma_h2, "Long MA half-window (samples)");
    extract->add_flag("--no-lowpass", no_lowpass, "Disable the 30 Hz low-pass stage");
    extract->add_option("--lowpass-hz", lowpass_hz, "Low-pass cutoff (Hz)");
    extract->add_option("--highpass-hz", highpass_hz, "Enable first-order high-pass at cutoff (Hz)");
    extract->add_option("--out", ext_out, "Output features CSV (post-MA)");
    extract->add_option("--raw-out", ext_raw_out, "Also write pre-MA features CSV");

    // train
    auto* train_cmd = app.add_subcommand("train", "Train the classifier");
    std::string tr_features, tr_corpus, tr_model_out = "model.json", tr_report_out;
    std::optional<std::uint64_t> tr_seed;
    std::optional<int> tr_hidden, tr_epochs, tr_patience;
    std::optional<double> tr_lr;
    train_cmd->add_option("--config", st.config_path, "Run configuration JSON");
    train_cmd->add_option("--features", tr_features, "Input features CSV (post-MA)");
    train_cmd->add_option("--corpus", tr_corpus, "Input corpus CSV (features extracted in-process)");
    train_cmd->add_option("--seed", tr_seed, "Training seed");
    train_cmd->add_option("--n-hidden", tr_hidden, "Hidden layer size");
    train_cmd->add_option("--learning-rate", tr_lr, "Gradient descent step size");
    train_cmd->add_option("--max-epochs", tr_epochs, "Epoch cap");
    train_cmd->add_option("--patience", tr_patience, "Early-stop patience");
    train_cmd->add_option("--model-out", tr_model_out, "Output model JSON");
    train_cmd->add_option("--report-out", tr_report_out, "Output train report JSON");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model");
    std::string ev_model, ev_corpus, ev_features, ev_split = "each", ev_out = "eval.json",
                ev_roc_csv;
    double ev_threshold = 0.5;
    eval_cmd->add_option("--model", ev_model, "Model JSON")->required();
    eval_cmd->add_option("--corpus", ev_corpus, "Corpus CSV (enables pre/post-MA comparison)");
    eval_cmd->add_option("--features", ev_features, "Features CSV");
    eval_cmd->add_option("--split", ev_split, "train|val|test|overall|each");
    eval_cmd->add_option("--threshold", ev_threshold, "Decision threshold");
    eval_cmd->add_option("--out", ev_out, "Output report JSON");
    eval_cmd->add_option("--roc-csv", ev_roc_csv, "Also write ROC points CSV");

    // detect
    auto* detect_cmd = app.add_subcommand("detect", "Sliding-window detection over a corpus");
    std::string dt_model, dt_corpus, dt_out = "detections.csv";
    double dt_window = 20.0, dt_hop = 20.0, dt_threshold = 0.5;
    bool dt_bench = false;
    detect_cmd->add_option("--model", dt_model, "Model JSON")->required();
    detect_cmd->add_option("--corpus", dt_corpus, "Corpus CSV")->required();
    detect_cmd->add_option("--window-s", dt_window, "Window length (s)");
    detect_cmd->add_option("--hop-s", dt_hop, "Hop (s); defaults to non-overlapping");
    detect_cmd->add_option("--threshold", dt_threshold, "Decision threshold");
    detect_cmd->add_option("--out", dt_out, "Output detections CSV");
    detect_cmd->add_flag("--bench", dt_bench, "Report throughput vs. real-time");

    // roc
    auto* roc_cmd = app.add_subcommand("roc", "ROC curve + AUC for a feature set");
    std::string rc_model, rc_features, rc_out = "roc.csv";
    roc_cmd->add_option("--model", rc_model, "Model JSON")->required();
    roc_cmd->add_option("--features", rc_features, "Features CSV")->required();
    roc_cmd->add_option("--out", rc_out, "Output ROC CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        st.load_config();

        if (simulate->parsed()) {
            if (seed_given) st.config.gen.seed = seed_flag;
            if (n_given) st.config.gen.n_per_class = n_per_class_flag;
            return run_simulate(st, sim_out);
        }
        if (extract->parsed()) {
            if (ma_h1) st.config.ma.h1 = *ma_h1;
            if (ma_h2) st.config.ma.h2 = *ma_h2;
            if (no_lowpass) st.config.filter.lowpass_enabled = false;
            if (lowpass_hz) st.config.filter.lowpass_cutoff_hz = *lowpass_hz;
            if (highpass_hz) {
                st.config.filter.highpass_enabled = true;
                st.config.filter.highpass_cutoff_hz = *highpass_hz;
            }
            st.config.ma.validate();
            return run_extract(st, ext_corpus, ext_out, ext_raw_out);
        }
        if (train_cmd->parsed()) {
            if (tr_features.empty() == tr_corpus.empty()) {
                std::cerr << "train: exactly one of --features / --corpus is required\n";
                return kExitUsage;
            }
            if (tr_seed) st.config.train.seed = *tr_seed;
            if (tr_hidden) st.config.train.n_hidden = *tr_hidden;
            if (tr_lr) st.config.train.learning_rate = *tr_lr;
            if (tr_epochs) st.config.train.max_epochs = *tr_epochs;
            if (tr_patience) st.config.train.patience = *tr_patience;
            st.config.train.validate();
            return run_train(st, tr_features, tr_corpus, tr_model_out, tr_report_out);
        }
        if (eval_cmd->parsed()) {
            if (ev_corpus.empty() && ev_features.empty()) {
                std::cerr << "eval: one of --corpus / --features is required\n";
                return kExitUsage;
            }
            return run_eval(st, ev_model, ev_corpus, ev_features, ev_split, ev_threshold, ev_out,
                            ev_roc_csv);
        }
        if (detect_cmd->parsed()) {
            return run_detect(st, dt_model, dt_corpus, dt_window, dt_hop, dt_threshold, dt_out,
                              dt_bench);
        }
        if (roc_cmd->parsed()) {
            return run_roc(st, rc_model, rc_features, rc_out);
        }
        return kExitUsage;
    } catch (const swd::IoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const swd::DegenerateDataError& e) {
        std::cerr << "degenerate data: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
