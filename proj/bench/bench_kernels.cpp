// Times the OpenMP kernels against their serial reference implementations:
// corpus generation, batch feature extraction, and the sliding-window
// detect sweep.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "swd/datagen.hpp"
#include "swd/pipeline.hpp"

namespace {

double time_s(const std::function<void()>& fn, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void row(const std::string& name, double serial_s, double parallel_s) {
    std::printf("%-28s serial %8.3f s   openmp %8.3f s   speedup %.2fx\n", name.c_str(),
                serial_s, parallel_s, serial_s / parallel_s);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial path\n\n");
#endif

    swd::GenConfig gen;
    gen.seed = 42;
    gen.n_per_class = 390;

    row("gen_corpus (780 signals)", time_s([&] { (void)swd::gen_corpus(gen); }),
        time_s([&] { (void)swd::gen_corpus_openmp(gen); }));

    const auto corpus = swd::gen_corpus_openmp(gen);
    const swd::ExtractOptions options{swd::MaConfig{}, swd::FilterConfig{}};

    row("extract_corpus_features",
        time_s([&] { (void)swd::extract_corpus_features(corpus, options); }),
        time_s([&] { (void)swd::extract_corpus_features_openmp(corpus, options); }));

    const auto features = swd::extract_corpus_features_openmp(corpus, options);
    swd::TrainConfig train_cfg;
    train_cfg.seed = 42;
    const auto trained = swd::train(features.residual, train_cfg);

    swd::ModelFile model;
    model.net = trained.net;
    model.normalizer = trained.normalizer;
    model.ma = options.ma;
    model.filter = options.filter;
    model.seed = train_cfg.seed;
    model.split = train_cfg.split;
    model.train = train_cfg;

    swd::GenConfig hour = gen;
    hour.duration_s = 3600.0;
    const swd::Signal signal = swd::gen_background(hour, 0);

    const double serial_detect =
        time_s([&] { (void)swd::detect_signal(signal, model, 20.0, 1.0, 0.5); });
    const double parallel_detect =
        time_s([&] { (void)swd::detect_signal_openmp(signal, model, 20.0, 1.0, 0.5); });
    row("detect (1 h, hop 1 s)", serial_detect, parallel_detect);
    std::printf("%-28s %.0fx real-time (openmp)\n", "", 3600.0 / parallel_detect);

    return 0;
}
