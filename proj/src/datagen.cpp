#include "swd/datagen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "swd/rng.hpp"

namespace swd {

namespace {

constexpr std::array<const char*, 22> kTenTwentyChannels = {
    "Fp1", "Fp2", "F7", "F3", "Fz", "F4", "F8", "T3", "C3", "Cz", "C4",
    "T4",  "T5",  "P3", "Pz", "P4", "T6", "O1", "O2", "Oz", "FT10", "FT9"};

constexpr int kPatientCount = 12;

// Kellet's three-stage pink-noise approximation ("pk3 economy"): cascaded
// first-order low-pass states summed with the white input.
class PinkNoise {
public:
    double step(double white) {
        b0_ = 0.99765 * b0_ + white * 0.0990460;
        b1_ = 0.96300 * b1_ + white * 0.2965164;
        b2_ = 0.57000 * b2_ + white * 1.0526913;
        return b0_ + b1_ + b2_ + white * 0.1848;
    }

private:
    double b0_ = 0.0, b1_ = 0.0, b2_ = 0.0;
};

// Stationary std of PinkNoise for unit white input, measured over 2e6
// samples; divides out so background_amp_uv is the noise std.
constexpr double kPinkUnitStd = 2.9731149;
constexpr int kPinkWarmupSamples = 1024;

constexpr double kNoiseClip = 3.5;  // in units of background_amp_uv

void add_background_noise(std::vector<double>& out, Xoshiro256pp& rng, const GenConfig& cfg) {
    PinkNoise pink;
    for (int i = 0; i < kPinkWarmupSamples; ++i) pink.step(rng.normal());
    const double gain = cfg.background_amp_uv / kPinkUnitStd;
    const double clip = kNoiseClip * cfg.background_amp_uv;
    for (double& v : out) {
        v += std::clamp(gain * pink.step(rng.normal()), -clip, clip);
    }
}

// Slow drift common to both classes (sweat/respiration-scale). Inflates the
// raw per-window variance; the MA residual removes it almost entirely.
void add_baseline_wander(std::vector<double>& out, Xoshiro256pp& rng, const GenConfig& cfg) {
    const double fs = cfg.fs;
    const double cap = std::min(1.5 * cfg.background_amp_uv, cfg.wave_amp_uv);
    const double f1 = rng.uniform(0.05, 0.2);
    const double a1 = rng.uniform(0.0, cap * 2.0 / 3.0);
    const double ph1 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double f2 = rng.uniform(0.2, 0.45);
    const double a2 = rng.uniform(0.0, cap / 3.0);
    const double ph2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double t = static_cast<double>(i) / fs;
        out[i] += a1 * std::sin(2.0 * std::numbers::pi * f1 * t + ph1) +
                  a2 * std::sin(2.0 * std::numbers::pi * f2 * t + ph2);
    }
}

void add_artifact(std::vector<double>& out, Xoshiro256pp& rng, const GenConfig& cfg) {
    const std::size_t n = out.size();
    const double fs = cfg.fs;
    const double duration = static_cast<double>(n) / fs;
    // Artifacts reach electrode-pop scale but never the spike amplitude, so
    // the corpus-wide bound is spike + wave + 6 * background in every case.
    const double amp_cap = std::min(5.0 * cfg.background_amp_uv, cfg.spike_amp_uv);

    const std::uint64_t kind = rng.below(3);
    const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;

    if (kind == 0) {
        // Electrode pop: step with a slow exponential recovery.
        const double amp = sign * rng.uniform(0.4, 1.0) * amp_cap;
        const double t0 = rng.uniform(0.05, 0.95) * duration;
        const double tau = rng.uniform(2.0, 5.0);
        const auto start = static_cast<std::size_t>(t0 * fs);
        for (std::size_t i = start; i < n; ++i) {
            const double t = static_cast<double>(i) / fs - t0;
            out[i] += amp * std::exp(-t / tau);
        }
    } else if (kind == 1) {
        // Blink: smooth low-frequency lobe.
        const double amp = sign * rng.uniform(0.3, 0.8) * amp_cap;
        const double center = rng.uniform(0.05, 0.95) * duration;
        const double width = rng.uniform(0.2, 0.4);
        const double s = width / 4.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / fs - center;
            out[i] += amp * std::exp(-0.5 * (t / s) * (t / s));
        }
    } else {
        // Muscle burst: clipped high-frequency noise stretch.
        const double t0 = rng.uniform(0.05, 0.85) * duration;
        const double burst_s = rng.uniform(0.5, 2.0);
        const auto start = static_cast<std::size_t>(t0 * fs);
        const auto stop = std::min(n, start + static_cast<std::size_t>(burst_s * fs));
        const double scale = 0.15 * amp_cap;
        const double clip = 0.4 * amp_cap;
        for (std::size_t i = start; i < stop; ++i) {
            out[i] += std::clamp(scale * rng.normal(), -clip, clip);
        }
    }
}

Signal make_signal(const GenConfig& cfg, std::uint64_t instance_seed, ClassLabel label,
                   std::vector<double> samples) {
    Signal s;
    s.samples = std::move(samples);
    s.fs = cfg.fs;
    s.channel = kTenTwentyChannels[instance_seed % kTenTwentyChannels.size()];
    s.patient_id = "P" + std::to_string(instance_seed % kPatientCount + 1);
    s.label = label;
    return s;
}

}  // namespace

void GenConfig::validate() const {
    if (fs <= 0.0) throw std::invalid_argument("fs must be positive");
    if (duration_s <= 0.0) throw std::invalid_argument("duration must be positive");
    if (n_per_class < 1) throw std::invalid_argument("n_per_class must be >= 1");
    if (swd_rate_hz <= 0.0) throw std::invalid_argument("swd rate must be positive");
    if (spike_amp_uv <= 0.0 || wave_amp_uv <= 0.0) {
        throw std::invalid_argument("amplitudes must be positive");
    }
    if (background_amp_uv < 0.0) {
        throw std::invalid_argument("background amplitude must be >= 0");
    }
    if (artifact_prob < 0.0 || artifact_prob > 1.0) {
        throw std::invalid_argument("artifact probability must lie in [0,1]");
    }
    if (jitter < 0.0 || jitter > 1.0) throw std::invalid_argument("jitter must lie in [0,1]");
}

double amplitude_bound(const GenConfig& cfg) {
    return cfg.spike_amp_uv + cfg.wave_amp_uv + 6.0 * cfg.background_amp_uv;
}

Signal gen_background(const GenConfig& cfg, std::uint64_t instance_seed) {
    cfg.validate();
    Xoshiro256pp rng(cfg.seed, instance_seed);
    const auto n = static_cast<std::size_t>(std::llround(cfg.duration_s * cfg.fs));

    std::vector<double> out(n, 0.0);
    add_background_noise(out, rng, cfg);
    add_baseline_wander(out, rng, cfg);
    if (rng.uniform01() < cfg.artifact_prob) add_artifact(out, rng, cfg);

    return make_signal(cfg, instance_seed, ClassLabel::NonSWD, std::move(out));
}

Signal gen_swd(const GenConfig& cfg, std::uint64_t instance_seed) {
    cfg.validate();
    Xoshiro256pp rng(cfg.seed, instance_seed);
    const auto n = static_cast<std::size_t>(std::llround(cfg.duration_s * cfg.fs));
    const double fs = cfg.fs;

    std::vector<double> out(n, 0.0);
    add_background_noise(out, rng, cfg);
    add_baseline_wander(out, rng, cfg);

    const double burst_frac = 0.3 + 0.5 * rng.uniform01();
    const double burst_len = burst_frac * cfg.duration_s;
    const double burst_start = rng.uniform01() * (cfg.duration_s - burst_len);
    const double burst_end = burst_start + burst_len;

    // One spike-and-wave complex per cycle; amplitude jitter only shrinks so
    // the documented amplitude bound holds for any jitter setting.
    double t = burst_start;
    while (true) {
        const double rate = cfg.swd_rate_hz *
                            std::max(0.25, 1.0 + cfg.jitter * (2.0 * rng.uniform01() - 1.0));
        const double period = 1.0 / rate;
        if (t + period > burst_end) break;

        const double spike_amp = cfg.spike_amp_uv * (1.0 - cfg.jitter * rng.uniform01());
        const double wave_amp = cfg.wave_amp_uv * (1.0 - cfg.jitter * rng.uniform01());
        const double spike_w = std::min(0.020 + 0.050 * rng.uniform01(), 0.4 * period);
        const double wave_w =
            std::min(0.200 + 0.100 * rng.uniform01(), period - spike_w - 0.010);

        // Sharp biphasic spike: dominant positive lobe (70% of the width)
        // with a shallow undershoot, so the complex keeps a net polarity.
        const double lobe_w = 0.7 * spike_w;
        const auto spike_begin = static_cast<std::size_t>(std::ceil(t * fs));
        const auto spike_stop = static_cast<std::size_t>((t + spike_w) * fs);
        for (std::size_t i = spike_begin; i < std::min(spike_stop, n); ++i) {
            const double tau = static_cast<double>(i) / fs - t;
            if (tau < lobe_w) {
                out[i] += spike_amp * std::sin(std::numbers::pi * tau / lobe_w);
            } else {
                out[i] -= 0.3 * spike_amp *
                          std::sin(std::numbers::pi * (tau - lobe_w) / (spike_w - lobe_w));
            }
        }

        // Slow wave: opposite-polarity half sine right after the spike.
        const double wave_t0 = t + spike_w;
        const auto wave_begin = static_cast<std::size_t>(std::ceil(wave_t0 * fs));
        const auto wave_stop = static_cast<std::size_t>((wave_t0 + wave_w) * fs);
        for (std::size_t i = wave_begin; i < std::min(wave_stop, n); ++i) {
            const double tau = static_cast<double>(i) / fs - wave_t0;
            out[i] -= wave_amp * std::sin(std::numbers::pi * tau / wave_w);
        }

        t += period;
    }

    return make_signal(cfg, instance_seed, ClassLabel::SWD, std::move(out));
}

namespace {

Signal gen_instance(const GenConfig& cfg, int index) {
    const bool is_swd = index < cfg.n_per_class;
    const auto counter = static_cast<std::uint64_t>(index);
    Signal s = is_swd ? gen_swd(cfg, counter) : gen_background(cfg, counter);

    char id[32];
    std::snprintf(id, sizeof id, "%s-%06d", is_swd ? "swd" : "bg",
                  is_swd ? index : index - cfg.n_per_class);
    s.id = id;
    return s;
}

}  // namespace

std::vector<Signal> gen_corpus(const GenConfig& cfg) {
    cfg.validate();
    std::vector<Signal> corpus(2 * static_cast<std::size_t>(cfg.n_per_class));
    for (int i = 0; i < 2 * cfg.n_per_class; ++i) {
        corpus[i] = gen_instance(cfg, i);
    }
    return corpus;
}

std::vector<Signal> gen_corpus_openmp(const GenConfig& cfg) {
    cfg.validate();
    std::vector<Signal> corpus(2 * static_cast<std::size_t>(cfg.n_per_class));
    const int total = 2 * cfg.n_per_class;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < total; ++i) {
        corpus[i] = gen_instance(cfg, i);
    }
    return corpus;
}

}  // namespace swd
