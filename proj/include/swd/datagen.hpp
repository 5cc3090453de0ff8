#pragma once

#include <cstdint>
#include <vector>

#include "swd/signal.hpp"

namespace swd {

/// Synthetic corpus shape and waveform parameters. The corpus shape
/// (balanced classes, 256 Hz, 20 s) mirrors the clinical setting; the
/// waveform amplitudes and widths are surrogate choices.
struct GenConfig {
    std::uint64_t seed = 0;
    double fs = 256.0;
    double duration_s = 20.0;
    int n_per_class = 390;
    double swd_rate_hz = 3.0;
    double spike_amp_uv = 300.0;
    double wave_amp_uv = 150.0;
    double background_amp_uv = 30.0;
    double artifact_prob = 0.3;   // chance of one transient artifact per background window
    double jitter = 0.1;          // relative per-cycle amplitude/frequency jitter

    void validate() const;
};

/// A spike-and-wave burst at ~swd_rate_hz occupying a random 30-80%
/// sub-interval of the window, over pink background noise. Per cycle: a
/// sharp biphasic spike (20-70 ms) followed by a slow half-sine wave
/// (200-300 ms), amplitudes jittered per cycle. Deterministic in
/// (cfg.seed, instance_seed).
Signal gen_swd(const GenConfig& cfg, std::uint64_t instance_seed);

/// Pink noise (cascaded first-order filters) at background_amp_uv, plus with
/// probability artifact_prob one transient artifact: an electrode-pop step,
/// a slow blink lobe, or a high-frequency muscle burst.
Signal gen_background(const GenConfig& cfg, std::uint64_t instance_seed);

/// Exactly n_per_class signals of each class, SWD block first. Instance
/// seeds are the record counters: SWD i uses i, background i uses
/// n_per_class + i.
std::vector<Signal> gen_corpus(const GenConfig& cfg);

/// Same corpus, instances generated in parallel. Bit-identical to
/// gen_corpus().
std::vector<Signal> gen_corpus_openmp(const GenConfig& cfg);

/// Upper bound on |sample| guaranteed by the generator.
double amplitude_bound(const GenConfig& cfg);

}  // namespace swd
