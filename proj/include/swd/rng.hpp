#pragma once

#include <cmath>
#include <cstdint>

namespace swd {

// Output mixer of Steele/Lea/Vigna's splitmix64. Bijective on 64-bit words.
inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kSplitMix64Gamma = 0x9e3779b97f4a7c15ULL;

// splitmix64 stream: output k of seed s is splitmix64_mix(s + (k+1)*gamma),
// which makes random access O(1).
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += kSplitMix64Gamma;
        return splitmix64_mix(state_);
    }

private:
    std::uint64_t state_;
};

/// Output k (0-based) of the splitmix64 stream started at `seed`.
inline constexpr std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) noexcept {
    return splitmix64_mix(seed + (k + 1) * kSplitMix64Gamma);
}

// Blackman/Vigna xoshiro256++ 1.0, state expanded from a 64-bit seed with
// splitmix64 as the authors recommend. Chosen over std::mt19937 because the
// whole draw chain (including the uniform/normal transforms below) is small
// enough to re-implement verbatim in any language, keeping corpora portable.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) noexcept {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    /// Two-seed form used by the corpus generator: mixes a master seed with a
    /// per-instance counter so instances are independent streams.
    Xoshiro256pp(std::uint64_t master_seed, std::uint64_t instance_seed) noexcept
        : Xoshiro256pp(master_seed ^ splitmix64_mix(instance_seed)) {}

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double uniform01_open_low() noexcept {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) noexcept {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform integer in [0, n). Modulo reduction; the bias is far below
    /// anything observable for the n used here and keeps the scheme trivial
    /// to reproduce.
    std::uint64_t below(std::uint64_t n) noexcept {
        return next() % n;
    }

    /// Standard normal via the trigonometric Box-Muller transform; the
    /// second deviate of each pair is cached.
    double normal() noexcept {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = uniform01_open_low();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double stddev) noexcept {
        return mean + stddev * normal();
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
    bool has_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace swd
