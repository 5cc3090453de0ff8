#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "swd/filters.hpp"
#include "swd/moving_average.hpp"
#include "swd/rng.hpp"
#include "swd/signal.hpp"
#include "swd/stats.hpp"

namespace {

swd::Signal make_signal(std::vector<double> samples, double fs = 256.0) {
    swd::Signal s;
    s.samples = std::move(samples);
    s.fs = fs;
    return s;
}

}  // namespace

TEST_CASE("segment tiles a signal into whole windows") {
    const swd::Signal s = make_signal(std::vector<double>(5120, 0.0));
    const auto one = swd::segment(s, 20.0, 20.0);
    REQUIRE(one.size() == 1);
    CHECK(one[0].start_index == 0);
    CHECK(one[0].length_samples == 5120);
    CHECK(one[0].duration_s() == doctest::Approx(20.0));

    const swd::Signal longer = make_signal(std::vector<double>(12000, 0.0));
    const auto two = swd::segment(longer, 20.0, 20.0);
    REQUIRE(two.size() == 2);
    CHECK(two[0].start_index == 0);
    CHECK(two[1].start_index == 5120);
}

TEST_CASE("segment supports overlap and rejects short signals") {
    const swd::Signal s = make_signal(std::vector<double>(768, 0.0));
    const auto hopped = swd::segment(s, 2.0, 1.0);  // 512-sample windows, 256 hop
    REQUIRE(hopped.size() == 2);
    CHECK(hopped[1].start_index == 256);

    const swd::Signal tiny = make_signal(std::vector<double>(100, 0.0));
    CHECK_THROWS_WITH_AS(swd::segment(tiny, 20.0, 20.0),
                         "signal too short: need 5120 samples, have 100", std::invalid_argument);
    CHECK_THROWS_AS(swd::segment(s, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(swd::segment(s, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("moving average of constants is the constant") {
    const std::vector<double> c(17, 3.25);
    for (int h : {0, 1, 2, 8}) {
        const auto out = swd::moving_average(c, h);
        REQUIRE(out.size() == c.size() - 2 * static_cast<std::size_t>(h));
        for (double v : out) CHECK(v == doctest::Approx(3.25).epsilon(1e-15));
    }
}

TEST_CASE("moving average h=0 is the identity") {
    const std::vector<double> x = {1.5, -2.0, 7.25, 0.0};
    CHECK(swd::moving_average(x, 0) == x);
}

TEST_CASE("moving average hand example") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const std::vector<double> expected = {2, 3, 4};
    CHECK(swd::moving_average(x, 1) == expected);
}

TEST_CASE("moving average rejects oversized windows") {
    const std::vector<double> x = {1, 2, 3};
    CHECK_THROWS_WITH_AS(swd::moving_average(x, 2), "window exceeds series: 2h+1 = 5 > 3 samples",
                         std::invalid_argument);
    CHECK_THROWS_AS(swd::moving_average(x, -1), std::invalid_argument);
}

TEST_CASE("moving average stays within the series range") {
    swd::Xoshiro256pp rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(64);
        for (auto& v : x) v = rng.uniform(-5.0, 5.0);
        double lo = x[0], hi = x[0];
        for (double v : x) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        for (int h : {1, 3, 10}) {
            for (double v : swd::moving_average(x, h)) {
                CHECK(v >= lo - 1e-12);
                CHECK(v <= hi + 1e-12);
            }
        }
    }
}

TEST_CASE("ma_residual matches the brute-force oracle on all short series") {
    swd::Xoshiro256pp rng(21);
    for (std::size_t n = 3; n <= 32; ++n) {
        std::vector<double> x(n);
        for (auto& v : x) v = rng.uniform(-100.0, 100.0);
        for (int h2 = 1; 2 * h2 + 1 <= static_cast<int>(n); ++h2) {
            for (int h1 = 0; h1 < h2; ++h1) {
                const swd::Signal s = make_signal(x);
                const auto window = swd::whole_signal_window(s);
                const auto residual = swd::ma_residual(window, swd::MaConfig{h1, h2});
                const auto expected = oracle::ma_residual(x, h1, h2);
                REQUIRE(residual.values.size() == n - 2 * static_cast<std::size_t>(h2));
                REQUIRE(residual.values.size() == expected.size());
                for (std::size_t i = 0; i < expected.size(); ++i) {
                    CHECK(residual.values[i] ==
                          doctest::Approx(expected[i]).epsilon(1e-12).scale(100.0));
                }
            }
        }
    }
}

TEST_CASE("ma_residual hand example via oracle") {
    const std::vector<double> x = {0, 1, 0, -1, 0, 1, 0, -1, 0};
    const auto got = swd::ma_residual_values(x, swd::MaConfig{1, 2});
    const auto expected = oracle::ma_residual(x, 1, 2);
    REQUIRE(got.size() == 5);
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-14));
    }
}

TEST_CASE("constant windows have an identically zero residual") {
    const swd::Signal s = make_signal(std::vector<double>(40, 8.5));
    const auto residual = swd::ma_residual(swd::whole_signal_window(s), swd::MaConfig{2, 5});
    for (double v : residual.values) CHECK(v == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("MaConfig rejects h1 >= h2") {
    const swd::MaConfig equal{3, 3};
    const swd::MaConfig inverted{5, 3};
    const swd::MaConfig fine{0, 1};
    CHECK_THROWS_AS(equal.validate(), std::invalid_argument);
    CHECK_THROWS_AS(inverted.validate(), std::invalid_argument);
    CHECK_NOTHROW(fine.validate());
}

TEST_CASE("residual is linear and kills additive offsets") {
    swd::Xoshiro256pp rng(31);
    const swd::MaConfig config{2, 7};
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> x(60);
        for (auto& v : x) v = rng.uniform(-50.0, 50.0);
        const double a = rng.uniform(-3.0, 3.0);
        const double b = rng.uniform(-1000.0, 1000.0);

        std::vector<double> scaled(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = a * x[i] + b;

        const auto base = swd::ma_residual_values(x, config);
        const auto transformed = swd::ma_residual_values(scaled, config);
        const double scale = std::abs(b) + 50.0;
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(transformed[i] == doctest::Approx(a * base[i]).epsilon(1e-12).scale(scale));
        }
    }
}

TEST_CASE("slow waves survive the residual, white noise is damped") {
    const swd::MaConfig config{2, 42};
    const double fs = 256.0;
    const std::size_t n = 5120;

    // 3 Hz sine: period matches the long MA span, so the long MA removes it
    // while the short MA keeps it.
    std::vector<double> wave(n);
    for (std::size_t i = 0; i < n; ++i) {
        wave[i] = std::sin(2.0 * std::numbers::pi * 3.0 * static_cast<double>(i) / fs);
    }
    const auto wave_residual = swd::ma_residual_values(wave, config);
    double peak = 0.0;
    for (double v : wave_residual) peak = std::max(peak, std::abs(v));
    CHECK(peak > 0.5);

    // An octave lower it is attenuated but still clearly present.
    std::vector<double> slow(n);
    for (std::size_t i = 0; i < n; ++i) {
        slow[i] = std::sin(2.0 * std::numbers::pi * 1.5 * static_cast<double>(i) / fs);
    }
    const auto slow_residual = swd::ma_residual_values(slow, config);
    const double rms = std::sqrt(swd::variance_biased(slow_residual));
    CHECK(rms > 0.2 / std::numbers::sqrt2);

    swd::Xoshiro256pp rng(41);
    std::vector<double> noise(n);
    for (auto& v : noise) v = rng.normal();
    const auto noise_residual = swd::ma_residual_values(noise, config);
    CHECK(swd::variance_biased(noise_residual) < swd::variance_biased(noise));
}

TEST_CASE("low-pass biquad attenuates above cutoff and passes DC") {
    const double fs = 256.0;
    const std::size_t n = 4096;

    std::vector<double> dc(n, 1.0);
    const auto dc_out = swd::lowpass_biquad(dc, fs, 30.0);
    CHECK(dc_out.back() == doctest::Approx(1.0).epsilon(1e-6));

    std::vector<double> hf(n);
    for (std::size_t i = 0; i < n; ++i) {
        hf[i] = std::sin(2.0 * std::numbers::pi * 100.0 * static_cast<double>(i) / fs);
    }
    const auto hf_out = swd::lowpass_biquad(hf, fs, 30.0);
    const std::vector<double> tail(hf_out.begin() + 1024, hf_out.end());
    CHECK(std::sqrt(swd::variance_biased(tail)) < 0.1);

    CHECK_THROWS_AS(swd::lowpass_biquad(dc, fs, 128.0), std::invalid_argument);
}

TEST_CASE("first-order high-pass removes DC") {
    const double fs = 256.0;
    std::vector<double> dc(2048, 5.0);
    const auto out = swd::highpass_first_order(dc, fs, 1.0);
    CHECK(std::abs(out.back()) < 0.01);
    CHECK_THROWS_AS(swd::highpass_first_order(dc, fs, 1600.0), std::invalid_argument);
}

TEST_CASE("high-pass stage is off by default and needs an explicit cutoff") {
    const swd::FilterConfig config;
    CHECK_FALSE(config.highpass_enabled);

    swd::FilterConfig bad = config;
    bad.highpass_enabled = true;
    bad.highpass_cutoff_hz = 1600.0;  // above Nyquist at 256 Hz
    CHECK_THROWS_AS(bad.validate(256.0), std::invalid_argument);

    const swd::Signal s = make_signal(std::vector<double>(512, 1.0));
    CHECK_THROWS_AS(swd::apply_filters(s, bad), std::invalid_argument);
}
