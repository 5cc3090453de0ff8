#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "swd/error.hpp"
#include "swd/features.hpp"
#include "swd/rng.hpp"

namespace {

swd::Signal make_signal(std::vector<double> samples) {
    swd::Signal s;
    s.samples = std::move(samples);
    s.fs = 256.0;
    s.id = "t";
    return s;
}

}  // namespace

TEST_CASE("gaussian_mle trivial cases") {
    const std::vector<double> constant = {4.0, 4.0, 4.0, 4.0};
    const auto c = swd::gaussian_mle(constant);
    CHECK(c.mu == doctest::Approx(4.0));
    CHECK(c.sigma == 0.0);

    const std::vector<double> pair = {-1.0, 1.0};
    const auto p = swd::gaussian_mle(pair);
    CHECK(p.mu == doctest::Approx(0.0));
    CHECK(p.sigma == doctest::Approx(1.0));
}

TEST_CASE("gaussian_mle error paths") {
    const std::vector<double> one = {1.0};
    CHECK_THROWS_WITH_AS(swd::gaussian_mle(one), "insufficient samples: Gaussian MLE needs >= 2, got 1",
                         std::invalid_argument);

    const std::vector<double> with_nan = {1.0, std::numeric_limits<double>::quiet_NaN(), 2.0};
    CHECK_THROWS_WITH_AS(swd::gaussian_mle(with_nan), "non-finite sample at index 1",
                         std::invalid_argument);

    const std::vector<double> with_inf = {1.0, 2.0, std::numeric_limits<double>::infinity()};
    CHECK_THROWS_WITH_AS(swd::gaussian_mle(with_inf), "non-finite sample at index 2",
                         std::invalid_argument);
}

TEST_CASE("gaussian_mle on seeded draws matches the two-pass oracle") {
    swd::Xoshiro256pp rng(2024);
    std::vector<double> draws(1000);
    for (auto& d : draws) d = rng.normal(3.0, 2.0);

    const auto est = swd::gaussian_mle(draws);
    const auto ref = oracle::moments(draws);
    CHECK(est.mu == doctest::Approx(ref.mean).epsilon(1e-13));
    CHECK(est.sigma == doctest::Approx(ref.std_biased).epsilon(1e-13));

    // Within 5 standard errors of the true parameters.
    const double se_mu = 2.0 / std::sqrt(1000.0);
    const double se_sigma = 2.0 / std::sqrt(2.0 * 1000.0);
    CHECK(std::abs(est.mu - 3.0) < 5.0 * se_mu);
    CHECK(std::abs(est.sigma - 2.0) < 5.0 * se_sigma);
}

TEST_CASE("biased and unbiased std are algebraically linked") {
    swd::Xoshiro256pp rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.below(200));
        std::vector<double> x(n);
        for (auto& v : x) v = rng.uniform(-10.0, 10.0);
        const auto est = swd::gaussian_mle(x);
        const auto ref = oracle::moments(x);
        const double factor = std::sqrt((static_cast<double>(n) - 1.0) / static_cast<double>(n));
        CHECK(est.sigma == doctest::Approx(ref.std_unbiased * factor).epsilon(1e-12));
    }
}

TEST_CASE("gaussian_mle shift and scale equivariance") {
    swd::Xoshiro256pp rng(6);
    std::vector<double> x(257);
    for (auto& v : x) v = rng.normal(1.0, 3.0);
    const auto base = swd::gaussian_mle(x);

    const double a = -2.5, b = 17.0;
    std::vector<double> shifted(x.size()), scaled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        shifted[i] = x[i] + b;
        scaled[i] = a * x[i];
    }
    const auto sh = swd::gaussian_mle(shifted);
    CHECK(sh.mu == doctest::Approx(base.mu + b).epsilon(1e-12));
    CHECK(sh.sigma == doctest::Approx(base.sigma).epsilon(1e-12));

    const auto sc = swd::gaussian_mle(scaled);
    CHECK(sc.mu == doctest::Approx(a * base.mu).epsilon(1e-12));
    CHECK(sc.sigma == doctest::Approx(std::abs(a) * base.sigma).epsilon(1e-12));
}

TEST_CASE("log_likelihood closed forms") {
    const std::vector<double> at_mean = {2.0};
    CHECK(swd::log_likelihood(at_mean, 2.0, 1.0) ==
          doctest::Approx(-std::log(std::sqrt(2.0 * std::numbers::pi))).epsilon(1e-14));

    const std::vector<double> zeros = {0.0, 0.0};
    CHECK(swd::log_likelihood(zeros, 0.0, 2.0) ==
          doctest::Approx(2.0 * -std::log(2.0 * std::sqrt(2.0 * std::numbers::pi)))
              .epsilon(1e-14));

    CHECK_THROWS_AS(swd::log_likelihood(zeros, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(swd::log_likelihood(zeros, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("the MLE maximizes the log-likelihood under perturbation") {
    swd::Xoshiro256pp rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(64);
        const double mu_true = rng.uniform(-5.0, 5.0);
        const double sigma_true = rng.uniform(0.5, 4.0);
        for (auto& v : x) v = rng.normal(mu_true, sigma_true);

        const auto est = swd::gaussian_mle(x);
        const double best = swd::log_likelihood(x, est.mu, est.sigma);
        for (double delta : {0.1, -0.1, 0.01, -0.01}) {
            CHECK(best >= swd::log_likelihood(x, est.mu + delta, est.sigma));
            CHECK(best >= swd::log_likelihood(x, est.mu, est.sigma + delta));
        }
    }
}

TEST_CASE("extract composes residual and MLE") {
    const swd::Signal constant = make_signal(std::vector<double>(64, 9.0));
    const auto fv = swd::extract(swd::whole_signal_window(constant), swd::MaConfig{1, 4});
    CHECK(fv.mu == doctest::Approx(0.0));
    CHECK(fv.sigma == doctest::Approx(0.0));
    CHECK(fv.source_id == "t@0");

    CHECK_THROWS_AS(swd::extract(swd::whole_signal_window(constant), swd::MaConfig{4, 4}),
                    std::invalid_argument);
    CHECK_THROWS_AS(swd::extract(swd::whole_signal_window(constant), swd::MaConfig{5, 4}),
                    std::invalid_argument);
}

TEST_CASE("extract is deterministic") {
    swd::Xoshiro256pp rng(8);
    std::vector<double> x(512);
    for (auto& v : x) v = rng.normal(0.0, 20.0);
    const swd::Signal s = make_signal(x);

    const auto a = swd::extract(swd::whole_signal_window(s), swd::MaConfig{2, 21});
    const auto b = swd::extract(swd::whole_signal_window(s), swd::MaConfig{2, 21});
    CHECK(a.mu == b.mu);
    CHECK(a.sigma == b.sigma);
}

TEST_CASE("z-score normalizer standardizes the training set") {
    swd::Xoshiro256pp rng(9);
    std::vector<swd::FeatureVector> features(40);
    for (auto& fv : features) {
        fv.mu = rng.normal(5.0, 2.0);
        fv.sigma = rng.normal(30.0, 10.0);
    }
    const auto nz = swd::fit_normalizer(features);

    std::vector<double> n_mu, n_sigma;
    for (const auto& fv : features) {
        const auto [p1, p2] = swd::normalize(nz, fv);
        n_mu.push_back(p1);
        n_sigma.push_back(p2);
    }
    const auto m1 = oracle::moments(n_mu);
    const auto m2 = oracle::moments(n_sigma);
    CHECK(m1.mean == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(m1.std_biased == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m2.mean == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(m2.std_biased == doctest::Approx(1.0).epsilon(1e-9));

    // A feature at the training mean maps to the origin.
    swd::FeatureVector at_mean;
    at_mean.mu = nz.mu_mean;
    at_mean.sigma = nz.sigma_mean;
    const auto [z1, z2] = swd::normalize(nz, at_mean);
    CHECK(z1 == doctest::Approx(0.0));
    CHECK(z2 == doctest::Approx(0.0));
}

TEST_CASE("normalizer hand example") {
    std::vector<swd::FeatureVector> features(4);
    features[0].mu = 0.0;
    features[0].sigma = 10.0;
    features[1].mu = 2.0;
    features[1].sigma = 20.0;
    features[2].mu = 4.0;
    features[2].sigma = 30.0;
    features[3].mu = 6.0;
    features[3].sigma = 40.0;
    // mu: mean 3, std (1/n) sqrt(5); sigma: mean 25, std sqrt(125).
    const auto nz = swd::fit_normalizer(features);
    CHECK(nz.mu_mean == doctest::Approx(3.0));
    CHECK(nz.mu_std == doctest::Approx(std::sqrt(5.0)));
    CHECK(nz.sigma_mean == doctest::Approx(25.0));
    CHECK(nz.sigma_std == doctest::Approx(std::sqrt(125.0)));

    const auto [p1, p2] = swd::normalize(nz, features[0]);
    CHECK(p1 == doctest::Approx(-3.0 / std::sqrt(5.0)).epsilon(1e-14));
    CHECK(p2 == doctest::Approx(-15.0 / std::sqrt(125.0)).epsilon(1e-14));
}

TEST_CASE("degenerate training features are rejected") {
    std::vector<swd::FeatureVector> flat(5);
    for (auto& fv : flat) {
        fv.mu = 1.0;
        fv.sigma = 2.0;
    }
    CHECK_THROWS_AS(swd::fit_normalizer(flat), swd::DegenerateDataError);

    std::vector<swd::FeatureVector> one(1);
    CHECK_THROWS_AS(swd::fit_normalizer(one), std::invalid_argument);
}

TEST_CASE("min-max normalizer maps the training range to [0,1]") {
    std::vector<swd::FeatureVector> features(3);
    features[0].mu = -1.0;
    features[0].sigma = 5.0;
    features[1].mu = 0.0;
    features[1].sigma = 10.0;
    features[2].mu = 3.0;
    features[2].sigma = 25.0;
    const auto nz = swd::fit_normalizer(features, swd::NormKind::MinMax);
    const auto [lo1, lo2] = swd::normalize(nz, features[0]);
    const auto [hi1, hi2] = swd::normalize(nz, features[2]);
    CHECK(lo1 == doctest::Approx(0.0));
    CHECK(lo2 == doctest::Approx(0.0));
    CHECK(hi1 == doctest::Approx(1.0));
    CHECK(hi2 == doctest::Approx(1.0));
}
