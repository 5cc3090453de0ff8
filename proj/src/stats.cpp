#include "swd/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "swd/error.hpp"

namespace swd {

double mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean of empty sequence");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double variance_unbiased(std::span<const double> values) {
    if (values.size() < 2) throw std::invalid_argument("variance needs >= 2 samples");
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return ss / static_cast<double>(values.size() - 1);
}

double variance_biased(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("variance of empty sequence");
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return ss / static_cast<double>(values.size());
}

namespace {

constexpr double kBetaEps = 1e-14;
constexpr int kBetaMaxIter = 500;

// Continued fraction for I_x(a,b), modified Lentz. Converges fast for
// x < (a+1)/(a+b+2).
double beta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;

    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= kBetaMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kBetaEps) return h;
    }
    return h;  // converged to working precision anyway for the dof range used
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("beta parameters must be positive");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete beta argument outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);

    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
    if (dof <= 0.0) throw std::invalid_argument("degrees of freedom must be positive");
    if (t == 0.0) return 0.5;
    const double x = dof / (dof + t * t);
    const double tail = 0.5 * regularized_incomplete_beta(dof / 2.0, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_sf(double t, double dof) {
    if (dof <= 0.0) throw std::invalid_argument("degrees of freedom must be positive");
    if (t == 0.0) return 0.5;
    // Upper tail via the incomplete beta directly, so values far below
    // machine epsilon keep their magnitude.
    const double x = dof / (dof + t * t);
    const double tail = 0.5 * regularized_incomplete_beta(dof / 2.0, 0.5, x);
    return t > 0.0 ? tail : 1.0 - tail;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("Welch t-test needs >= 2 samples per group");

    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double ma = mean(a);
    const double mb = mean(b);
    const double va = variance_unbiased(a);
    const double vb = variance_unbiased(b);

    const double sea = va / na;
    const double seb = vb / nb;
    const double se2 = sea + seb;
    if (se2 <= 0.0) {
        if (ma == mb) return WelchResult{0.0, na + nb - 2.0, 1.0};
        throw DegenerateDataError("Welch t-test: both groups have zero variance");
    }

    const double t = (ma - mb) / std::sqrt(se2);
    const double dof = se2 * se2 / (sea * sea / (na - 1.0) + seb * seb / (nb - 1.0));
    const double p = 2.0 * student_t_sf(std::fabs(t), dof);
    return WelchResult{t, dof, std::min(1.0, std::max(p, std::numeric_limits<double>::min()))};
}

}  // namespace swd
