#pragma once

#include <cstddef>
#include <span>

namespace swd {

double mean(std::span<const double> values);

/// 1/(n-1) sample variance. Requires n >= 2.
double variance_unbiased(std::span<const double> values);

/// 1/n variance (the MLE form). Requires n >= 1.
double variance_biased(std::span<const double> values);

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation (modified Lentz), absolute accuracy ~1e-10 over the parameter
/// ranges used by the t-test.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of Student's t distribution with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

/// Upper tail P(T > t), accurate for tiny tail masses.
double student_t_sf(double t, double dof);

struct WelchResult {
    double t;
    double dof;        // Welch-Satterthwaite
    double p_value;    // two-sided
};

/// Welch's two-sample t-test (unequal variances). Requires >= 2 values per
/// group and nonzero variance in at least one group.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace swd
