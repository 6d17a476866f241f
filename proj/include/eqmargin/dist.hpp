#pragma once

// Distribution functions for the standard normal, Student-t and the
// lower half-normal. All functions are pure and thread-safe.

namespace eqmargin {

struct DistAccuracy {
    double abs_tol = 1e-10;
};

double normal_pdf(double x);
double normal_cdf(double x);
/// Inverse of normal_cdf. Requires 0 < p < 1.
double normal_quantile(double p);

/// Regularized incomplete beta I_x(a, b), evaluated by continued fraction.
double incomplete_beta(double a, double b, double x);

double t_pdf(double t, double df);
double t_cdf(double t, double df);
/// Inverse of t_cdf via monotone bracketing followed by safeguarded Newton
/// steps. Requires 0 < p < 1 and df > 0.
double t_quantile(double p, double df, DistAccuracy acc = {});

/// P(X <= x) for X = bound - |Z|, Z ~ Normal(0, scale^2).
double half_normal_below_cdf(double x, double bound, double scale);

}  // namespace eqmargin
