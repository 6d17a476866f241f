#include "eqmargin/dist.hpp"

#include "eqmargin/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace eqmargin {

namespace {

constexpr int kMaxFractionTerms = 200000;
constexpr double kFractionEps = 1e-16;
constexpr double kTiny = 1e-300;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + ": argument must be finite");
    }
}

void require_probability(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError(std::string(what) + ": probability must lie in (0, 1)");
    }
}

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxFractionTerms; ++m) {
        const double dm = m;
        const double m2 = 2.0 * dm;
        double aa = dm * (b - dm) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + dm) * (qab + dm) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kFractionEps) return h;
    }
    return h;
}

// I_x(a, b) with y = 1 - x supplied by the caller so that values of x near 1
// keep their precision.
double incomplete_beta_xy(double a, double b, double x, double y) {
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    const double log_x = x > 0.5 ? std::log1p(-y) : std::log(x);
    const double log_y = y > 0.5 ? std::log1p(-x) : std::log(y);
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * log_x + b * log_y;
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_fraction(b, a, y) / b;
}

// Lower tail P(T <= t) for t <= 0.
double t_lower_tail(double t, double df) {
    const double t2 = t * t;
    const double x = df / (df + t2);
    const double y = t2 / (df + t2);
    return 0.5 * incomplete_beta_xy(0.5 * df, 0.5, x, y);
}

}  // namespace

double normal_pdf(double x) {
    require_finite(x, "normal_pdf");
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) {
    require_finite(x, "normal_cdf");
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
    require_probability(p, "normal_quantile");
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                             -2.759285104469687e+02, 1.383577518672690e+02,
                                             -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                             -1.556989798598866e+02, 6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                             -2.400758277161838e+00, -2.549732539343734e+00,
                                             4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                             2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    auto tail = [&](double q) {
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    };

    double x = 0.0;
    if (p < p_low) {
        x = tail(std::sqrt(-2.0 * std::log(p)));
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        x = -tail(std::sqrt(-2.0 * std::log1p(-p)));
    }

    // One Halley step against the erfc-based CDF brings the rational
    // approximation to full double precision.
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("incomplete_beta: shape parameters must be positive and finite");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("incomplete_beta: x must lie in [0, 1]");
    }
    return incomplete_beta_xy(a, b, x, 1.0 - x);
}

double t_pdf(double t, double df) {
    require_finite(t, "t_pdf");
    if (!(df > 0.0) || !std::isfinite(df)) throw DomainError("t_pdf: df must be positive");
    const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                            0.5 * std::log(df * std::numbers::pi);
    return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(t * t / df));
}

double t_cdf(double t, double df) {
    require_finite(t, "t_cdf");
    if (!(df > 0.0) || !std::isfinite(df)) throw DomainError("t_cdf: df must be positive");
    if (t == 0.0) return 0.5;
    if (t < 0.0) return t_lower_tail(t, df);
    return 1.0 - t_lower_tail(-t, df);
}

double t_quantile(double p, double df, DistAccuracy acc) {
    require_probability(p, "t_quantile");
    if (!(df > 0.0) || !std::isfinite(df)) throw DomainError("t_quantile: df must be positive");
    if (!(acc.abs_tol > 0.0)) throw DomainError("t_quantile: abs_tol must be positive");
    if (p == 0.5) return 0.0;

    // Solve in the lower tail and reflect; the target q < 0.5 keeps full
    // relative precision for the small tail probabilities.
    const bool upper = p > 0.5;
    const double q = upper ? 1.0 - p : p;

    double hi = 0.0;
    double lo = -1.0;
    while (t_lower_tail(lo, df) > q) {
        hi = lo;
        lo *= 2.0;
        if (!std::isfinite(lo)) throw DomainError("t_quantile: quantile not representable");
    }

    double x = std::clamp(normal_quantile(q), lo, hi);
    if (x == hi || x == lo) x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 500; ++iter) {
        const double f = t_lower_tail(x, df) - q;
        if (f == 0.0) break;
        if (f > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        const double slope = t_pdf(x, df);
        double next = slope > 0.0 ? x - f / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::fabs(next - x);
        x = next;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x))) {
            break;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x))) {
            break;
        }
    }
    if (std::fabs(t_lower_tail(x, df) - q) > acc.abs_tol) {
        throw std::runtime_error("t_quantile: refinement did not reach the requested accuracy");
    }
    return upper ? -x : x;
}

double half_normal_below_cdf(double x, double bound, double scale) {
    require_finite(x, "half_normal_below_cdf");
    require_finite(bound, "half_normal_below_cdf");
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("half_normal_below_cdf: scale must be positive");
    }
    if (x >= bound) return 1.0;
    return 2.0 * normal_cdf(-(bound - x) / scale);
}

}  // namespace eqmargin
