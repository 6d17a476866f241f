#include "eqmargin/inference.hpp"

#include "eqmargin/dist.hpp"
#include "eqmargin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eqmargin {

namespace {

// Matching tolerance between a reported interval level and 1 - 2 alpha.
constexpr double kLevelTolerance = 1e-9;

void require_alpha(double alpha, const char* what) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw DomainError(std::string(what) + ": alpha must lie in (0, 0.5)");
    }
}

void require_level(double level, const char* what) {
    if (!(level > 0.0 && level < 1.0)) {
        throw DomainError(std::string(what) + ": level must lie in (0, 1)");
    }
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": value must be finite");
}

// Reference distribution CDF of the standardized estimate.
double pivot_cdf(double x, const TwoSampleSummary& s, CiMethod method) {
    if (method == CiMethod::normal) return normal_cdf(x);
    return t_cdf(x, s.df());
}

double mean_of(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double sum_sq_dev(std::span<const double> xs, double mean) {
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        ss += d * d;
    }
    return ss;
}

}  // namespace

TwoSampleSummary::TwoSampleSummary(long n1, double mean1, long n2, double mean2, double pooled_sd)
    : n1_(n1),
      n2_(n2),
      mean1_(mean1),
      mean2_(mean2),
      pooled_sd_(pooled_sd),
      standard_error_(pooled_sd * std::sqrt(1.0 / static_cast<double>(n1) +
                                            1.0 / static_cast<double>(n2))) {}

TwoSampleSummary TwoSampleSummary::from_moments(long n1, double mean1, long n2, double mean2,
                                                double pooled_sd) {
    if (n1 < 2 || n2 < 2) {
        throw InsufficientDataError("summary: each group needs at least 2 observations");
    }
    require_finite(mean1, "summary mean1");
    require_finite(mean2, "summary mean2");
    if (!(pooled_sd > 0.0) || !std::isfinite(pooled_sd)) {
        throw DegenerateDataError("summary: pooled standard deviation must be positive");
    }
    return TwoSampleSummary(n1, mean1, n2, mean2, pooled_sd);
}

ConfidenceInterval make_interval(double lower, double upper, double level) {
    require_finite(lower, "interval lower bound");
    require_finite(upper, "interval upper bound");
    if (lower > upper) throw DomainError("interval: lower bound exceeds upper bound");
    require_level(level, "interval");
    return ConfidenceInterval{lower, upper, level, 0.5 * (lower + upper)};
}

EquivalenceMargin EquivalenceMargin::centered(double delta, double theta0) {
    require_finite(theta0, "margin theta0");
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw DomainError("margin: delta must be positive and finite");
    }
    return EquivalenceMargin{theta0, delta};
}

std::string to_string(TestKind kind) {
    switch (kind) {
        case TestKind::equivalence: return "equivalence";
        case TestKind::noninferiority_low: return "noninferiority_low";
        case TestKind::noninferiority_high: return "noninferiority_high";
    }
    return "unknown";
}

std::string to_string(Direction direction) {
    return direction == Direction::lower ? "lower" : "upper";
}

TwoSampleSummary summarize(std::span<const double> group_a, std::span<const double> group_b) {
    if (group_a.size() < 2 || group_b.size() < 2) {
        throw InsufficientDataError("summarize: each group needs at least 2 observations");
    }
    for (auto group : {group_a, group_b}) {
        for (double x : group) require_finite(x, "summarize");
    }
    const double mean_a = mean_of(group_a);
    const double mean_b = mean_of(group_b);
    const double ss = sum_sq_dev(group_a, mean_a) + sum_sq_dev(group_b, mean_b);
    if (!(ss > 0.0)) {
        throw DegenerateDataError("summarize: both groups have zero variance");
    }
    const auto n1 = static_cast<long>(group_a.size());
    const auto n2 = static_cast<long>(group_b.size());
    const double pooled_sd = std::sqrt(ss / static_cast<double>(n1 + n2 - 2));
    return TwoSampleSummary::from_moments(n1, mean_a, n2, mean_b, pooled_sd);
}

double critical_value(const TwoSampleSummary& s, double level, CiMethod method) {
    require_level(level, "confidence_interval");
    const double p = 0.5 * (1.0 + level);
    if (p >= 1.0) throw DomainError("confidence_interval: level too close to 1");
    if (method == CiMethod::normal) return p == 0.5 ? 0.0 : normal_quantile(p);
    return t_quantile(p, s.df());
}

ConfidenceInterval interval_from_critical(const TwoSampleSummary& s, double level,
                                          double critical) {
    const double half = critical * s.standard_error();
    const double est = s.estimate();
    return ConfidenceInterval{est - half, est + half, level, est};
}

ConfidenceInterval confidence_interval(const TwoSampleSummary& s, double level, CiMethod method) {
    return interval_from_critical(s, level, critical_value(s, level, method));
}

bool interval_within_margins(const ConfidenceInterval& ci, double lo, double hi) {
    if (!(lo < hi)) throw DomainError("interval_within_margins: lo must be below hi");
    return lo <= ci.lower && ci.upper <= hi;
}

double tost_p_value(const TwoSampleSummary& s, const EquivalenceMargin& m, CiMethod method) {
    const double se = s.standard_error();
    const double est = s.estimate();
    // H0a: theta <= low, rejected for large estimates.
    const double p_low = pivot_cdf((m.low() - est) / se, s, method);
    // H0b: theta >= high, rejected for small estimates.
    const double p_high = pivot_cdf((est - m.high()) / se, s, method);
    return std::max(p_low, p_high);
}

TestDecision equivalence_test(const TwoSampleSummary& s, const EquivalenceMargin& m, double alpha,
                              CiMethod method) {
    require_alpha(alpha, "equivalence_test");
    TestDecision d;
    d.kind = TestKind::equivalence;
    d.alpha = alpha;
    d.margin = m;
    d.interval = confidence_interval(s, 1.0 - 2.0 * alpha, method);
    d.reject_null = interval_within_margins(d.interval, m.low(), m.high());
    d.p_value = tost_p_value(s, m, method);
    return d;
}

TestDecision noninferiority_test(const TwoSampleSummary& s, double margin_bound, double alpha,
                                 Direction direction, CiMethod method) {
    require_alpha(alpha, "noninferiority_test");
    require_finite(margin_bound, "noninferiority_test margin");
    TestDecision d;
    d.alpha = alpha;
    d.bound = margin_bound;
    d.interval = confidence_interval(s, 1.0 - 2.0 * alpha, method);
    const double se = s.standard_error();
    if (direction == Direction::upper) {
        d.kind = TestKind::noninferiority_high;
        d.reject_null = d.interval.upper <= margin_bound;
        d.p_value = pivot_cdf((s.estimate() - margin_bound) / se, s, method);
    } else {
        d.kind = TestKind::noninferiority_low;
        d.reject_null = d.interval.lower >= margin_bound;
        d.p_value = pivot_cdf((margin_bound - s.estimate()) / se, s, method);
    }
    return d;
}

TestDecision noninferiority_test(const ConfidenceInterval& ci, double margin_bound, double alpha,
                                 Direction direction) {
    require_alpha(alpha, "noninferiority_test");
    require_finite(margin_bound, "noninferiority_test margin");
    if (std::fabs(ci.level - (1.0 - 2.0 * alpha)) > kLevelTolerance) {
        throw LevelMismatchError("noninferiority_test: interval level " + std::to_string(ci.level) +
                                 " does not equal 1 - 2*alpha = " +
                                 std::to_string(1.0 - 2.0 * alpha));
    }
    TestDecision d;
    d.alpha = alpha;
    d.bound = margin_bound;
    d.interval = ci;
    const bool upper = direction == Direction::upper;
    d.kind = upper ? TestKind::noninferiority_high : TestKind::noninferiority_low;
    d.reject_null = upper ? ci.upper <= margin_bound : ci.lower >= margin_bound;

    const double se = ci.half_width() / normal_quantile(1.0 - alpha);
    if (se > 0.0) {
        const double z = upper ? (ci.estimate - margin_bound) / se : (margin_bound - ci.estimate) / se;
        d.p_value = normal_cdf(z);
    } else {
        d.p_value = d.reject_null ? 0.0 : 1.0;
    }
    return d;
}

double two_sided_p_value(const TwoSampleSummary& s, double theta0, CiMethod method) {
    require_finite(theta0, "two_sided_p_value");
    const double z = std::fabs(s.estimate() - theta0) / s.standard_error();
    return std::min(1.0, 2.0 * pivot_cdf(-z, s, method));
}

}  // namespace eqmargin
