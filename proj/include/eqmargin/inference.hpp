#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eqmargin {

/// Sufficient statistics of a two-arm experiment with a pooled-variance model.
/// The estimate is mean2 - mean1 (second arm minus reference arm).
class TwoSampleSummary {
public:
    /// Validates n1, n2 >= 2, finite means and pooled_sd > 0.
    static TwoSampleSummary from_moments(long n1, double mean1, long n2, double mean2,
                                         double pooled_sd);

    long n1() const { return n1_; }
    long n2() const { return n2_; }
    double mean1() const { return mean1_; }
    double mean2() const { return mean2_; }
    double pooled_sd() const { return pooled_sd_; }

    double estimate() const { return mean2_ - mean1_; }
    double standard_error() const { return standard_error_; }
    double df() const { return static_cast<double>(n1_ + n2_ - 2); }

private:
    TwoSampleSummary(long n1, double mean1, long n2, double mean2, double pooled_sd);

    long n1_;
    long n2_;
    double mean1_;
    double mean2_;
    double pooled_sd_;
    double standard_error_;
};

/// Equal-tailed interval estimate +/- half-width at two-sided confidence `level`.
struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
    double estimate = 0.0;

    double half_width() const { return upper - estimate; }
};

/// Builds an interval from reported bounds; the estimate is the midpoint.
ConfidenceInterval make_interval(double lower, double upper, double level);

/// Symmetric equivalence region (theta0 - delta, theta0 + delta).
struct EquivalenceMargin {
    double theta0 = 0.0;
    double delta = 0.0;

    static EquivalenceMargin centered(double delta, double theta0 = 0.0);
    double low() const { return theta0 - delta; }
    double high() const { return theta0 + delta; }
};

enum class TestKind { equivalence, noninferiority_low, noninferiority_high };
enum class Direction { lower, upper };

/// Student-t with pooled df, or the large-sample normal interval.
enum class CiMethod { student_t, normal };

struct TestDecision {
    bool reject_null = false;
    double p_value = 1.0;
    double alpha = 0.0;
    ConfidenceInterval interval;
    TestKind kind = TestKind::equivalence;
    /// Set for equivalence tests.
    std::optional<EquivalenceMargin> margin;
    /// Set for non-inferiority tests: the single margin bound.
    std::optional<double> bound;
};

std::string to_string(TestKind kind);
std::string to_string(Direction direction);

/// Pooled-variance summary of two raw samples. group_a is the reference arm.
TwoSampleSummary summarize(std::span<const double> group_a, std::span<const double> group_b);

/// Two-sided critical value for a symmetric interval at `level`.
double critical_value(const TwoSampleSummary& s, double level,
                      CiMethod method = CiMethod::student_t);

/// Interval built from a precomputed critical value (hot loops reuse one).
ConfidenceInterval interval_from_critical(const TwoSampleSummary& s, double level,
                                          double critical);

ConfidenceInterval confidence_interval(const TwoSampleSummary& s, double level,
                                       CiMethod method = CiMethod::student_t);

/// Closed inclusion: lo <= ci.lower and ci.upper <= hi.
bool interval_within_margins(const ConfidenceInterval& ci, double lo, double hi);

/// Max of the two one-sided p-values for theta <= theta0 - delta and
/// theta >= theta0 + delta.
double tost_p_value(const TwoSampleSummary& s, const EquivalenceMargin& m,
                    CiMethod method = CiMethod::student_t);

/// Rejects when the (1 - 2 alpha) interval lies inside the closed margin.
/// Requires 0 < alpha < 0.5.
TestDecision equivalence_test(const TwoSampleSummary& s, const EquivalenceMargin& m,
                              double alpha, CiMethod method = CiMethod::student_t);

/// One-sided test. Direction::upper claims theta < margin_bound when the
/// upper (1 - alpha) bound is <= margin_bound; Direction::lower mirrors it.
TestDecision noninferiority_test(const TwoSampleSummary& s, double margin_bound, double alpha,
                                 Direction direction, CiMethod method = CiMethod::student_t);

/// Replays a judgment from a reported two-sided interval. The interval level
/// must equal 1 - 2 alpha. The p-value is reconstructed on the normal scale
/// because a reported interval carries no degrees of freedom.
TestDecision noninferiority_test(const ConfidenceInterval& ci, double margin_bound, double alpha,
                                 Direction direction);

/// Two-sided pooled t-test p-value for H0: theta = theta0.
double two_sided_p_value(const TwoSampleSummary& s, double theta0 = 0.0,
                         CiMethod method = CiMethod::student_t);

/// Two raw samples read from a `group,value` CSV; labels in order of first
/// appearance, first label is the reference arm.
struct GroupedSamples {
    std::string label_a;
    std::string label_b;
    std::vector<double> group_a;
    std::vector<double> group_b;
};

GroupedSamples parse_group_csv(const std::string& text);
GroupedSamples read_group_csv(const std::string& path);

}  // namespace eqmargin
