#include "eqmargin/errors.hpp"
#include "eqmargin/simlab.hpp"
#include "simlab_detail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace eqmargin {

namespace {

// Neumaier compensated sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

void check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::vector<double> MarginCorrelationConfig::default_p_grid() {
    constexpr int kPoints = 41;
    std::vector<double> grid(kPoints);
    for (int i = 0; i < kPoints; ++i) grid[i] = static_cast<double>(i) / (kPoints - 1);
    return grid;
}

void MarginCorrelationConfig::validate() const {
    check(n_per_arm >= 2, "n_per_arm must be at least 2");
    check(std::isfinite(mu), "mu must be finite");
    check(test_alpha > 0.0 && test_alpha < 0.5, "test_alpha must lie in (0, 0.5)");
    check(std::fabs(ci_level - (1.0 - 2.0 * test_alpha)) <= 1e-12,
          "ci_level must equal 1 - 2*test_alpha");
    check(!p_grid.empty(), "p_grid must not be empty");
    check(std::all_of(p_grid.begin(), p_grid.end(), is_probability),
          "p_grid values must lie in [0, 1]");
    check(reps_per_point >= 1 && reps_per_point <= (long{1} << 32) - 1,
          "reps_per_point must lie in [1, 2^32)");
    check(epsilon >= 0.0 && std::isfinite(epsilon), "epsilon must be nonnegative");
    check(half_normal_scale >= 0.0 && std::isfinite(half_normal_scale),
          "half_normal_scale must be nonnegative");
    check(lead_epsilon >= 0.0 && std::isfinite(lead_epsilon), "lead_epsilon must be nonnegative");
}

void FerConfig::validate() const {
    check(std::isfinite(theta), "theta must be finite");
    check(n_per_arm >= 2, "n_per_arm must be at least 2");
    check(alpha > 0.0 && alpha < 0.5, "alpha must lie in (0, 0.5)");
    check(lead_epsilon > 0.0 && std::isfinite(lead_epsilon), "lead_epsilon must be positive");
    check(reps >= 1, "reps must be positive");
    check(target_se >= 0.0, "target_se must be nonnegative");
}

void ReplicationConfig::validate() const {
    check(epsilon > 0.0 && std::isfinite(epsilon), "epsilon must be positive");
    check(n_per_arm >= 2, "n_per_arm must be at least 2");
    check(std::isfinite(true_effect), "true_effect must be finite");
    check(reps >= 1000, "reps must be at least 1000");
    check(alpha_base > 0.0 && alpha_base < 0.5, "alpha_base must lie in (0, 0.5)");
}

std::string to_string(ReplicationMode mode) {
    return mode == ReplicationMode::nhst_alpha_chase ? "nhst_alpha_chase"
                                                     : "equivalence_lead_margin";
}

double proportion_standard_error(double rate, long n) {
    if (n <= 0) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(rate * (1.0 - rate) / static_cast<double>(n));
}

double SimPointResult::pseudo_type1_standard_error() const {
    return proportion_standard_error(pseudo_type1, null_true_count);
}

double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DomainError("pearson_correlation: length mismatch");
    if (xs.size() < 2) throw DomainError("pearson_correlation: need at least 2 pairs");

    const auto n = static_cast<double>(xs.size());
    CompensatedSum sx;
    CompensatedSum sy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx.add(xs[i]);
        sy.add(ys[i]);
    }
    const double mx = sx.value() / n;
    const double my = sy.value() / n;

    CompensatedSum sxx;
    CompensatedSum syy;
    CompensatedSum sxy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx.add(dx * dx);
        syy.add(dy * dy);
        sxy.add(dx * dy);
    }
    const bool x_const = !(sxx.value() > 0.0);
    const bool y_const = !(syy.value() > 0.0);
    if (x_const && y_const) {
        throw UndefinedCorrelationError("pearson_correlation: both inputs are constant");
    }
    if (x_const || y_const) return 0.0;
    const double r = sxy.value() / std::sqrt(sxx.value() * syy.value());
    return std::clamp(r, -1.0, 1.0);
}

namespace detail {

SimPointResult finalize_point(double p, const MarginRepOutcomes& outcomes) {
    SimPointResult r;
    r.p = p;
    r.reps = static_cast<long>(outcomes.reject.size());
    for (std::size_t i = 0; i < outcomes.reject.size(); ++i) {
        r.reject_count += outcomes.reject[i];
        r.null_true_count += outcomes.null_true[i];
        r.false_claim_count += outcomes.reject[i] & outcomes.null_true[i];
    }
    const auto reps = static_cast<double>(r.reps);
    r.rejection_rate = static_cast<double>(r.reject_count) / reps;
    r.null_true_fraction = static_cast<double>(r.null_true_count) / reps;
    r.fer_numerator_rate = static_cast<double>(r.false_claim_count) / reps;
    r.pseudo_type1 = r.null_true_count > 0 ? static_cast<double>(r.false_claim_count) /
                                                 static_cast<double>(r.null_true_count)
                                           : std::numeric_limits<double>::quiet_NaN();
    r.mc_standard_error = proportion_standard_error(r.rejection_rate, r.reps);
    if (r.reps >= 2) {
        try {
            r.observed_correlation = pearson_correlation(outcomes.f_of_x, outcomes.delta);
        } catch (const UndefinedCorrelationError&) {
            r.observed_correlation = std::numeric_limits<double>::quiet_NaN();
        }
    } else {
        r.observed_correlation = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

FerEstimate finalize_fer(const FerConfig& cfg, std::span<const std::uint8_t> reject,
                         std::span<const std::uint8_t> null_true) {
    FerEstimate e;
    e.reps = static_cast<long>(reject.size());
    for (std::size_t i = 0; i < reject.size(); ++i) {
        e.reject_count += reject[i];
        e.false_claim_count += reject[i] & null_true[i];
    }
    e.rejection_rate = static_cast<double>(e.reject_count) / static_cast<double>(e.reps);
    e.estimate = e.reject_count > 0 ? static_cast<double>(e.false_claim_count) /
                                          static_cast<double>(e.reject_count)
                                    : std::numeric_limits<double>::quiet_NaN();
    e.mc_standard_error = proportion_standard_error(e.estimate, e.reject_count);
    if (cfg.target_se > 0.0) {
        // Worst case at the bound itself: the estimate sits at alpha.
        const double attainable = proportion_standard_error(cfg.alpha, e.reps);
        if (attainable > cfg.target_se) {
            e.warning = "reps=" + std::to_string(e.reps) + " gives Monte Carlo SE near " +
                        std::to_string(attainable) + ", above the requested " +
                        std::to_string(cfg.target_se);
        }
    }
    return e;
}

ReplicationResult finalize_replication(std::span<const std::uint8_t> success) {
    ReplicationResult r;
    r.reps = static_cast<long>(success.size());
    for (auto s : success) r.success_count += s;
    r.probability = static_cast<double>(r.success_count) / static_cast<double>(r.reps);
    r.mc_standard_error = proportion_standard_error(r.probability, r.reps);
    return r;
}

}  // namespace detail

}  // namespace eqmargin
