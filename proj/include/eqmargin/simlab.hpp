#pragma once

// Monte Carlo laboratory for data-dependent equivalence margins.
//
// Every replication draws from its own RandomStream keyed by
// (seed, stream_id), and per-replication outcomes are reduced serially in
// replication order. Results are therefore bit-identical for any worker
// count. The `reference` namespace holds plain serial loops built on the
// public inference API; tests compare the parallel kernels against them.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace eqmargin {

/// Worker count for the OpenMP kernels; 0 uses the OpenMP default.
struct ExecutionPolicy {
    int workers = 0;
};

/// Mixture experiment: with probability p the margin is the LEAD boundary of
/// the observed interval, otherwise it is drawn independently of the data
/// from a half-normal just below the true effect.
struct MarginCorrelationConfig {
    long n_per_arm = 50;
    double mu = 0.5;
    double ci_level = 0.90;
    double test_alpha = 0.05;
    std::vector<double> p_grid = default_p_grid();
    long reps_per_point = 50000;
    double epsilon = 0.001;
    /// SD of the half-normal margin draw. 0 pins the independent margin at
    /// mu - epsilon.
    double half_normal_scale = 0.01;
    double lead_epsilon = 0.0;
    std::uint64_t seed = 0;

    /// 41 equally spaced values on [0, 1].
    static std::vector<double> default_p_grid();
    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

struct SimPointResult {
    double p = 0.0;
    /// Pearson correlation of f(X) and the margin over all replications.
    double observed_correlation = 0.0;
    double rejection_rate = 0.0;
    /// #(reject and improper null true) / #(improper null true); NaN when the
    /// null was never true.
    double pseudo_type1 = 0.0;
    double null_true_fraction = 0.0;
    /// #(reject and improper null true) / reps.
    double fer_numerator_rate = 0.0;
    /// Binomial standard error of rejection_rate.
    double mc_standard_error = 0.0;

    long reps = 0;
    long reject_count = 0;
    long null_true_count = 0;
    long false_claim_count = 0;

    /// Binomial standard error of pseudo_type1 (conditional on null_true_count).
    double pseudo_type1_standard_error() const;

    friend bool operator==(const SimPointResult&, const SimPointResult&) = default;
};

std::vector<SimPointResult> run_margin_correlation_experiment(const MarginCorrelationConfig& cfg,
                                                              ExecutionPolicy exec = {});

/// Pathological mode: the margin is always max(|L|, |U|) + lead_epsilon.
struct FerConfig {
    double theta = 0.5;
    long n_per_arm = 50;
    double alpha = 0.05;
    double lead_epsilon = 0.001;
    long reps = 50000;
    std::uint64_t seed = 0;
    /// Requested Monte Carlo SE; 0 disables the precision check.
    double target_se = 0.0;

    void validate() const;
};

struct FerEstimate {
    double estimate = 0.0;
    double mc_standard_error = 0.0;
    double rejection_rate = 0.0;
    long reps = 0;
    long reject_count = 0;
    long false_claim_count = 0;
    /// Non-empty when reps cannot reach target_se.
    std::string warning;

    friend bool operator==(const FerEstimate&, const FerEstimate&) = default;
};

FerEstimate estimate_fer(const FerConfig& cfg, ExecutionPolicy exec = {});

enum class ReplicationMode { nhst_alpha_chase, equivalence_lead_margin };

std::string to_string(ReplicationMode mode);

/// Two independent identical trials. nhst_alpha_chase: trial 2 confirms when
/// its two-sided p-value is <= p1 + epsilon. equivalence_lead_margin: trial 2
/// claims equivalence against trial 1's LEAD margin (slack epsilon).
struct ReplicationConfig {
    ReplicationMode mode = ReplicationMode::nhst_alpha_chase;
    double epsilon = 1e-6;
    long n_per_arm = 50;
    double true_effect = 0.5;
    long reps = 100000;
    double alpha_base = 0.05;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ReplicationResult {
    double probability = 0.0;
    double mc_standard_error = 0.0;
    long reps = 0;
    long success_count = 0;

    friend bool operator==(const ReplicationResult&, const ReplicationResult&) = default;
};

ReplicationResult run_replication_experiment(const ReplicationConfig& cfg,
                                             ExecutionPolicy exec = {});

/// Product-moment correlation. Throws UndefinedCorrelationError when both
/// inputs are constant and returns 0 when exactly one is.
double pearson_correlation(std::span<const double> xs, std::span<const double> ys);

/// Binomial standard error sqrt(r (1 - r) / n).
double proportion_standard_error(double rate, long n);

namespace reference {

std::vector<SimPointResult> run_margin_correlation_experiment(const MarginCorrelationConfig& cfg);
FerEstimate estimate_fer(const FerConfig& cfg);
ReplicationResult run_replication_experiment(const ReplicationConfig& cfg);

}  // namespace reference

}  // namespace eqmargin
