// Serial reference loops. They follow the experiment steps literally through
// the public inference and margins API and exist to check the kernels.

#include "eqmargin/inference.hpp"
#include "eqmargin/margins.hpp"
#include "eqmargin/random_stream.hpp"
#include "eqmargin/simlab.hpp"
#include "simlab_detail.hpp"

#include <cmath>
#include <vector>

namespace eqmargin::reference {

namespace {

TwoSampleSummary draw_trial(RandomStream& stream, long n, double effect) {
    std::vector<double> control(static_cast<std::size_t>(n));
    std::vector<double> treated(static_cast<std::size_t>(n));
    for (double& x : control) x = sample_normal(stream, 0.0, 1.0);
    for (double& x : treated) x = sample_normal(stream, effect, 1.0);
    return summarize(control, treated);
}

}  // namespace

std::vector<SimPointResult> run_margin_correlation_experiment(const MarginCorrelationConfig& cfg) {
    cfg.validate();
    std::vector<SimPointResult> results;
    for (std::size_t g = 0; g < cfg.p_grid.size(); ++g) {
        const double p = cfg.p_grid[g];
        detail::MarginRepOutcomes out(static_cast<std::size_t>(cfg.reps_per_point));
        for (long rep = 0; rep < cfg.reps_per_point; ++rep) {
            RandomStream stream(cfg.seed, detail::margin_stream_id(g, rep));
            // Step 1: two independent samples.
            const auto summary = draw_trial(stream, cfg.n_per_arm, cfg.mu);
            // Step 2: two-sided interval at the test's level.
            const auto ci = confidence_interval(summary, 1.0 - 2.0 * cfg.test_alpha);
            const auto lead = lead_margin(ci, cfg.lead_epsilon);
            // Step 3: mixture indicator.
            const bool pathological = sample_bernoulli(stream, p);
            // Steps 4 and 5: independent or data-dependent margin.
            double delta = lead.delta_of_x;
            if (!pathological) {
                delta = cfg.half_normal_scale > 0.0
                            ? sample_half_normal_below(stream, cfg.mu - cfg.epsilon,
                                                       cfg.half_normal_scale)
                            : cfg.mu - cfg.epsilon;
            }
            if (!(delta > 0.0)) delta = detail::kMinMargin;

            const auto decision =
                equivalence_test(summary, EquivalenceMargin::centered(delta), cfg.test_alpha);
            const auto i = static_cast<std::size_t>(rep);
            out.f_of_x[i] = lead.f_of_x;
            out.delta[i] = delta;
            out.reject[i] = decision.reject_null;
            out.null_true[i] = std::fabs(cfg.mu) >= delta;
        }
        results.push_back(detail::finalize_point(p, out));
    }
    return results;
}

FerEstimate estimate_fer(const FerConfig& cfg) {
    cfg.validate();
    std::vector<std::uint8_t> reject;
    std::vector<std::uint8_t> null_true;
    for (long rep = 0; rep < cfg.reps; ++rep) {
        RandomStream stream(cfg.seed, detail::fer_stream_id(rep));
        const auto summary = draw_trial(stream, cfg.n_per_arm, cfg.theta);
        const auto ci = confidence_interval(summary, 1.0 - 2.0 * cfg.alpha);
        const double delta = lead_margin(ci, cfg.lead_epsilon).delta_of_x;
        const auto decision =
            equivalence_test(summary, EquivalenceMargin::centered(delta), cfg.alpha);
        reject.push_back(decision.reject_null);
        null_true.push_back(std::fabs(cfg.theta) >= delta);
    }
    return detail::finalize_fer(cfg, reject, null_true);
}

ReplicationResult run_replication_experiment(const ReplicationConfig& cfg) {
    cfg.validate();
    std::vector<std::uint8_t> success;
    for (long rep = 0; rep < cfg.reps; ++rep) {
        RandomStream stream(cfg.seed, detail::replication_stream_id(rep));
        const auto first = draw_trial(stream, cfg.n_per_arm, cfg.true_effect);
        const auto second = draw_trial(stream, cfg.n_per_arm, cfg.true_effect);
        if (cfg.mode == ReplicationMode::nhst_alpha_chase) {
            success.push_back(two_sided_p_value(second) <= two_sided_p_value(first) + cfg.epsilon);
        } else {
            const auto ci1 = confidence_interval(first, 1.0 - 2.0 * cfg.alpha_base);
            const auto margin = EquivalenceMargin::centered(lead_margin(ci1, cfg.epsilon).delta_of_x);
            success.push_back(equivalence_test(second, margin, cfg.alpha_base).reject_null);
        }
    }
    return detail::finalize_replication(success);
}

}  // namespace eqmargin::reference
