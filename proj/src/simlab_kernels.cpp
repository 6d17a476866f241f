// OpenMP kernels. Each replication owns its RandomStream and writes only its
// own slot of the outcome arrays; reductions happen afterwards in
// replication order, so the worker count never changes a result bit.

#include "eqmargin/dist.hpp"
#include "eqmargin/inference.hpp"
#include "eqmargin/margins.hpp"
#include "eqmargin/random_stream.hpp"
#include "eqmargin/simlab.hpp"
#include "simlab_detail.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <vector>

namespace eqmargin {

namespace {

int resolve_workers(ExecutionPolicy exec) {
    return exec.workers > 0 ? exec.workers : omp_get_max_threads();
}

// Runs body(rep, scratch_a, scratch_b) for every replication on `workers`
// threads. The first exception thrown by any replication is rethrown.
template <class Body>
void parallel_reps(long reps, long n_per_arm, int workers, Body&& body) {
    std::exception_ptr failure;
#pragma omp parallel num_threads(workers)
    {
        std::vector<double> a(static_cast<std::size_t>(n_per_arm));
        std::vector<double> b(static_cast<std::size_t>(n_per_arm));
#pragma omp for schedule(static)
        for (long rep = 0; rep < reps; ++rep) {
            try {
                body(rep, a, b);
            } catch (...) {
#pragma omp critical(eqmargin_failure)
                if (!failure) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<SimPointResult> run_margin_correlation_experiment(const MarginCorrelationConfig& cfg,
                                                              ExecutionPolicy exec) {
    cfg.validate();
    const int workers = resolve_workers(exec);
    const double level = 1.0 - 2.0 * cfg.test_alpha;
    const double critical = t_quantile(0.5 * (1.0 + level), 2.0 * cfg.n_per_arm - 2.0);
    const double independent_bound = cfg.mu - cfg.epsilon;
    const double true_effect = std::fabs(cfg.mu);

    std::vector<SimPointResult> results;
    results.reserve(cfg.p_grid.size());
    for (std::size_t g = 0; g < cfg.p_grid.size(); ++g) {
        const double p = cfg.p_grid[g];
        detail::MarginRepOutcomes out(static_cast<std::size_t>(cfg.reps_per_point));

        parallel_reps(cfg.reps_per_point, cfg.n_per_arm, workers,
                      [&](long rep, std::vector<double>& a, std::vector<double>& b) {
            RandomStream stream(cfg.seed, detail::margin_stream_id(g, rep));
            detail::draw_arm(stream, 0.0, a);
            detail::draw_arm(stream, cfg.mu, b);
            const auto summary = summarize(a, b);
            const auto ci = interval_from_critical(summary, level, critical);
            const double f = std::fmax(std::fabs(ci.lower), std::fabs(ci.upper));

            double delta = 0.0;
            if (sample_bernoulli(stream, p)) {
                delta = f + cfg.lead_epsilon;
            } else if (cfg.half_normal_scale > 0.0) {
                delta = sample_half_normal_below(stream, independent_bound, cfg.half_normal_scale);
            } else {
                delta = independent_bound;
            }
            if (!(delta > 0.0)) delta = detail::kMinMargin;

            const auto i = static_cast<std::size_t>(rep);
            out.f_of_x[i] = f;
            out.delta[i] = delta;
            out.reject[i] = interval_within_margins(ci, -delta, delta);
            out.null_true[i] = true_effect >= delta;
        });
        results.push_back(detail::finalize_point(p, out));
    }
    return results;
}

FerEstimate estimate_fer(const FerConfig& cfg, ExecutionPolicy exec) {
    cfg.validate();
    const double level = 1.0 - 2.0 * cfg.alpha;
    const double critical = t_quantile(0.5 * (1.0 + level), 2.0 * cfg.n_per_arm - 2.0);
    const double true_effect = std::fabs(cfg.theta);
    const auto reps = static_cast<std::size_t>(cfg.reps);
    std::vector<std::uint8_t> reject(reps);
    std::vector<std::uint8_t> null_true(reps);

    parallel_reps(cfg.reps, cfg.n_per_arm, resolve_workers(exec),
                  [&](long rep, std::vector<double>& a, std::vector<double>& b) {
        RandomStream stream(cfg.seed, detail::fer_stream_id(rep));
        detail::draw_arm(stream, 0.0, a);
        detail::draw_arm(stream, cfg.theta, b);
        const auto ci = interval_from_critical(summarize(a, b), level, critical);
        const double delta = std::fmax(std::fabs(ci.lower), std::fabs(ci.upper)) + cfg.lead_epsilon;
        const auto i = static_cast<std::size_t>(rep);
        reject[i] = interval_within_margins(ci, -delta, delta);
        null_true[i] = true_effect >= delta;
    });
    return detail::finalize_fer(cfg, reject, null_true);
}

ReplicationResult run_replication_experiment(const ReplicationConfig& cfg, ExecutionPolicy exec) {
    cfg.validate();
    const double level = 1.0 - 2.0 * cfg.alpha_base;
    const double critical = t_quantile(0.5 * (1.0 + level), 2.0 * cfg.n_per_arm - 2.0);
    std::vector<std::uint8_t> success(static_cast<std::size_t>(cfg.reps));

    parallel_reps(cfg.reps, cfg.n_per_arm, resolve_workers(exec),
                  [&](long rep, std::vector<double>& a, std::vector<double>& b) {
        RandomStream stream(cfg.seed, detail::replication_stream_id(rep));
        detail::draw_arm(stream, 0.0, a);
        detail::draw_arm(stream, cfg.true_effect, b);
        const auto first = summarize(a, b);
        detail::draw_arm(stream, 0.0, a);
        detail::draw_arm(stream, cfg.true_effect, b);
        const auto second = summarize(a, b);

        bool ok = false;
        if (cfg.mode == ReplicationMode::nhst_alpha_chase) {
            const double chased_alpha = two_sided_p_value(first) + cfg.epsilon;
            ok = two_sided_p_value(second) <= chased_alpha;
        } else {
            const auto ci1 = interval_from_critical(first, level, critical);
            const double delta =
                std::fmax(std::fabs(ci1.lower), std::fabs(ci1.upper)) + cfg.epsilon;
            const auto ci2 = interval_from_critical(second, level, critical);
            ok = interval_within_margins(ci2, -delta, delta);
        }
        success[static_cast<std::size_t>(rep)] = ok;
    });
    return detail::finalize_replication(success);
}

}  // namespace eqmargin
