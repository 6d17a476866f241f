#include "eqmargin/margins.hpp"

#include "eqmargin/dist.hpp"
#include "eqmargin/errors.hpp"

#include <cmath>

namespace eqmargin {

LeadMargin lead_margin(const ConfidenceInterval& ci, double epsilon, double theta0) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw DomainError("lead_margin: epsilon must be nonnegative and finite");
    }
    if (!std::isfinite(theta0)) throw DomainError("lead_margin: theta0 must be finite");
    if (!(ci.lower <= ci.upper)) throw DomainError("lead_margin: invalid interval");

    LeadMargin m;
    m.f_of_x = std::max(std::fabs(ci.lower - theta0), std::fabs(ci.upper - theta0));
    m.epsilon = epsilon;
    m.delta_of_x = m.f_of_x + epsilon;
    m.source_level = ci.level;
    return m;
}

double alpha_for_delta(const TwoSampleSummary& s, double delta, double theta0) {
    if (!(delta > 0.0)) throw DomainError("alpha_for_delta: delta must be positive");
    const double distance = std::fabs(s.estimate() - theta0);
    // Same orientation as the larger one-sided TOST p-value.
    return t_cdf((distance - delta) / s.standard_error(), s.df());
}

double delta_for_alpha(const TwoSampleSummary& s, double alpha, double theta0) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("delta_for_alpha: alpha must lie in (0, 1)");
    }
    const double distance = std::fabs(s.estimate() - theta0);
    if (alpha >= 0.5) return distance;
    return distance + t_quantile(1.0 - alpha, s.df()) * s.standard_error();
}

std::vector<CurvePoint> alpha_delta_curve(const TwoSampleSummary& s,
                                          std::span<const double> delta_grid, double theta0) {
    for (std::size_t i = 0; i < delta_grid.size(); ++i) {
        if (!(delta_grid[i] > 0.0)) {
            throw DomainError("alpha_delta_curve: grid values must be positive");
        }
        if (i > 0 && !(delta_grid[i] > delta_grid[i - 1])) {
            throw DomainError("alpha_delta_curve: grid must be strictly increasing");
        }
    }
    std::vector<CurvePoint> curve;
    curve.reserve(delta_grid.size());
    for (double delta : delta_grid) {
        curve.push_back({delta, alpha_for_delta(s, delta, theta0)});
    }
    return curve;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("grid: bounds must be finite");
    if (steps < 1) throw DomainError("grid: need at least one step");
    if (steps == 1) return {lo};
    if (!(lo < hi)) throw DomainError("grid: lo must be below hi");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    const double width = (hi - lo) / static_cast<double>(steps - 1);
    for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = lo + width * i;
    grid.back() = hi;
    return grid;
}

}  // namespace eqmargin
