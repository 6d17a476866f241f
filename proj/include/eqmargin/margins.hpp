#pragma once

#include "eqmargin/inference.hpp"

#include <span>
#include <vector>

namespace eqmargin {

/// Smallest margin at which the observed interval claims equivalence
/// (least equivalent allowable difference), plus a slack epsilon.
struct LeadMargin {
    double f_of_x = 0.0;      // max(|L - theta0|, |U - theta0|)
    double epsilon = 0.0;
    double delta_of_x = 0.0;  // f_of_x + epsilon
    double source_level = 0.0;
};

struct CurvePoint {
    double delta = 0.0;
    double alpha_min = 0.0;
};

inline constexpr double kDefaultLeadEpsilon = 0.001;

LeadMargin lead_margin(const ConfidenceInterval& ci, double epsilon = kDefaultLeadEpsilon,
                       double theta0 = 0.0);

/// Smallest alpha whose (1 - 2 alpha) interval fits inside [theta0 - delta,
/// theta0 + delta]: 1 - F((delta - |estimate - theta0|) / se). Values above
/// 0.5 mean the margin is narrower than the observed distance from theta0.
double alpha_for_delta(const TwoSampleSummary& s, double delta, double theta0 = 0.0);

/// Inverse of alpha_for_delta. For alpha >= 0.5 returns the infimum
/// |estimate - theta0|.
double delta_for_alpha(const TwoSampleSummary& s, double alpha, double theta0 = 0.0);

/// alpha_for_delta over a strictly increasing grid of positive margins.
std::vector<CurvePoint> alpha_delta_curve(const TwoSampleSummary& s,
                                          std::span<const double> delta_grid,
                                          double theta0 = 0.0);

/// Evenly spaced grid of `steps` points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int steps);

}  // namespace eqmargin
