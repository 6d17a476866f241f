#include "eqmargin/dist.hpp"
#include "eqmargin/errors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

using namespace eqmargin;

namespace {

const std::vector<double> kDfGrid{1, 2, 5, 30, 98, 1000};

std::vector<double> probability_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 999; ++i) grid.push_back(i / 1000.0);
    return grid;
}

}  // namespace

TEST(NormalCdf, CentreIsOneHalf) { EXPECT_EQ(normal_cdf(0.0), 0.5); }

TEST(NormalCdf, MatchesIntegratedDensity) {
    // Oracle: 1/2 + adaptive Simpson integral of the density.
    const double expected = oracle::normal_cdf(1.6449);
    EXPECT_NEAR(expected, 0.95, 1e-4);
    EXPECT_NEAR(normal_cdf(1.6449), expected, 1e-12);
    EXPECT_NEAR(normal_cdf(-1.6449), 0.05, 1e-4);
    for (double x : {-6.0, -2.5, -0.3, 0.7, 1.96, 4.0}) {
        EXPECT_NEAR(normal_cdf(x), oracle::normal_cdf(x), 1e-12) << x;
    }
}

TEST(NormalCdf, SymmetricAndMonotone) {
    double prev = 0.0;
    for (double x = -8.0; x <= 8.0; x += 0.01) {
        EXPECT_NEAR(normal_cdf(x) + normal_cdf(-x), 1.0, 1e-10);
        EXPECT_GE(normal_cdf(x), prev);
        prev = normal_cdf(x);
    }
}

TEST(NormalCdf, RejectsNonFinite) {
    EXPECT_THROW(normal_cdf(std::numeric_limits<double>::quiet_NaN()), DomainError);
    EXPECT_THROW(normal_cdf(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(NormalQuantile, InvertsCdf) {
    for (double p : probability_grid()) {
        EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-14) << p;
    }
    EXPECT_NEAR(normal_quantile(0.95), 1.6448536269514722, 1e-12);
    EXPECT_THROW(normal_quantile(0.0), DomainError);
    EXPECT_THROW(normal_quantile(1.0), DomainError);
}

TEST(IncompleteBeta, ClosedForms) {
    // I_x(1, 1) = x and I_x(a, 1) = x^a.
    for (double x : {0.0, 0.1, 0.5, 0.93, 1.0}) {
        EXPECT_NEAR(incomplete_beta(1.0, 1.0, x), x, 1e-15);
        EXPECT_NEAR(incomplete_beta(3.5, 1.0, x), std::pow(x, 3.5), 1e-14);
    }
    // Binomial identity: I_0.4(2, 3) = sum_{j=2..4} C(4,j) 0.4^j 0.6^(4-j) = 0.5248.
    EXPECT_NEAR(incomplete_beta(2.0, 3.0, 0.4), 0.5248, 1e-14);
    EXPECT_THROW(incomplete_beta(0.0, 1.0, 0.5), DomainError);
    EXPECT_THROW(incomplete_beta(1.0, 1.0, 1.5), DomainError);
}

TEST(TCdf, ClosedFormsForOneAndTwoDf) {
    for (double t : {-30.0, -2.0, -0.4, 0.0, 0.9, 3.3, 100.0}) {
        EXPECT_NEAR(t_cdf(t, 1.0), 0.5 + std::atan(t) / std::numbers::pi, 1e-14) << t;
        EXPECT_NEAR(t_cdf(t, 2.0), 0.5 + t / (2.0 * std::sqrt(2.0 + t * t)), 1e-14) << t;
    }
}

TEST(TCdf, MatchesIntegratedDensity) {
    for (double df : {3.0, 17.0, 98.0}) {
        for (double t : {-3.1, -1.2, 0.4, 2.2}) {
            EXPECT_NEAR(t_cdf(t, df), oracle::t_cdf(t, df), 1e-11) << t << " df=" << df;
        }
    }
}

TEST(TCdf, ApproachesNormalForLargeDf) {
    // Difference is O(1/df); at df = 1e7 it is below 1e-7.
    for (double x = -5.0; x <= 5.0; x += 0.25) {
        EXPECT_NEAR(t_cdf(x, 1e7), normal_cdf(x), 1e-6) << x;
    }
}

TEST(TQuantile, MedianIsZero) { EXPECT_EQ(t_quantile(0.5, 98.0), 0.0); }

TEST(TQuantile, CauchyClosedForm) {
    const double expected = oracle::cauchy_quantile(0.975);
    EXPECT_NEAR(expected, 12.7062, 1e-3);
    EXPECT_NEAR(t_quantile(0.975, 1.0), expected, 1e-10);
}

TEST(TQuantile, MatchesIntegratedDensityOracle) {
    const double expected = oracle::t_quantile(0.95, 98.0);
    EXPECT_NEAR(expected, 1.6606, 1e-3);
    EXPECT_NEAR(t_quantile(0.95, 98.0), expected, 1e-10);
}

TEST(TQuantile, RoundTripsOnProbabilityGrid) {
    const auto grid = probability_grid();
    for (double df : kDfGrid) {
        double worst = 0.0;
        for (double p : grid) {
            worst = std::fmax(worst, std::fabs(t_cdf(t_quantile(p, df), df) - p));
        }
        EXPECT_LT(worst, 1e-9) << "df=" << df;
    }
}

TEST(TQuantile, StrictlyIncreasingInP) {
    const auto grid = probability_grid();
    for (double df : kDfGrid) {
        double prev = -std::numeric_limits<double>::infinity();
        for (double p : grid) {
            const double q = t_quantile(p, df);
            EXPECT_GT(q, prev) << "p=" << p << " df=" << df;
            prev = q;
        }
    }
}

TEST(TQuantile, DomainErrors) {
    EXPECT_THROW(t_quantile(0.0, 5.0), DomainError);
    EXPECT_THROW(t_quantile(1.0, 5.0), DomainError);
    EXPECT_THROW(t_quantile(0.3, 0.0), DomainError);
    EXPECT_THROW(t_quantile(0.3, -2.0), DomainError);
    EXPECT_THROW(t_cdf(1.0, 0.0), DomainError);
}

TEST(HalfNormalBelow, CdfValues) {
    EXPECT_EQ(half_normal_below_cdf(0.499, 0.499, 0.01), 1.0);
    EXPECT_EQ(half_normal_below_cdf(0.6, 0.499, 0.01), 1.0);
    // P(|Z| >= 1 sd) = 2 * Phi(-1).
    EXPECT_NEAR(half_normal_below_cdf(0.489, 0.499, 0.01), 2.0 * normal_cdf(-1.0), 1e-12);
    EXPECT_THROW(half_normal_below_cdf(0.0, 0.5, 0.0), DomainError);
}
