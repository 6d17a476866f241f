#include "eqmargin/dist.hpp"
#include "eqmargin/errors.hpp"
#include "eqmargin/random_stream.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace eqmargin;

TEST(RandomStream, SameKeySameSequence) {
    RandomStream a(7, 3);
    RandomStream b(7, 3);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(sample_normal(a, 0.0, 1.0), sample_normal(b, 0.0, 1.0));
}

TEST(RandomStream, DistinctKeysDiffer) {
    RandomStream base(7, 3);
    RandomStream other_stream(7, 4);
    RandomStream other_seed(8, 3);
    int same_stream = 0;
    int same_seed = 0;
    for (int i = 0; i < 100; ++i) {
        const auto x = base.next_u64();
        same_stream += x == other_stream.next_u64();
        same_seed += x == other_seed.next_u64();
    }
    EXPECT_EQ(same_stream, 0);
    EXPECT_EQ(same_seed, 0);
}

TEST(RandomStream, GoldenValuesAreStable) {
    // Frozen outputs; a change here breaks reproducibility of published runs.
    RandomStream s(42, 0);
    const std::uint64_t first = s.next_u64();
    const std::uint64_t second = s.next_u64();
    RandomStream again(42, 0);
    EXPECT_EQ(again.next_u64(), first);
    EXPECT_EQ(again.next_u64(), second);
    EXPECT_EQ(first, 1640343650075571194ULL);
}

TEST(RandomStream, UniformInUnitInterval) {
    RandomStream s(1, 1);
    double sum = 0.0;
    constexpr int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(SampleNormal, MeanAndVarianceOfMillionDraws) {
    RandomStream s(2024, 0);
    constexpr int n = 1000000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_normal(s, 0.5, 1.0);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = (sum_sq - n * mean * mean) / (n - 1);
    EXPECT_NEAR(mean, 0.5, 4.0 / std::sqrt(static_cast<double>(n)));
    EXPECT_NEAR(var, 1.0, 0.01);
}

TEST(SampleNormal, MatchesNormalCdfInKolmogorovDistance) {
    RandomStream s(99, 5);
    constexpr int n = 20000;
    std::vector<double> xs(n);
    for (double& x : xs) x = sample_normal(s, 2.0, 3.0);
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = normal_cdf((xs[i] - 2.0) / 3.0);
        d = std::fmax(d, std::fmax(std::fabs(f - i / double(n)), std::fabs(f - (i + 1) / double(n))));
    }
    // 0.1% critical value of the Kolmogorov statistic.
    EXPECT_LT(d, 1.95 / std::sqrt(static_cast<double>(n)));
}

TEST(SampleNormal, RejectsNonPositiveSd) {
    RandomStream s(1, 1);
    EXPECT_THROW(sample_normal(s, 0.0, 0.0), DomainError);
    EXPECT_THROW(sample_normal(s, 0.0, -1.0), DomainError);
}

TEST(SampleHalfNormalBelow, StaysWithinTailBound) {
    RandomStream s(3, 0);
    for (int i = 0; i < 100000; ++i) {
        const double x = sample_half_normal_below(s, 0.499, 0.01);
        ASSERT_LT(x, 0.499);
        ASSERT_GT(x, 0.499 - 8.0 * 0.01);
    }
}

TEST(SampleHalfNormalBelow, MillionDrawsStrictlyBelowBound) {
    RandomStream s(4, 0);
    int violations = 0;
    for (int i = 0; i < 1000000; ++i) violations += !(sample_half_normal_below(s, 0.499, 0.01) < 0.499);
    EXPECT_EQ(violations, 0);
}

TEST(SampleHalfNormalBelow, DegenerateScaleApproachesBound) {
    RandomStream s(5, 0);
    for (int i = 0; i < 1000; ++i) {
        const double x = sample_half_normal_below(s, 0.499, 1e-300);
        ASSERT_LT(x, 0.499);
        ASSERT_NEAR(x, 0.499, 1e-15);
    }
}

TEST(SampleHalfNormalBelow, MatchesHalfNormalCdf) {
    RandomStream s(6, 0);
    constexpr int n = 20000;
    std::vector<double> xs(n);
    for (double& x : xs) x = sample_half_normal_below(s, 0.499, 0.01);
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = half_normal_below_cdf(xs[i], 0.499, 0.01);
        d = std::fmax(d, std::fmax(std::fabs(f - i / double(n)), std::fabs(f - (i + 1) / double(n))));
    }
    EXPECT_LT(d, 1.95 / std::sqrt(static_cast<double>(n)));
}

TEST(SampleHalfNormalBelow, RejectsNonPositiveScale) {
    RandomStream s(1, 1);
    EXPECT_THROW(sample_half_normal_below(s, 0.5, 0.0), DomainError);
}

TEST(SampleBernoulli, EndpointsAreDeterministic) {
    RandomStream s(8, 8);
    for (int i = 0; i < 10000; ++i) {
        ASSERT_FALSE(sample_bernoulli(s, 0.0));
        ASSERT_TRUE(sample_bernoulli(s, 1.0));
    }
    EXPECT_THROW(sample_bernoulli(s, 1.5), DomainError);
}
