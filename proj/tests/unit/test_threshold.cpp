#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wheq/threshold.hpp"

namespace wheq {
namespace {

TEST(EntropyScore, FrozenValues) {
    const EntropyParams p;  // alpha 1e-6, beta 1
    // Balanced split: r = alpha / (1 + alpha).
    EXPECT_NEAR(entropy_score(0.5, 0.5, p), 9.999975000547108e-13, 1e-20);
    // Values from direct evaluation of r * ln(r + beta) in an independent script.
    EXPECT_NEAR(entropy_score(0.25, 0.75, p), 0.20273292345307242, 1e-12);
    EXPECT_NEAR(entropy_score(1.0, 0.0, p), 13.122338132706952, 1e-9);
}

TEST(EntropyScore, HistogramOverloadMatchesMasses) {
    const Histogram h = Histogram::from_counts({1, 0, 2, 1});
    const EntropyParams p;
    EXPECT_DOUBLE_EQ(entropy_score(h, 0, p), entropy_score(0.25, 0.75, p));
    EXPECT_THROW(entropy_score(h, 3, p), Error);
}

TEST(EntropyScore, AlwaysFiniteUnderValidParams) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double lo = u(rng);
        EntropyParams p;
        p.alpha = 1e-9 + u(rng);
        p.beta = 1.0 + 3.0 * u(rng);
        ASSERT_TRUE(std::isfinite(entropy_score(lo, 1.0 - lo, p)));
    }
    EXPECT_TRUE(std::isfinite(entropy_score(1.0, 0.0, EntropyParams{})));
}

TEST(FindThreshold, SingleSpikeHasNoValidThreshold) {
    std::vector<std::uint64_t> counts(256, 0);
    counts[90] = 1000;
    try {
        find_threshold(Histogram::from_counts(counts));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoValidThreshold);
    }
}

TEST(FindThreshold, TwoEqualSpikesTieBreaksToSmallestT) {
    std::vector<std::uint64_t> counts(256, 0);
    counts[50] = 500;
    counts[200] = 500;
    const ThresholdResult r = find_threshold(Histogram::from_counts(counts));
    EXPECT_EQ(r.t, 50);
    ASSERT_EQ(r.candidates.front(), 50);
    ASSERT_EQ(r.candidates.back(), 199);
    for (double s : r.scores) EXPECT_EQ(s, r.scores.front());
}

TEST(FindThreshold, FloorRejectsDegenerateSplits) {
    // 99.5% at level 10, 0.5% at level 240: no split gives both sides 1%.
    std::vector<std::uint64_t> counts(256, 0);
    counts[10] = 995;
    counts[240] = 5;
    EXPECT_THROW(find_threshold(Histogram::from_counts(counts)), Error);
    EntropyParams loose;
    loose.min_segment_mass = 0.001;
    EXPECT_EQ(find_threshold(Histogram::from_counts(counts), loose).t, 10);
}

TEST(FindThreshold, MatchesExhaustiveScan) {
    std::mt19937_64 rng(5);
    const EntropyParams p;
    int compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto counts = oracle::random_counts(rng);
        bool found = false;
        const int expect = oracle::entropy_threshold(counts, p.alpha, p.beta, p.min_segment_mass, &found);
        const Histogram h = Histogram::from_counts(counts);
        if (!found) {
            EXPECT_THROW(find_threshold(h, p), Error);
            continue;
        }
        const ThresholdResult r = find_threshold(h, p);
        ASSERT_EQ(r.t, expect) << "trial " << trial;
        ++compared;
    }
    EXPECT_GT(compared, 250);
}

TEST(FindThreshold, ResultInvariants) {
    std::mt19937_64 rng(6);
    const EntropyParams p;
    for (int trial = 0; trial < 200; ++trial) {
        auto counts = oracle::random_counts(rng);
        counts[3] += 100;
        counts[250] += 100;
        const Histogram h = Histogram::from_counts(counts);
        const ThresholdResult r = find_threshold(h, p);
        ASSERT_EQ(r.candidates.size(), r.scores.size());
        const double best = *std::max_element(r.scores.begin(), r.scores.end());
        EXPECT_EQ(r.score_of(r.t), best);
        // Floors hold on both sides.
        std::uint64_t below = 0;
        for (int x = 0; x <= r.t; ++x) below += counts[x];
        EXPECT_GE(static_cast<double>(below) / h.total, p.min_segment_mass);
        EXPECT_GE(static_cast<double>(h.total - below) / h.total, p.min_segment_mass);
        // Scaling all counts leaves t unchanged.
        auto scaled = counts;
        for (auto& c : scaled) c *= 7;
        EXPECT_EQ(find_threshold(Histogram::from_counts(scaled), p).t, r.t);
    }
}

TEST(EntropyParams, Validation) {
    EntropyParams p;
    p.alpha = 0.0;
    EXPECT_THROW(p.validate(), Error);
    p = {};
    p.beta = 0.5;
    EXPECT_THROW(p.validate(), Error);
    p = {};
    p.min_segment_mass = 0.5;
    EXPECT_THROW(p.validate(), Error);
}

}  // namespace
}  // namespace wheq
