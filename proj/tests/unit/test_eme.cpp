#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wheq/eme.hpp"

namespace wheq {
namespace {

TEST(BlockContrast, FrozenValues) {
    EXPECT_EQ(block_contrast(0, 0, 1.0), 1.0);
    EXPECT_NEAR(block_contrast(255, 255, 1.0), 0.0019569471624266144, 1e-18);
    EXPECT_EQ(block_contrast(0, 255, 1.0), 1.0);
    const std::vector<std::uint8_t> block{40, 7, 99, 12};
    EXPECT_DOUBLE_EQ(block_contrast(block, 1.0), (99.0 - 7 + 1) / (99.0 + 7 + 1));
}

TEST(ComputeEme, SingleBlockPlanes) {
    const EmeScore black = compute_eme(ImagePlane(8, 8, 0));
    EXPECT_EQ(black.blocks_scored, 1u);
    EXPECT_NEAR(black.value, std::log(2.0), 1e-15);

    const EmeScore white = compute_eme(ImagePlane(8, 8, 255));
    EXPECT_NEAR(white.value, 3.82589987437044e-06, 1e-18);
}

TEST(ComputeEme, PartialEdgeBlocksAreScored) {
    EXPECT_EQ(compute_eme(ImagePlane(9, 17, 3)).blocks_scored, 2u * 3u);
    EXPECT_EQ(compute_eme(ImagePlane(1, 1, 3)).blocks_scored, 1u);
}

TEST(ComputeEme, MatchesNaiveTiler) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> dim(1, 40);
    for (int trial = 0; trial < 60; ++trial) {
        const ImagePlane p = oracle::random_plane(rng, dim(rng), dim(rng));
        for (auto [bw, bh] : {std::pair{1, 1}, {4, 4}, {8, 8}, {7, 5}}) {
            const EmeParams params{bw, bh, 1.0, 1.0};
            ASSERT_NEAR(compute_eme(p, params).value, oracle::eme(p, bw, bh, 1.0, 1.0), 1e-12);
        }
    }
}

TEST(ComputeEme, BoundedAndDeterministic) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 50; ++trial) {
        const ImagePlane p = oracle::textured_plane(rng, 33, 21);
        const double v = compute_eme(p).value;
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, std::log(2.0) + 1e-15);
        EXPECT_EQ(compute_eme(p).value, v);
    }
}

TEST(ComputeEme, MirrorInvariantWhenWidthDividesBlocks) {
    std::mt19937_64 rng(11);
    const ImagePlane p = oracle::random_plane(rng, 32, 20);
    ImagePlane m(32, 20);
    for (int y = 0; y < 20; ++y)
        for (int x = 0; x < 32; ++x) m(x, y) = p(31 - x, y);
    EXPECT_NEAR(compute_eme(p).value, compute_eme(m).value, 1e-15);
}

TEST(EmeParams, Validation) {
    EXPECT_THROW(compute_eme(ImagePlane(2, 2), EmeParams{0, 8, 1, 1}), Error);
    EXPECT_THROW(compute_eme(ImagePlane(2, 2), EmeParams{8, 8, 1, 0.5}), Error);
}

}  // namespace
}  // namespace wheq
