#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "wheq/baselines.hpp"
#include "wheq/pipeline.hpp"

namespace wheq {
namespace {

ImagePlane ramp_plane() {
    ImagePlane p(16, 16);
    for (int i = 0; i < 256; ++i) p.data()[i] = static_cast<std::uint8_t>(i);
    return p;
}

TEST(GammaGrid, DefaultAndValidation) {
    const GammaGrid g = GammaGrid::standard();
    ASSERT_EQ(g.values().size(), 10u);
    EXPECT_DOUBLE_EQ(g.values().front(), 0.1);
    EXPECT_DOUBLE_EQ(g.values().back(), 1.0);
    EXPECT_THROW(GammaGrid(std::vector<double>{}), Error);
    EXPECT_THROW(GammaGrid(std::vector<double>{0.5, 0.5}), Error);
    EXPECT_THROW(GammaGrid(std::vector<double>{0.0}), Error);
    EXPECT_THROW(GammaGrid(std::vector<double>{1.2}), Error);
}

TEST(OptimizeGamma, SingletonGrid) {
    std::mt19937_64 rng(12);
    const ImagePlane p = oracle::textured_plane(rng, 40, 30);
    const SplitModel model = fit_split(p, {});
    const GammaOptimum opt = optimize_gamma(p, model, GammaGrid(std::vector<double>{0.5}), {});
    EXPECT_EQ(opt.gamma, 0.5);
    ASSERT_EQ(opt.sweep.size(), 1u);
    EXPECT_EQ(opt.curve.lut, build_curve(model, 0.5).lut);
    EXPECT_EQ(opt.enhanced, apply_curve(p, opt.curve));
}

TEST(OptimizeGamma, PicksSweepMaximumWithSmallestTie) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const ImagePlane p = oracle::textured_plane(rng, 24 + trial % 13, 20, 20 + trial, 140 + trial);
        const SplitModel model = fit_split(p, {});
        const GammaOptimum opt = optimize_gamma(p, model, GammaGrid::standard(), {});
        double best = -1.0;
        double best_gamma = 0.0;
        for (const auto& s : opt.sweep) {
            if (s.eme > best) {
                best = s.eme;
                best_gamma = s.gamma;
            }
        }
        ASSERT_EQ(opt.eme, best);
        ASSERT_EQ(opt.gamma, best_gamma);
    }
}

TEST(OptimizeGamma, IdenticalOutputsTieToSmallerGamma) {
    // Fully occupied segments give unit weights: every gamma yields the same curve.
    std::mt19937_64 rng(14);
    ImagePlane p(32, 32);
    for (int i = 0; i < 1024; ++i) p.data()[i] = static_cast<std::uint8_t>(i % 256);
    const SplitModel model = fit_split(p, {});
    ASSERT_EQ(model.weights.omega_l, 1.0);
    ASSERT_EQ(model.weights.omega_u, 1.0);
    const GammaOptimum opt = optimize_gamma(p, model, GammaGrid::standard(), {});
    EXPECT_EQ(opt.gamma, 0.1);
}

TEST(EnhancePlane, ConstantPlaneFallsBack) {
    const ImagePlane p(12, 9, 77);
    const PlaneResult r = enhance_plane(p, {});
    EXPECT_TRUE(r.report.fallback);
    EXPECT_EQ(r.report.fallback_reason, "NoValidThreshold");
    EXPECT_EQ(r.plane, p);
    EXPECT_EQ(r.report.curve.lut, identity_curve().lut);
    EXPECT_FALSE(r.report.gamma.has_value());
}

TEST(EnhancePlane, RampProducesCompleteReport) {
    const PlaneResult r = enhance_plane(ramp_plane(), {});
    ASSERT_FALSE(r.report.fallback);
    ASSERT_TRUE(r.report.threshold.has_value());
    ASSERT_TRUE(r.report.gamma.has_value());
    EXPECT_TRUE(GammaGrid::standard().contains(*r.report.gamma));
    EXPECT_EQ(r.report.sweep.size(), 10u);
    EXPECT_TRUE(std::is_sorted(r.report.curve.lut.begin(), r.report.curve.lut.end()));
    EXPECT_EQ(r.plane.size(), 256u);
    EXPECT_EQ(r.report.x0, 0);
}

TEST(EnhancePlane, DominatesUnitGammaCandidate) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 30; ++trial) {
        const ImagePlane p = oracle::textured_plane(rng, 50, 40, 60, 180);
        const PlaneResult r = enhance_plane(p, {});
        ASSERT_FALSE(r.report.fallback);
        const auto it = std::find_if(r.report.sweep.begin(), r.report.sweep.end(),
                                     [](const SweepPoint& s) { return s.gamma == 1.0; });
        ASSERT_NE(it, r.report.sweep.end());
        EXPECT_GE(r.report.eme_after, it->eme);
    }
}

RgbImage colorful_image(std::mt19937_64& rng, int w, int h) {
    const ImagePlane r = oracle::textured_plane(rng, w, h, 30, 200);
    const ImagePlane g = oracle::textured_plane(rng, w, h, 10, 160);
    const ImagePlane b = oracle::textured_plane(rng, w, h, 50, 230);
    RgbImage img(w, h);
    for (std::size_t i = 0; i < img.size(); ++i) img.data()[i] = {r.data()[i], g.data()[i], b.data()[i]};
    return img;
}

TEST(EnhanceHsv, HuePreservedBitExact) {
    std::mt19937_64 rng(16);
    const HsvImage in = rgb_to_hsv(colorful_image(rng, 48, 40));
    const HsvResult out = enhance_hsv(in, {});
    for (std::size_t i = 0; i < in.size(); ++i) {
        ASSERT_EQ(in.data()[i].h, out.image.data()[i].h);
    }
}

TEST(EnhanceImage, GrayscaleSFallsBack) {
    std::mt19937_64 rng(17);
    const ImagePlane p = oracle::textured_plane(rng, 40, 40);
    RgbImage img(40, 40);
    for (std::size_t i = 0; i < img.size(); ++i) img.data()[i] = {p.data()[i], p.data()[i], p.data()[i]};
    const auto [out, report] = enhance_image(img, {});
    ASSERT_EQ(report.channels.size(), 2u);
    EXPECT_FALSE(report.find("V")->fallback);
    EXPECT_TRUE(report.find("S")->fallback);
    for (Rgb px : out) {
        EXPECT_EQ(px.r, px.g);
        EXPECT_EQ(px.g, px.b);
    }
}

TEST(EnhanceImage, VOnlyPolicyLeavesSaturationAlone) {
    std::mt19937_64 rng(18);
    const RgbImage img = colorful_image(rng, 30, 30);
    EnhanceConfig cfg;
    cfg.channels = ChannelPolicy::V;
    const HsvImage in = rgb_to_hsv(img);
    const HsvResult out = enhance_hsv(in, cfg);
    ASSERT_EQ(out.report.channels.size(), 1u);
    for (std::size_t i = 0; i < in.size(); ++i) ASSERT_EQ(in.data()[i].s, out.image.data()[i].s);
}

TEST(EnhanceImage, HeavyDistortionGainsEme) {
    std::mt19937_64 rng(19);
    const RgbImage pristine = colorful_image(rng, 64, 64);
    const RgbImage low = contrast_distort(pristine, DistortionLevel::Heavy);
    const auto [out, report] = enhance_image(low, {});
    const ChannelReport* v = report.find("V");
    ASSERT_NE(v, nullptr);
    ASSERT_FALSE(v->fallback);
    EXPECT_GT(v->eme_after, v->eme_before);
}

TEST(EnhanceImage, DeterministicAndReentrant) {
    std::mt19937_64 rng(20);
    const RgbImage img = colorful_image(rng, 37, 29);
    const auto [a, ra] = enhance_image(img, {});
    const auto [b, rb] = enhance_image(img, {});
    EXPECT_EQ(a, b);
    for (std::size_t c = 0; c < ra.channels.size(); ++c) {
        EXPECT_EQ(ra.channels[c].gamma, rb.channels[c].gamma);
        EXPECT_EQ(ra.channels[c].eme_after, rb.channels[c].eme_after);
    }
    const auto [again, r2] = enhance_image(a, {});
    EXPECT_EQ(r2.channels.size(), 2u);
    EXPECT_EQ(again.width(), img.width());
}

}  // namespace
}  // namespace wheq
