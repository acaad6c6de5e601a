#ifndef WHEQ_PIPELINE_HPP
#define WHEQ_PIPELINE_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wheq/eme.hpp"
#include "wheq/histogram.hpp"
#include "wheq/image.hpp"
#include "wheq/threshold.hpp"
#include "wheq/tonemap.hpp"

namespace wheq {

/// Candidate exponents for the weight term, strictly increasing in (0, 1].
class GammaGrid {
public:
    GammaGrid() : GammaGrid(standard()) {}

    explicit GammaGrid(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) {
            throw Error(ErrorCode::InvalidArgument, "gamma grid is empty");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const double g = values_[i];
            if (!(g > 0.0 && g <= 1.0)) {
                throw Error(ErrorCode::InvalidArgument, "gamma values must be in (0, 1]");
            }
            if (i > 0 && !(g > values_[i - 1])) {
                throw Error(ErrorCode::InvalidArgument, "gamma grid must be strictly increasing");
            }
        }
    }

    /// {0.1, 0.2, ..., 1.0}
    static GammaGrid standard() {
        std::vector<double> v;
        for (int i = 1; i <= 10; ++i) v.push_back(i / 10.0);
        return GammaGrid(std::move(v));
    }

    const std::vector<double>& values() const noexcept { return values_; }
    bool contains(double g) const {
        return std::find(values_.begin(), values_.end(), g) != values_.end();
    }

private:
    std::vector<double> values_;
};

enum class ChannelPolicy { V, SV };

struct EnhanceConfig {
    GammaGrid gamma_grid = GammaGrid::standard();
    EntropyParams entropy;
    EmeParams eme;
    ChannelPolicy channels = ChannelPolicy::SV;
    UpperMapForm upper_map_form = UpperMapForm::AsPrinted;

    void validate() const {
        entropy.validate();
        eme.validate();
    }
};

struct SweepPoint {
    double gamma = 0.0;
    double eme = 0.0;
};

struct ChannelReport {
    std::string channel;  // "V" or "S"
    bool fallback = false;
    std::string fallback_reason;
    std::optional<int> threshold;
    double omega_l = 1.0;
    double omega_u = 1.0;
    int x0 = 0;
    std::optional<double> gamma;
    double eme_before = 0.0;
    double eme_after = 0.0;
    std::vector<SweepPoint> sweep;
    ToneCurve curve = identity_curve();
};

struct EnhanceReport {
    std::vector<ChannelReport> channels;
    double wall_time_ms = 0.0;

    const ChannelReport* find(const std::string& name) const {
        for (const auto& c : channels) {
            if (c.channel == name) return &c;
        }
        return nullptr;
    }
};

struct GammaOptimum {
    double gamma = 1.0;
    ToneCurve curve;
    ImagePlane enhanced;
    double eme = 0.0;
    std::vector<SweepPoint> sweep;
};

/// Per-plane artifacts that do not depend on gamma.
struct SplitModel {
    int t = 0;
    SegmentWeights weights;
    SegmentCdf lower;
    SegmentCdf upper;
    int x0 = 0;
};

inline ToneCurve build_curve(const SplitModel& model, double gamma,
                             UpperMapForm form = UpperMapForm::AsPrinted) {
    const auto lower = build_lower_map(model.lower, model.weights.omega_l, gamma, model.x0, model.t);
    const auto upper = build_upper_map(model.upper, model.weights.omega_u, gamma, model.t, kLevels, form);
    return concat_maps(lower, upper, gamma, model.t);
}

/// Sweep the grid, keep the gamma whose enhanced plane scores the highest EME.
/// Ties go to the smaller gamma.
inline GammaOptimum optimize_gamma(const ImagePlane& plane, const SplitModel& model, const GammaGrid& grid,
                                   const EmeParams& eme, UpperMapForm form = UpperMapForm::AsPrinted) {
    GammaOptimum best;
    bool have = false;
    for (double g : grid.values()) {
        ToneCurve curve = build_curve(model, g, form);
        ImagePlane out = apply_curve(plane, curve);
        const double score = compute_eme(out, eme).value;
        best.sweep.push_back({g, score});
        if (!have || score > best.eme) {
            best.gamma = g;
            best.eme = score;
            best.curve = std::move(curve);
            best.enhanced = std::move(out);
            have = true;
        }
    }
    return best;
}

/// Threshold, split, weights and dark anchor for one plane. Throws
/// NoValidThreshold or EmptySegment for degenerate planes.
inline SplitModel fit_split(const ImagePlane& plane, const EntropyParams& params) {
    const Histogram h = compute_histogram(plane);
    const ThresholdResult thr = find_threshold(h, params);
    const auto [lo, hi] = split_pdf(h, thr.t);
    SplitModel model;
    model.t = thr.t;
    model.lower = segment_cdf(lo);
    model.upper = segment_cdf(hi);
    model.weights = segment_weights(lo, hi, thr.t);
    model.x0 = h.first_occupied();
    return model;
}

struct PlaneResult {
    ImagePlane plane;
    ChannelReport report;
};

/// Full single-channel enhancement. Degenerate planes come back unchanged with
/// report.fallback set.
inline PlaneResult enhance_plane(const ImagePlane& plane, const EnhanceConfig& cfg,
                                 const std::string& channel = "V") {
    cfg.validate();
    PlaneResult result;
    result.report.channel = channel;
    result.report.eme_before = compute_eme(plane, cfg.eme).value;

    SplitModel model;
    try {
        model = fit_split(plane, cfg.entropy);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoValidThreshold && e.code() != ErrorCode::EmptySegment) throw;
        result.plane = plane;
        result.report.fallback = true;
        result.report.fallback_reason = to_string(e.code());
        result.report.eme_after = result.report.eme_before;
        result.report.x0 = compute_histogram(plane).first_occupied();
        return result;
    }

    GammaOptimum opt = optimize_gamma(plane, model, cfg.gamma_grid, cfg.eme, cfg.upper_map_form);
    result.plane = std::move(opt.enhanced);
    auto& r = result.report;
    r.threshold = model.t;
    r.omega_l = model.weights.omega_l;
    r.omega_u = model.weights.omega_u;
    r.x0 = model.x0;
    r.gamma = opt.gamma;
    r.eme_after = opt.eme;
    r.sweep = std::move(opt.sweep);
    r.curve = std::move(opt.curve);
    return result;
}

struct HsvResult {
    HsvImage image;
    EnhanceReport report;
};

/// Enhance V (and S under ChannelPolicy::SV) of an HSV image. Hue values are
/// copied through untouched.
inline HsvResult enhance_hsv(const HsvImage& img, const EnhanceConfig& cfg) {
    cfg.validate();
    HsvResult result{img, {}};
    auto run = [&](HsvChannel ch, const char* name) {
        const ImagePlane q = quantize_channel(extract_channel(img, ch));
        PlaneResult pr = enhance_plane(q, cfg, name);
        if (!pr.report.fallback) {
            replace_channel(result.image, ch, dequantize_channel(pr.plane));
        }
        result.report.channels.push_back(std::move(pr.report));
    };
    run(HsvChannel::V, "V");
    if (cfg.channels == ChannelPolicy::SV) {
        run(HsvChannel::S, "S");
    }
    return result;
}

inline std::pair<RgbImage, EnhanceReport> enhance_image(const RgbImage& img, const EnhanceConfig& cfg = {}) {
    const auto start = std::chrono::steady_clock::now();
    HsvResult hsv = enhance_hsv(rgb_to_hsv(img), cfg);
    const bool untouched = std::all_of(hsv.report.channels.begin(), hsv.report.channels.end(),
                                       [](const ChannelReport& c) { return c.fallback; });
    RgbImage out = untouched ? img : hsv_to_rgb(hsv.image);
    hsv.report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return {std::move(out), std::move(hsv.report)};
}

}  // namespace wheq

#endif  // WHEQ_PIPELINE_HPP
