#ifndef WHEQ_BASELINES_HPP
#define WHEQ_BASELINES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "wheq/histogram.hpp"
#include "wheq/image.hpp"

namespace wheq {

enum class DistortionLevel { None, Light, Moderate, Heavy };

inline constexpr std::array<DistortionLevel, 4> kAllDistortionLevels = {
    DistortionLevel::None, DistortionLevel::Light, DistortionLevel::Moderate, DistortionLevel::Heavy};

inline const char* to_string(DistortionLevel level) {
    switch (level) {
        case DistortionLevel::None: return "none";
        case DistortionLevel::Light: return "light";
        case DistortionLevel::Moderate: return "moderate";
        case DistortionLevel::Heavy: return "heavy";
    }
    return "none";
}

/// Contrast factor applied around the plane mean.
inline double distortion_scale(DistortionLevel level) {
    switch (level) {
        case DistortionLevel::None: return 1.0;
        case DistortionLevel::Light: return 0.7;
        case DistortionLevel::Moderate: return 0.4;
        case DistortionLevel::Heavy: return 0.2;
    }
    return 1.0;
}

inline DistortionLevel parse_distortion_level(std::string_view name) {
    for (auto level : kAllDistortionLevels) {
        if (name == to_string(level)) return level;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown distortion level '" + std::string(name) + "'");
}

namespace detail {

/// round((L - 1) * cdf(x)) for every level, cdf from integer counts.
inline std::vector<std::uint8_t> equalization_map(const std::vector<std::uint64_t>& counts) {
    const int levels = static_cast<int>(counts.size());
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    std::vector<std::uint8_t> map(counts.size(), 0);
    if (total == 0) return map;
    std::uint64_t prefix = 0;
    for (int x = 0; x < levels; ++x) {
        prefix += counts[x];
        const double c = static_cast<double>(prefix) / static_cast<double>(total);
        map[x] = static_cast<std::uint8_t>(clamp_level(round_half_away((levels - 1) * c), 0, levels - 1));
    }
    return map;
}

}  // namespace detail

/// Classic global histogram equalization.
inline ImagePlane global_he(const ImagePlane& plane, int levels = kLevels) {
    const Histogram h = compute_histogram(plane, levels);
    const auto map = detail::equalization_map(h.counts);
    ImagePlane out(plane.width(), plane.height());
    std::transform(plane.begin(), plane.end(), out.begin(), [&map](std::uint8_t x) { return map[x]; });
    return out;
}

struct ClaheParams {
    int tiles_x = 8;
    int tiles_y = 8;
    double clip = 0.01;  // fraction of tile pixels per bin; infinity disables clipping
};

namespace detail {

/// Clip every bin at `limit` and spread the excess evenly. The remainder goes
/// one count at a time to bins spaced evenly across the range.
inline void clip_histogram(std::vector<std::uint64_t>& counts, std::uint64_t limit) {
    std::uint64_t excess = 0;
    for (auto& c : counts) {
        if (c > limit) {
            excess += c - limit;
            c = limit;
        }
    }
    if (excess == 0) return;
    const std::uint64_t n = counts.size();
    const std::uint64_t each = excess / n;
    const std::uint64_t rem = excess % n;
    for (auto& c : counts) c += each;
    if (rem > 0) {
        const std::uint64_t step = n / rem;
        for (std::uint64_t i = 0; i < rem; ++i) ++counts[i * step];
    }
}

inline std::vector<int> tile_edges(int extent, int tiles) {
    std::vector<int> edges(static_cast<std::size_t>(tiles) + 1);
    for (int i = 0; i <= tiles; ++i) {
        edges[i] = static_cast<int>(static_cast<long long>(i) * extent / tiles);
    }
    return edges;
}

/// Interpolation position for coordinate p: left tile index and weight of the
/// right tile, with tile centers as the interpolation nodes.
struct AxisWeight {
    int i0 = 0;
    int i1 = 0;
    double w1 = 0.0;
};

inline std::vector<AxisWeight> axis_weights(int extent, const std::vector<int>& edges) {
    const int tiles = static_cast<int>(edges.size()) - 1;
    std::vector<double> centers(static_cast<std::size_t>(tiles));
    for (int i = 0; i < tiles; ++i) centers[i] = (edges[i] + edges[i + 1] - 1) / 2.0;
    std::vector<AxisWeight> out(static_cast<std::size_t>(extent));
    for (int p = 0; p < extent; ++p) {
        AxisWeight aw;
        if (p <= centers.front()) {
            aw = {0, 0, 0.0};
        } else if (p >= centers.back()) {
            aw = {tiles - 1, tiles - 1, 0.0};
        } else {
            int i = 0;
            while (i + 1 < tiles && centers[i + 1] <= p) ++i;
            const double span = centers[i + 1] - centers[i];
            aw = {i, i + 1, (p - centers[i]) / span};
        }
        out[p] = aw;
    }
    return out;
}

}  // namespace detail

/// Contrast-limited adaptive histogram equalization with bilinear blending
/// between neighbouring tile mappings.
inline ImagePlane clahe_lite(const ImagePlane& plane, const ClaheParams& params = {}) {
    if (params.tiles_x < 1 || params.tiles_y < 1) {
        throw Error(ErrorCode::InvalidArgument, "CLAHE tile counts must be >= 1");
    }
    if (!(params.clip > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "CLAHE clip must be positive");
    }
    const int w = plane.width();
    const int h = plane.height();
    if (params.tiles_x > w || params.tiles_y > h) {
        throw Error(ErrorCode::TilesLargerThanImage, "tile grid exceeds image dimensions");
    }
    const auto xe = detail::tile_edges(w, params.tiles_x);
    const auto ye = detail::tile_edges(h, params.tiles_y);

    std::vector<std::vector<std::uint8_t>> maps(static_cast<std::size_t>(params.tiles_x * params.tiles_y));
    for (int ty = 0; ty < params.tiles_y; ++ty) {
        for (int tx = 0; tx < params.tiles_x; ++tx) {
            std::vector<std::uint64_t> counts(kLevels, 0);
            for (int y = ye[ty]; y < ye[ty + 1]; ++y) {
                for (int x = xe[tx]; x < xe[tx + 1]; ++x) ++counts[plane(x, y)];
            }
            const double pixels = static_cast<double>(xe[tx + 1] - xe[tx]) * (ye[ty + 1] - ye[ty]);
            if (std::isfinite(params.clip)) {
                const double limit = std::max(1.0, std::floor(params.clip * pixels));
                detail::clip_histogram(counts, static_cast<std::uint64_t>(limit));
            }
            maps[static_cast<std::size_t>(ty * params.tiles_x + tx)] = detail::equalization_map(counts);
        }
    }

    const auto wx = detail::axis_weights(w, xe);
    const auto wy = detail::axis_weights(h, ye);
    auto map_at = [&](int tx, int ty, std::uint8_t v) {
        return static_cast<double>(maps[static_cast<std::size_t>(ty * params.tiles_x + tx)][v]);
    };
    ImagePlane out(w, h);
    for (int y = 0; y < h; ++y) {
        const auto& ay = wy[y];
        for (int x = 0; x < w; ++x) {
            const auto& ax = wx[x];
            const std::uint8_t v = plane(x, y);
            const double top = (1.0 - ax.w1) * map_at(ax.i0, ay.i0, v) + ax.w1 * map_at(ax.i1, ay.i0, v);
            const double bottom = (1.0 - ax.w1) * map_at(ax.i0, ay.i1, v) + ax.w1 * map_at(ax.i1, ay.i1, v);
            const double blended = (1.0 - ay.w1) * top + ay.w1 * bottom;
            out(x, y) = static_cast<std::uint8_t>(clamp_level(round_half_away(blended)));
        }
    }
    return out;
}

/// Contract levels toward the plane mean: clamp(round(mu + s (x - mu))).
inline ImagePlane contrast_distort(const ImagePlane& plane, double scale) {
    if (!(scale > 0.0 && scale <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "distortion scale must be in (0, 1]");
    }
    double sum = 0.0;
    for (std::uint8_t x : plane) sum += x;
    const double mu = sum / static_cast<double>(plane.size());
    ImagePlane out(plane.width(), plane.height());
    std::transform(plane.begin(), plane.end(), out.begin(), [mu, scale](std::uint8_t x) {
        return static_cast<std::uint8_t>(clamp_level(round_half_away(mu + scale * (x - mu))));
    });
    return out;
}

inline ImagePlane contrast_distort(const ImagePlane& plane, DistortionLevel level) {
    if (level == DistortionLevel::None) return plane;
    return contrast_distort(plane, distortion_scale(level));
}

/// Per-channel contrast decrement of a color image; each channel contracts
/// around its own mean.
inline RgbImage contrast_distort(const RgbImage& img, DistortionLevel level) {
    if (level == DistortionLevel::None) return img;
    ImagePlane r(img.width(), img.height()), g(img.width(), img.height()), b(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        r.data()[i] = img.data()[i].r;
        g.data()[i] = img.data()[i].g;
        b.data()[i] = img.data()[i].b;
    }
    r = contrast_distort(r, level);
    g = contrast_distort(g, level);
    b = contrast_distort(b, level);
    RgbImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out.data()[i] = {r.data()[i], g.data()[i], b.data()[i]};
    }
    return out;
}

}  // namespace wheq

#endif  // WHEQ_BASELINES_HPP
