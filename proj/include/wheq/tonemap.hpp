#ifndef WHEQ_TONEMAP_HPP
#define WHEQ_TONEMAP_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "wheq/histogram.hpp"
#include "wheq/image.hpp"

namespace wheq {

/// Occupied-bin fractions of the two segments. k_l / k_u count empty bins.
struct SegmentWeights {
    double omega_l = 1.0;
    double omega_u = 1.0;
    int k_l = 0;
    int k_u = 0;
};

/// omega_l = 1 - k_l / t and omega_u = 1 - k_u / (L - 1 - t), clamped to [0, 1].
/// At t = 0 the lower range is empty, so omega_l is 1 when its single bin is
/// occupied and 0 otherwise.
inline SegmentWeights segment_weights(const SegmentPdf& lower, const SegmentPdf& upper, int t,
                                      int levels = kLevels) {
    if (t < 0 || t > levels - 2) {
        throw Error(ErrorCode::ThresholdOutOfRange, "threshold " + std::to_string(t));
    }
    if (lower.lo != 0 || lower.hi != t || upper.lo != t + 1 || upper.hi != levels - 1) {
        throw Error(ErrorCode::DomainGap, "segments do not match threshold split");
    }
    SegmentWeights w;
    w.k_l = static_cast<int>(std::count(lower.counts.begin(), lower.counts.end(), std::uint64_t{0}));
    w.k_u = static_cast<int>(std::count(upper.counts.begin(), upper.counts.end(), std::uint64_t{0}));
    if (t == 0) {
        w.omega_l = w.k_l == 0 ? 1.0 : 0.0;
    } else {
        w.omega_l = std::clamp(1.0 - static_cast<double>(w.k_l) / t, 0.0, 1.0);
    }
    w.omega_u = std::clamp(1.0 - static_cast<double>(w.k_u) / (levels - 1 - t), 0.0, 1.0);
    return w;
}

/// Output levels for a contiguous input range [lo, hi].
struct PartialLut {
    int lo = 0;
    int hi = 0;
    std::vector<int> values;
};

/// Form of the bright-segment map.
///  AsPrinted: (t+1) + (1 - w^g) + (L-1-t) c(x) w^g, clamped to [t+1, L-1]
///  Symmetric: (t+1)(1 - w^g) + ((t+1) + (L-2-t) c(x)) w^g
enum class UpperMapForm { AsPrinted, Symmetric };

inline PartialLut build_lower_map(const SegmentCdf& cdf, double omega, double gamma, int x0, int t) {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "gamma must be in (0, 1]");
    }
    if (cdf.lo != 0 || cdf.hi != t || x0 < 0 || x0 > t) {
        throw Error(ErrorCode::DomainGap, "lower map needs a CDF over [0, t] and x0 <= t");
    }
    const double wg = std::pow(omega, gamma);
    PartialLut lut{0, t, {}};
    lut.values.reserve(static_cast<std::size_t>(t) + 1);
    for (int x = 0; x <= t; ++x) {
        const double v = x0 * (1.0 - wg) + (t - x0) * cdf.at(x) * wg;
        lut.values.push_back(clamp_level(round_half_away(v), 0, t));
    }
    return lut;
}

inline PartialLut build_upper_map(const SegmentCdf& cdf, double omega, double gamma, int t,
                                  int levels = kLevels, UpperMapForm form = UpperMapForm::AsPrinted) {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "gamma must be in (0, 1]");
    }
    if (cdf.lo != t + 1 || cdf.hi != levels - 1) {
        throw Error(ErrorCode::DomainGap, "upper map needs a CDF over [t + 1, L - 1]");
    }
    const double wg = std::pow(omega, gamma);
    const int top = levels - 1;
    PartialLut lut{t + 1, top, {}};
    lut.values.reserve(static_cast<std::size_t>(top - t));
    for (int x = t + 1; x <= top; ++x) {
        double v;
        if (form == UpperMapForm::AsPrinted) {
            v = (t + 1) + (1.0 - wg) + (top - t) * cdf.at(x) * wg;
        } else {
            v = (t + 1) * (1.0 - wg) + ((t + 1) + (top - t - 1) * cdf.at(x)) * wg;
        }
        lut.values.push_back(clamp_level(round_half_away(v), t + 1, top));
    }
    return lut;
}

struct ToneCurve {
    std::vector<std::uint8_t> lut;  // one output level per input level
    double gamma = 1.0;
    int threshold = -1;             // -1 when no split was used (identity fallback)

    int levels() const noexcept { return static_cast<int>(lut.size()); }
    std::uint8_t operator()(std::uint8_t x) const { return lut[x]; }
};

inline ToneCurve identity_curve(int levels = kLevels) {
    ToneCurve c;
    c.lut.resize(static_cast<std::size_t>(levels));
    for (int x = 0; x < levels; ++x) c.lut[x] = static_cast<std::uint8_t>(x);
    return c;
}

/// Join two segment maps into a full curve, then force it non-decreasing.
inline ToneCurve concat_maps(const PartialLut& lower, const PartialLut& upper, double gamma, int t,
                             int levels = kLevels) {
    const bool covered = lower.lo == 0 && lower.hi == t && upper.lo == t + 1 && upper.hi == levels - 1 &&
                         lower.values.size() == static_cast<std::size_t>(t + 1) &&
                         upper.values.size() == static_cast<std::size_t>(levels - 1 - t);
    if (!covered) {
        throw Error(ErrorCode::DomainGap, "segment maps do not cover [0, L - 1] exactly");
    }
    ToneCurve curve;
    curve.gamma = gamma;
    curve.threshold = t;
    curve.lut.reserve(static_cast<std::size_t>(levels));
    int prev = 0;
    auto push = [&](int v) {
        v = std::max(clamp_level(v, 0, levels - 1), prev);
        curve.lut.push_back(static_cast<std::uint8_t>(v));
        prev = v;
    };
    for (int v : lower.values) push(v);
    for (int v : upper.values) push(v);
    return curve;
}

inline ImagePlane apply_curve(const ImagePlane& plane, const ToneCurve& curve) {
    if (curve.levels() < kLevels) {
        for (std::uint8_t x : plane) {
            if (x >= curve.levels()) {
                throw Error(ErrorCode::InvalidArgument, "plane level exceeds curve domain");
            }
        }
    }
    ImagePlane out(plane.width(), plane.height());
    std::transform(plane.begin(), plane.end(), out.begin(),
                   [&curve](std::uint8_t x) { return curve.lut[x]; });
    return out;
}

/// `input,output` header followed by one row per level, LF line endings.
inline void write_curve_csv(std::ostream& os, const ToneCurve& curve) {
    os << "input,output\n";
    for (int x = 0; x < curve.levels(); ++x) {
        os << x << ',' << static_cast<int>(curve.lut[x]) << '\n';
    }
}

}  // namespace wheq

#endif  // WHEQ_TONEMAP_HPP
