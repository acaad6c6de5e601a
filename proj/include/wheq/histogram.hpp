#ifndef WHEQ_HISTOGRAM_HPP
#define WHEQ_HISTOGRAM_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wheq/image.hpp"

namespace wheq {

struct Histogram {
    std::vector<std::uint64_t> counts;  // one bin per level
    std::uint64_t total = 0;            // N

    int levels() const noexcept { return static_cast<int>(counts.size()); }

    static Histogram from_counts(std::vector<std::uint64_t> counts) {
        if (counts.size() < 2) {
            throw Error(ErrorCode::InvalidArgument, "histogram needs at least two levels");
        }
        const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
        return {std::move(counts), total};
    }

    int occupied_levels() const noexcept {
        int n = 0;
        for (auto c : counts) n += c > 0 ? 1 : 0;
        return n;
    }

    /// Smallest level with a non-zero count, or -1 when empty.
    int first_occupied() const noexcept {
        for (int x = 0; x < levels(); ++x) {
            if (counts[x] > 0) return x;
        }
        return -1;
    }
};

inline Histogram compute_histogram(const ImagePlane& plane, int levels = kLevels) {
    if (levels < 2 || levels > kLevels) {
        throw Error(ErrorCode::InvalidArgument, "level count must be in [2, 256]");
    }
    Histogram h;
    h.counts.assign(static_cast<std::size_t>(levels), 0);
    for (std::uint8_t x : plane) {
        if (x >= levels) {
            throw Error(ErrorCode::InvalidArgument, "plane level exceeds level count");
        }
        ++h.counts[x];
    }
    h.total = plane.size();
    return h;
}

/// Probability mass of one threshold segment [lo, hi], normalized by the
/// whole-image pixel count N (not by the segment's own count). The integer
/// counts are kept so the segment CDF can be formed without rounding drift.
struct SegmentPdf {
    int lo = 0;
    int hi = 0;
    std::vector<double> mass;           // mass[x - lo] = counts[x] / N
    double segment_mass = 0.0;          // sum of mass
    std::vector<std::uint64_t> counts;  // counts[x - lo]
    std::uint64_t segment_count = 0;
    std::uint64_t total = 0;            // N

    int size() const noexcept { return hi - lo + 1; }
    double at(int level) const { return mass.at(static_cast<std::size_t>(level - lo)); }
};

namespace detail {

inline SegmentPdf make_segment(const Histogram& h, int lo, int hi) {
    SegmentPdf seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.total = h.total;
    seg.counts.assign(h.counts.begin() + lo, h.counts.begin() + hi + 1);
    seg.segment_count = std::accumulate(seg.counts.begin(), seg.counts.end(), std::uint64_t{0});
    const double n = static_cast<double>(h.total);
    seg.mass.reserve(seg.counts.size());
    for (auto c : seg.counts) {
        seg.mass.push_back(h.total > 0 ? static_cast<double>(c) / n : 0.0);
    }
    seg.segment_mass = h.total > 0 ? static_cast<double>(seg.segment_count) / n : 0.0;
    return seg;
}

}  // namespace detail

/// Split at t: lower covers [0, t], upper covers [t + 1, L - 1].
inline std::pair<SegmentPdf, SegmentPdf> split_pdf(const Histogram& h, int t) {
    const int levels = h.levels();
    if (t < 0 || t > levels - 2) {
        throw Error(ErrorCode::ThresholdOutOfRange,
                    "threshold " + std::to_string(t) + " outside [0, " + std::to_string(levels - 2) + "]");
    }
    return {detail::make_segment(h, 0, t), detail::make_segment(h, t + 1, levels - 1)};
}

struct SegmentCdf {
    int lo = 0;
    int hi = 0;
    std::vector<double> cum;  // cum[x - lo], non-decreasing, last entry exactly 1

    int size() const noexcept { return hi - lo + 1; }
    double at(int level) const { return cum.at(static_cast<std::size_t>(level - lo)); }
};

/// Segment-normalized cumulative mass. Each entry is one division of an exact
/// integer prefix count by the segment count, so cum[hi] is exactly 1.
inline SegmentCdf segment_cdf(const SegmentPdf& pdf) {
    if (pdf.segment_count == 0) {
        throw Error(ErrorCode::EmptySegment,
                    "segment [" + std::to_string(pdf.lo) + ", " + std::to_string(pdf.hi) + "] has no mass");
    }
    SegmentCdf cdf;
    cdf.lo = pdf.lo;
    cdf.hi = pdf.hi;
    cdf.cum.reserve(pdf.counts.size());
    const double denom = static_cast<double>(pdf.segment_count);
    std::uint64_t prefix = 0;
    for (auto c : pdf.counts) {
        prefix += c;
        cdf.cum.push_back(static_cast<double>(prefix) / denom);
    }
    cdf.cum.back() = 1.0;
    return cdf;
}

}  // namespace wheq

#endif  // WHEQ_HISTOGRAM_HPP
