#ifndef WHEQ_EME_HPP
#define WHEQ_EME_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

#include "wheq/image.hpp"

namespace wheq {

struct EmeParams {
    int block_w = 8;  // m
    int block_h = 8;  // n
    double a = 1.0;
    double b = 1.0;

    void validate() const {
        if (block_w < 1 || block_h < 1) {
            throw Error(ErrorCode::InvalidArgument, "EME block dimensions must be >= 1");
        }
        if (!(a > 0.0) || !(b >= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "EME needs a > 0 and b >= 1");
        }
    }
};

struct EmeScore {
    double value = 0.0;
    std::size_t blocks_scored = 0;
};

/// (max - min + a) / (max + min + a)
inline double block_contrast(int min_level, int max_level, double a) {
    return (max_level - min_level + a) / (max_level + min_level + a);
}

inline double block_contrast(std::span<const std::uint8_t> block, double a) {
    if (block.empty()) {
        throw Error(ErrorCode::InvalidArgument, "empty EME block");
    }
    const auto [lo, hi] = std::minmax_element(block.begin(), block.end());
    return block_contrast(*lo, *hi, a);
}

/// Mean of f * ln(b + f) over a block_w x block_h tiling. Partial blocks at the
/// right and bottom edges are scored like full ones. Blocks are summed in
/// row-major order.
inline EmeScore compute_eme(const ImagePlane& plane, const EmeParams& params = {}) {
    params.validate();
    const int w = plane.width();
    const int h = plane.height();
    EmeScore score;
    double sum = 0.0;
    for (int by = 0; by < h; by += params.block_h) {
        const int y1 = std::min(by + params.block_h, h);
        for (int bx = 0; bx < w; bx += params.block_w) {
            const int x1 = std::min(bx + params.block_w, w);
            int lo = 255;
            int hi = 0;
            for (int y = by; y < y1; ++y) {
                const std::uint8_t* row = &plane(0, y);
                for (int x = bx; x < x1; ++x) {
                    lo = std::min<int>(lo, row[x]);
                    hi = std::max<int>(hi, row[x]);
                }
            }
            const double f = block_contrast(lo, hi, params.a);
            sum += f * std::log(params.b + f);
            ++score.blocks_scored;
        }
    }
    score.value = sum / static_cast<double>(score.blocks_scored);
    return score;
}

}  // namespace wheq

#endif  // WHEQ_EME_HPP
