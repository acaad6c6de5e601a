#ifndef WHEQ_IMAGE_HPP
#define WHEQ_IMAGE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wheq {

/// Number of quantization levels per channel. All imagery is 8-bit.
inline constexpr int kLevels = 256;

enum class ErrorCode {
    FileNotFound,
    UnsupportedFormat,
    CorruptImage,
    IoError,
    InvalidArgument,
    ThresholdOutOfRange,
    EmptySegment,
    NoValidThreshold,
    DomainGap,
    TilesLargerThanImage,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::CorruptImage: return "CorruptImage";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ThresholdOutOfRange: return "ThresholdOutOfRange";
        case ErrorCode::EmptySegment: return "EmptySegment";
        case ErrorCode::NoValidThreshold: return "NoValidThreshold";
        case ErrorCode::DomainGap: return "DomainGap";
        case ErrorCode::TilesLargerThanImage: return "TilesLargerThanImage";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Round half away from zero. Used for every real-to-level conversion so that
/// lookup tables come out identical on every platform.
inline long round_half_away(double value) { return std::lround(value); }

inline int clamp_level(long value, int lo = 0, int hi = kLevels - 1) {
    return static_cast<int>(std::clamp<long>(value, lo, hi));
}

/// Dense row-major 2-D grid.
template <class T>
class Grid {
public:
    using value_type = T;

    Grid() = default;

    Grid(int width, int height, T fill = T{}) : width_(width), height_(height) {
        if (width < 1 || height < 1) {
            throw Error(ErrorCode::InvalidArgument, "grid dimensions must be at least 1x1");
        }
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    Grid(int width, int height, std::vector<T> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (width < 1 || height < 1) {
            throw Error(ErrorCode::InvalidArgument, "grid dimensions must be at least 1x1");
        }
        if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
            throw Error(ErrorCode::InvalidArgument, "grid data size does not match dimensions");
        }
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    T& operator()(int x, int y) { return data_[index(x, y)]; }
    const T& operator()(int x, int y) const { return data_[index(x, y)]; }

    std::vector<T>& data() noexcept { return data_; }
    const std::vector<T>& data() const noexcept { return data_; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

/// One quantized channel; levels are in [0, kLevels - 1] by construction.
using ImagePlane = Grid<std::uint8_t>;

/// One channel of fractions in [0, 1].
using FractionPlane = Grid<double>;

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// h in degrees [0, 360), s and v in [0, 1].
struct Hsv {
    double h = 0.0;
    double s = 0.0;
    double v = 0.0;

    friend bool operator==(const Hsv&, const Hsv&) = default;
};

using RgbImage = Grid<Rgb>;
using HsvImage = Grid<Hsv>;

// ---------------------------------------------------------------------------
// Color conversion (hexcone model)
// ---------------------------------------------------------------------------

inline Hsv rgb_to_hsv(Rgb px) {
    const double r = px.r / 255.0;
    const double g = px.g / 255.0;
    const double b = px.b / 255.0;
    const double maxc = std::max({r, g, b});
    const double minc = std::min({r, g, b});
    const double delta = maxc - minc;

    Hsv out;
    out.v = maxc;
    out.s = maxc > 0.0 ? delta / maxc : 0.0;
    if (delta <= 0.0) {
        out.h = 0.0;
        return out;
    }
    double h;
    if (maxc == r) {
        h = (g - b) / delta;
    } else if (maxc == g) {
        h = 2.0 + (b - r) / delta;
    } else {
        h = 4.0 + (r - g) / delta;
    }
    h *= 60.0;
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
    out.h = h;
    return out;
}

inline Rgb hsv_to_rgb(Hsv px) {
    const double s = std::clamp(px.s, 0.0, 1.0);
    const double v = std::clamp(px.v, 0.0, 1.0);
    double r = v, g = v, b = v;
    if (s > 0.0) {
        double h = std::fmod(px.h, 360.0);
        if (h < 0.0) h += 360.0;
        h /= 60.0;
        const int sector = std::min(static_cast<int>(h), 5);
        const double frac = h - sector;
        const double p = v * (1.0 - s);
        const double q = v * (1.0 - s * frac);
        const double t = v * (1.0 - s * (1.0 - frac));
        switch (sector) {
            case 0: r = v; g = t; b = p; break;
            case 1: r = q; g = v; b = p; break;
            case 2: r = p; g = v; b = t; break;
            case 3: r = p; g = q; b = v; break;
            case 4: r = t; g = p; b = v; break;
            default: r = v; g = p; b = q; break;
        }
    }
    auto to8 = [](double c) {
        return static_cast<std::uint8_t>(clamp_level(round_half_away(c * 255.0)));
    };
    return {to8(r), to8(g), to8(b)};
}

inline HsvImage rgb_to_hsv(const RgbImage& img) {
    HsvImage out(img.width(), img.height());
    std::transform(img.begin(), img.end(), out.begin(),
                   [](Rgb px) { return rgb_to_hsv(px); });
    return out;
}

inline RgbImage hsv_to_rgb(const HsvImage& img) {
    RgbImage out(img.width(), img.height());
    std::transform(img.begin(), img.end(), out.begin(),
                   [](const Hsv& px) { return hsv_to_rgb(px); });
    return out;
}

// ---------------------------------------------------------------------------
// Quantization
// ---------------------------------------------------------------------------

/// x = round(value * (levels - 1)), clamped to [0, levels - 1].
inline std::uint8_t quantize_value(double value, int levels = kLevels) {
    return static_cast<std::uint8_t>(
        clamp_level(round_half_away(value * (levels - 1)), 0, levels - 1));
}

inline double dequantize_value(std::uint8_t level, int levels = kLevels) {
    return static_cast<double>(level) / (levels - 1);
}

inline ImagePlane quantize_channel(const FractionPlane& plane, int levels = kLevels) {
    if (levels < 2 || levels > kLevels) {
        throw Error(ErrorCode::InvalidArgument, "level count must be in [2, 256]");
    }
    ImagePlane out(plane.width(), plane.height());
    std::transform(plane.begin(), plane.end(), out.begin(),
                   [levels](double v) { return quantize_value(v, levels); });
    return out;
}

inline FractionPlane dequantize_channel(const ImagePlane& plane, int levels = kLevels) {
    if (levels < 2 || levels > kLevels) {
        throw Error(ErrorCode::InvalidArgument, "level count must be in [2, 256]");
    }
    FractionPlane out(plane.width(), plane.height());
    std::transform(plane.begin(), plane.end(), out.begin(),
                   [levels](std::uint8_t x) { return dequantize_value(x, levels); });
    return out;
}

enum class HsvChannel { H, S, V };

/// Extract S or V as fractions. H is not a fraction and is never extracted.
inline FractionPlane extract_channel(const HsvImage& img, HsvChannel channel) {
    if (channel == HsvChannel::H) {
        throw Error(ErrorCode::InvalidArgument, "hue is not a fraction channel");
    }
    FractionPlane out(img.width(), img.height());
    std::transform(img.begin(), img.end(), out.begin(), [channel](const Hsv& px) {
        return channel == HsvChannel::S ? px.s : px.v;
    });
    return out;
}

inline void replace_channel(HsvImage& img, HsvChannel channel, const FractionPlane& plane) {
    if (channel == HsvChannel::H) {
        throw Error(ErrorCode::InvalidArgument, "hue is not a fraction channel");
    }
    if (plane.width() != img.width() || plane.height() != img.height()) {
        throw Error(ErrorCode::InvalidArgument, "channel dimensions do not match image");
    }
    auto src = plane.begin();
    for (Hsv& px : img) {
        (channel == HsvChannel::S ? px.s : px.v) = *src++;
    }
}

/// Luminance plane used for scoring: the quantized V channel, i.e. max(r, g, b).
inline ImagePlane value_plane(const RgbImage& img) {
    ImagePlane out(img.width(), img.height());
    std::transform(img.begin(), img.end(), out.begin(),
                   [](Rgb px) { return std::max({px.r, px.g, px.b}); });
    return out;
}

}  // namespace wheq

#endif  // WHEQ_IMAGE_HPP
