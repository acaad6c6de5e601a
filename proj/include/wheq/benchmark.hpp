#ifndef WHEQ_BENCHMARK_HPP
#define WHEQ_BENCHMARK_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <functional>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "wheq/baselines.hpp"
#include "wheq/eme.hpp"
#include "wheq/image.hpp"
#include "wheq/image_io.hpp"
#include "wheq/pipeline.hpp"

namespace wheq {

enum class Method { Original, He, Clahe, Proposed };

inline constexpr std::array<Method, 4> kAllMethods = {Method::Original, Method::He, Method::Clahe,
                                                      Method::Proposed};

inline const char* to_string(Method m) {
    switch (m) {
        case Method::Original: return "original";
        case Method::He: return "he";
        case Method::Clahe: return "clahe";
        case Method::Proposed: return "proposed";
    }
    return "original";
}

struct BenchmarkRow {
    std::string image;
    DistortionLevel level = DistortionLevel::None;
    Method method = Method::Original;
    double eme = 0.0;
    std::optional<double> gamma;
    std::optional<int> threshold;
    double time_ms = 0.0;
};

/// Rows order by image name, then distortion severity, then method.
inline bool row_less(const BenchmarkRow& a, const BenchmarkRow& b) {
    return std::tuple(a.image, static_cast<int>(a.level), static_cast<int>(a.method)) <
           std::tuple(b.image, static_cast<int>(b.level), static_cast<int>(b.method));
}

struct BenchmarkConfig {
    EnhanceConfig enhance;
    ClaheParams clahe;
    std::vector<DistortionLevel> levels{kAllDistortionLevels.begin(), kAllDistortionLevels.end()};
};

/// Run a plane operator on the V channel of a color image and return the
/// recomposed RGB result.
inline RgbImage map_value_channel(const RgbImage& img, const std::function<ImagePlane(const ImagePlane&)>& op) {
    HsvImage hsv = rgb_to_hsv(img);
    const ImagePlane v = quantize_channel(extract_channel(hsv, HsvChannel::V));
    replace_channel(hsv, HsvChannel::V, dequantize_channel(op(v)));
    return hsv_to_rgb(hsv);
}

/// Every (level, method) row for one pristine image. EME is always scored on
/// the V plane of the RGB output so every method is measured the same way.
inline std::vector<BenchmarkRow> benchmark_image(const std::string& name, const RgbImage& pristine,
                                                 const BenchmarkConfig& cfg) {
    using Clock = std::chrono::steady_clock;
    auto elapsed_ms = [](Clock::time_point start) {
        return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    };
    std::vector<BenchmarkRow> rows;
    for (DistortionLevel level : cfg.levels) {
        const RgbImage input = contrast_distort(pristine, level);
        for (Method method : kAllMethods) {
            BenchmarkRow row;
            row.image = name;
            row.level = level;
            row.method = method;
            const auto start = Clock::now();
            RgbImage output;
            switch (method) {
                case Method::Original:
                    output = input;
                    break;
                case Method::He:
                    output = map_value_channel(input, [](const ImagePlane& p) { return global_he(p); });
                    break;
                case Method::Clahe: {
                    ClaheParams cp = cfg.clahe;
                    cp.tiles_x = std::min(cp.tiles_x, input.width());
                    cp.tiles_y = std::min(cp.tiles_y, input.height());
                    output = map_value_channel(input, [&cp](const ImagePlane& p) { return clahe_lite(p, cp); });
                    break;
                }
                case Method::Proposed: {
                    auto [img, report] = enhance_image(input, cfg.enhance);
                    output = std::move(img);
                    if (const auto* v = report.find("V")) {
                        row.gamma = v->gamma;
                        row.threshold = v->threshold;
                    }
                    break;
                }
            }
            row.time_ms = elapsed_ms(start);
            row.eme = compute_eme(value_plane(output), cfg.enhance.eme).value;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

/// Letters, digits, '.', '-' and '_' survive; everything else becomes '_'.
inline std::string sanitize_name(const std::string& name) {
    std::string out = name;
    for (char& c : out) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                        c == '-' || c == '_';
        if (!ok) c = '_';
    }
    return out;
}

struct CorpusResult {
    std::vector<BenchmarkRow> rows;
    std::vector<std::string> failures;  // "<path>: <reason>"
    int images_ok = 0;
};

/// Benchmark every decodable image file directly inside `dir`. Images are
/// processed concurrently; rows come back sorted.
inline CorpusResult benchmark_corpus(const std::filesystem::path& dir, const BenchmarkConfig& cfg) {
    CorpusResult result;
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(ErrorCode::FileNotFound, dir.string() + " is not a directory");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    struct Outcome {
        std::vector<BenchmarkRow> rows;
        std::string error;
    };
    std::vector<std::future<Outcome>> jobs;
    jobs.reserve(files.size());
    for (const auto& path : files) {
        jobs.push_back(std::async(std::launch::async, [path, &cfg]() {
            Outcome o;
            try {
                const RgbImage img = load_image(path);
                o.rows = benchmark_image(sanitize_name(path.filename().string()), img, cfg);
            } catch (const std::exception& e) {
                o.error = path.string() + ": " + e.what();
            }
            return o;
        }));
    }
    for (auto& job : jobs) {
        Outcome o = job.get();
        if (!o.error.empty()) {
            result.failures.push_back(std::move(o.error));
            continue;
        }
        ++result.images_ok;
        result.rows.insert(result.rows.end(), o.rows.begin(), o.rows.end());
    }
    std::stable_sort(result.rows.begin(), result.rows.end(), row_less);
    return result;
}

namespace detail {

/// Shortest round-trip decimal form.
inline std::string format_real(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

inline void write_benchmark_csv(std::ostream& os, const std::vector<BenchmarkRow>& rows) {
    os << "image,level,method,eme,gamma,threshold,time_ms\n";
    for (const auto& r : rows) {
        os << r.image << ',' << to_string(r.level) << ',' << to_string(r.method) << ','
           << detail::format_real(r.eme) << ',';
        if (r.gamma) os << detail::format_real(*r.gamma);
        os << ',';
        if (r.threshold) os << *r.threshold;
        os << ',' << detail::format_real(r.time_ms) << '\n';
    }
}

}  // namespace wheq

#endif  // WHEQ_BENCHMARK_HPP
