#ifndef WHEQ_IMAGE_IO_HPP
#define WHEQ_IMAGE_IO_HPP

// PNG goes through libpng's simplified API; PPM (P6) and PGM (P5) are
// handled here. Link against PNG::PNG.

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "wheq/image.hpp"

namespace wheq {

namespace detail {

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw Error(ErrorCode::FileNotFound, path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline bool is_png(const std::vector<std::uint8_t>& bytes) {
    static constexpr std::uint8_t kSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    return bytes.size() >= 8 && std::equal(std::begin(kSig), std::end(kSig), bytes.begin());
}

inline RgbImage decode_png(const std::vector<std::uint8_t>& bytes, const std::string& name) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw Error(ErrorCode::CorruptImage, name + ": " + msg);
    }
    image.format = PNG_FORMAT_RGB;
    if (image.width < 1 || image.height < 1) {
        png_image_free(&image);
        throw Error(ErrorCode::CorruptImage, name + ": empty image");
    }
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw Error(ErrorCode::CorruptImage, name + ": " + msg);
    }
    RgbImage out(static_cast<int>(image.width), static_cast<int>(image.height));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.data()[i] = {buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]};
    }
    return out;
}

/// Netpbm header tokenizer: whitespace separated, '#' starts a comment.
class PnmHeader {
public:
    PnmHeader(const std::vector<std::uint8_t>& bytes, const std::string& name)
        : bytes_(bytes), name_(name) {}

    long next_number() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw Error(ErrorCode::CorruptImage, name_ + ": malformed header");
        }
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_++] - '0');
            if (value > (1L << 30)) {
                throw Error(ErrorCode::CorruptImage, name_ + ": header value too large");
            }
        }
        return value;
    }

    /// Consumes the single whitespace byte that ends the header.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw Error(ErrorCode::CorruptImage, name_ + ": malformed header");
        }
        return pos_ + 1;
    }

    void skip(std::size_t n) { pos_ += n; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<std::uint8_t>& bytes_;
    const std::string& name_;
    std::size_t pos_ = 0;
};

inline RgbImage decode_pnm(const std::vector<std::uint8_t>& bytes, const std::string& name) {
    const bool color = bytes[1] == '6';
    PnmHeader header(bytes, name);
    header.skip(2);
    const long width = header.next_number();
    const long height = header.next_number();
    const long maxval = header.next_number();
    if (width < 1 || height < 1) {
        throw Error(ErrorCode::CorruptImage, name + ": zero dimension");
    }
    if (maxval != 255) {
        throw Error(ErrorCode::UnsupportedFormat,
                    name + ": maxval " + std::to_string(maxval) + " (only 255 supported)");
    }
    const std::size_t offset = header.raster_offset();
    const std::size_t channels = color ? 3 : 1;
    const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * channels;
    if (bytes.size() < offset + need) {
        throw Error(ErrorCode::CorruptImage, name + ": truncated raster");
    }
    RgbImage out(static_cast<int>(width), static_cast<int>(height));
    const std::uint8_t* src = bytes.data() + offset;
    for (Rgb& px : out) {
        if (color) {
            px = {src[0], src[1], src[2]};
            src += 3;
        } else {
            px = {src[0], src[0], src[0]};
            src += 1;
        }
    }
    return out;
}

inline std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

inline bool is_gray(const RgbImage& img) {
    return std::all_of(img.begin(), img.end(),
                       [](Rgb px) { return px.r == px.g && px.g == px.b; });
}

inline std::vector<std::uint8_t> encode_pnm(const RgbImage& img, bool color) {
    const std::string header = std::string(color ? "P6" : "P5") + "\n" +
                               std::to_string(img.width()) + " " +
                               std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + img.size() * (color ? 3 : 1));
    for (Rgb px : img) {
        out.push_back(px.r);
        if (color) {
            out.push_back(px.g);
            out.push_back(px.b);
        }
    }
    return out;
}

inline std::vector<std::uint8_t> encode_png(const RgbImage& img) {
    std::vector<std::uint8_t> raster;
    raster.reserve(img.size() * 3);
    for (Rgb px : img) {
        raster.insert(raster.end(), {px.r, px.g, px.b});
    }
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_RGB;

    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, raster.data(), 0, nullptr)) {
        throw Error(ErrorCode::IoError, std::string("png encode: ") + image.message);
    }
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, raster.data(), 0, nullptr)) {
        throw Error(ErrorCode::IoError, std::string("png encode: ") + image.message);
    }
    out.resize(size);
    return out;
}

}  // namespace detail

/// Decode a PNG, PPM (P6) or PGM (P5) file. The format is sniffed from the
/// file contents, not the extension. Grayscale is replicated to RGB.
inline RgbImage decode_image(const std::vector<std::uint8_t>& bytes, const std::string& name = "<memory>") {
    if (detail::is_png(bytes)) {
        return detail::decode_png(bytes, name);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '6' || bytes[1] == '5')) {
        return detail::decode_pnm(bytes, name);
    }
    throw Error(ErrorCode::UnsupportedFormat, name + ": not PNG, P6 or P5");
}

inline RgbImage load_image(const std::filesystem::path& path) {
    return decode_image(detail::read_file_bytes(path), path.string());
}

/// Write by extension: .png, .ppm (P6), or .pgm (P5, grayscale images only).
inline void save_image(const std::filesystem::path& path, const RgbImage& img) {
    const std::string ext = detail::lower_extension(path);
    std::vector<std::uint8_t> bytes;
    if (ext == ".png") {
        bytes = detail::encode_png(img);
    } else if (ext == ".ppm") {
        bytes = detail::encode_pnm(img, true);
    } else if (ext == ".pgm") {
        if (!detail::is_gray(img)) {
            throw Error(ErrorCode::UnsupportedFormat, path.string() + ": PGM output needs a grayscale image");
        }
        bytes = detail::encode_pnm(img, false);
    } else {
        throw Error(ErrorCode::UnsupportedFormat, path.string() + ": unknown output extension");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
        throw Error(ErrorCode::IoError, "write failed for " + path.string());
    }
}

}  // namespace wheq

#endif  // WHEQ_IMAGE_IO_HPP
