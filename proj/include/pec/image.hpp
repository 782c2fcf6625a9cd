#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pec/plane.hpp"

namespace pec {

// 8-bit image as it travels through codecs. Row-major, channel-interleaved.
struct RawImage {
    int height = 0;
    int width = 0;
    int channels = 0;  // 1 or 3
    std::vector<std::uint8_t> samples;
};

enum class ImageFormat { Png, Jpeg, Pnm };

// Decode 8-bit PNG, JPEG, or binary PPM/PGM. Grayscale stays 1-channel,
// color becomes 3-channel RGB. Bit depths above 8 are rejected.
RawImage decode(const std::vector<std::uint8_t>& bytes, ImageFormat format);

// Sniffs the format from magic bytes, then decodes.
RawImage decode_auto(const std::vector<std::uint8_t>& bytes);
RawImage decode_file(const std::string& path);

std::vector<std::uint8_t> encode_png(const RawImage& img);
std::vector<std::uint8_t> encode_pnm(const RawImage& img);  // P6 (3ch) or P5 (1ch)

// Writes PNG when the path ends in .png, PNM otherwise.
void write_image_file(const std::string& path, const RawImage& img);

// v -> v/255.
PixelPlane to_plane(const RawImage& img);

// v -> clamp(round(v*255), 0, 255). Clamps so callers can encode planes that
// were produced outside the core (which itself never leaves [0,1]).
RawImage from_plane(const PixelPlane& p);

// Per-pixel max(R,G,B); the lightness used by the LOE metric.
// 1-channel input is returned unchanged.
PixelPlane luminance_max(const PixelPlane& p);

// 0.299 R + 0.587 G + 0.114 B, used by entropy and SSIM.
PixelPlane luminance_gray(const PixelPlane& p);

struct Histogram256 {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;
};

// bin = clamp(floor(v*256), 0, 255) so 1.0 lands in bin 255.
Histogram256 histogram256(const PixelPlane& p, int channel);

}  // namespace pec
