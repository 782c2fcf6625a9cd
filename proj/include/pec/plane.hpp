#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pec {

// Thrown when a value violates a documented precondition or invariant
// (pixel out of [0,1], bad coefficient, shape mismatch, ...).
class InvariantError : public std::invalid_argument {
public:
    explicit InvariantError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Thrown on file and codec failures.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ExposureMode { Under, Over };

inline const char* to_string(ExposureMode m) {
    return m == ExposureMode::Under ? "under" : "over";
}

// Dense H x W x C buffer of unit-interval intensities, row-major,
// channel-interleaved. All core math runs on this representation in
// double precision; nothing here clamps.
struct PixelPlane {
    int height = 0;
    int width = 0;
    int channels = 0;  // 1 or 3
    std::vector<double> data;

    std::size_t size() const { return data.size(); }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
    }
    double& at(int y, int x, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    double at(int y, int x, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    bool same_shape(const PixelPlane& o) const {
        return height == o.height && width == o.width && channels == o.channels;
    }
};

PixelPlane make_plane(int height, int width, int channels, double fill = 0.0);

// Throws InvariantError unless dimensions are positive, channels is 1 or 3,
// the buffer length matches, and every element lies in [0,1].
void validate_plane(const PixelPlane& p);

// Shape checks only (no element scan).
void validate_shape(const PixelPlane& p);

// Exposure-control coefficient plus the block schedule K^1..K^T.
// T is the length of `block_steps`.
struct CorrectionParams {
    double c = 1.0;
    std::vector<int> block_steps = {1, 1, 1};
    ExposureMode mode = ExposureMode::Under;

    int blocks() const { return static_cast<int>(block_steps.size()); }
    int total_steps() const;
};

// Heuristic defaults: under -> c=1, K=[1,1,1]; over -> c=0.5, K=[3].
CorrectionParams default_params(ExposureMode mode);

// Enforces 0 <= c <= 1, 1 <= T <= 3, every K^t >= 1.
void validate_params(const CorrectionParams& p);

// Canonical 53-bit double in [0,1).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Seeded noise plane, reproducible across runs and platforms.
PixelPlane random_plane(int height, int width, int channels, std::uint64_t seed);

// FNV-1a over the raw double bytes; used by the determinism tests and the
// bench report.
std::uint64_t plane_checksum(const PixelPlane& p);

}  // namespace pec
