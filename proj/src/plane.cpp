#include "pec/plane.hpp"

#include <cstring>
#include <numeric>

namespace pec {

PixelPlane make_plane(int height, int width, int channels, double fill) {
    PixelPlane p;
    p.height = height;
    p.width = width;
    p.channels = channels;
    p.data.assign(static_cast<std::size_t>(height) * width * channels, fill);
    validate_shape(p);
    return p;
}

void validate_shape(const PixelPlane& p) {
    if (p.height <= 0 || p.width <= 0)
        throw InvariantError("plane dimensions must be positive, got " +
                             std::to_string(p.height) + "x" + std::to_string(p.width));
    if (p.channels != 1 && p.channels != 3)
        throw InvariantError("plane must have 1 or 3 channels, got " +
                             std::to_string(p.channels));
    const std::size_t expect =
        static_cast<std::size_t>(p.height) * p.width * p.channels;
    if (p.data.size() != expect)
        throw InvariantError("plane buffer length " + std::to_string(p.data.size()) +
                             " does not match " + std::to_string(expect));
}

void validate_plane(const PixelPlane& p) {
    validate_shape(p);
    const double* d = p.data.data();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(p.data.size());
    long long bad = 0;
#pragma omp parallel for reduction(+ : bad) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (!(d[i] >= 0.0 && d[i] <= 1.0)) ++bad;  // also catches NaN
    }
    if (bad != 0)
        throw InvariantError("plane holds " + std::to_string(bad) +
                             " element(s) outside [0,1]");
}

int CorrectionParams::total_steps() const {
    return std::accumulate(block_steps.begin(), block_steps.end(), 0);
}

CorrectionParams default_params(ExposureMode mode) {
    CorrectionParams p;
    p.mode = mode;
    if (mode == ExposureMode::Under) {
        p.c = 1.0;
        p.block_steps = {1, 1, 1};
    } else {
        p.c = 0.5;
        p.block_steps = {3};
    }
    return p;
}

void validate_params(const CorrectionParams& p) {
    if (!(p.c >= 0.0 && p.c <= 1.0))
        throw InvariantError("coefficient c must lie in [0,1], got " +
                             std::to_string(p.c));
    if (p.blocks() < 1 || p.blocks() > 3)
        throw InvariantError("block count T must lie in [1,3], got " +
                             std::to_string(p.blocks()));
    for (int k : p.block_steps)
        if (k < 1)
            throw InvariantError("every block iteration count K^t must be >= 1, got " +
                                 std::to_string(k));
}

PixelPlane random_plane(int height, int width, int channels, std::uint64_t seed) {
    PixelPlane p = make_plane(height, width, channels);
    std::mt19937_64 rng(seed);
    for (double& v : p.data) v = uniform01(rng);
    return p;
}

std::uint64_t plane_checksum(const PixelPlane& p) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (double v : p.data) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffu;
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

}  // namespace pec
