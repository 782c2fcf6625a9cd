#pragma once

#include <optional>

#include "pec/plane.hpp"

namespace pec {

// PSNR in dB over all channels jointly, MAX = 1. Returns +infinity when the
// planes are identical (zero MSE).
double psnr(const PixelPlane& ref, const PixelPlane& test);

// Mean local SSIM on gray luminance. 11x11 Gaussian window, sigma 1.5,
// K1 = 0.01, K2 = 0.03, dynamic range 1. Requires min(H, W) >= 11.
double ssim(const PixelPlane& ref, const PixelPlane& test);

// Shannon entropy (bits) of the 256-bin histogram of the gray luminance.
// Bounded by [0, 8].
double discrete_entropy(const PixelPlane& p);

// Lightness order error. Lightness is max(R,G,B); both maps are downsampled
// by nearest neighbor until max(H, W) <= downsample_bound, then every pixel
// pair is compared:
//   loe = (1/m) sum_p sum_q [ (L(p) >= L(q)) xor (L'(p) >= L'(q)) ]
// Self pairs (p == q) are included; they never flip, so they contribute 0.
double loe(const PixelPlane& original, const PixelPlane& enhanced,
           int downsample_bound = 100);

struct MetricReport {
    std::optional<double> psnr;  // absent without a reference
    std::optional<double> ssim;
    std::optional<double> loe;
    double de = 0.0;
};

// DE always; the full-reference metrics only when `ref` is present
// (for LOE, `ref` is the pre-correction original).
MetricReport evaluate(const PixelPlane* ref, const PixelPlane& test);

}  // namespace pec
