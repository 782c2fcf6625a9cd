#include "pec/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "pec/image.hpp"

namespace pec {

namespace {

void require_same_shape(const PixelPlane& a, const PixelPlane& b,
                        const char* what) {
    validate_shape(a);
    validate_shape(b);
    if (!a.same_shape(b))
        throw InvariantError(std::string(what) + " expects identical shapes");
}

constexpr int kWin = 11;

std::array<double, kWin> gaussian_window() {
    std::array<double, kWin> w{};
    const double sigma = 1.5;
    double sum = 0.0;
    for (int i = 0; i < kWin; ++i) {
        const double d = i - (kWin - 1) / 2.0;
        w[i] = std::exp(-d * d / (2.0 * sigma * sigma));
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return w;
}

// Valid-mode separable convolution with the 11-tap window.
// Input H x W, output (H-10) x (W-10).
std::vector<double> filter_valid(const std::vector<double>& in, int h, int w,
                                 const std::array<double, kWin>& k) {
    const int wo = w - kWin + 1;
    const int ho = h - kWin + 1;
    std::vector<double> tmp(static_cast<std::size_t>(h) * wo);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < wo; ++c) {
            double s = 0.0;
            for (int i = 0; i < kWin; ++i)
                s += k[i] * in[static_cast<std::size_t>(r) * w + c + i];
            tmp[static_cast<std::size_t>(r) * wo + c] = s;
        }
    std::vector<double> out(static_cast<std::size_t>(ho) * wo);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < ho; ++r)
        for (int c = 0; c < wo; ++c) {
            double s = 0.0;
            for (int i = 0; i < kWin; ++i)
                s += k[i] * tmp[static_cast<std::size_t>(r + i) * wo + c];
            out[static_cast<std::size_t>(r) * wo + c] = s;
        }
    return out;
}

// Nearest-neighbor resample of a 1-channel plane to th x tw.
std::vector<double> resample_nn(const PixelPlane& p, int th, int tw) {
    std::vector<double> out(static_cast<std::size_t>(th) * tw);
    for (int r = 0; r < th; ++r) {
        const int sr = std::min(p.height - 1,
                                static_cast<int>((r + 0.5) * p.height / th));
        for (int c = 0; c < tw; ++c) {
            const int sc = std::min(p.width - 1,
                                    static_cast<int>((c + 0.5) * p.width / tw));
            out[static_cast<std::size_t>(r) * tw + c] = p.at(sr, sc, 0);
        }
    }
    return out;
}

}  // namespace

double psnr(const PixelPlane& ref, const PixelPlane& test) {
    require_same_shape(ref, test, "psnr");
    double se = 0.0;
    for (std::size_t i = 0; i < ref.data.size(); ++i) {
        const double d = ref.data[i] - test.data[i];
        se += d * d;
    }
    const double mse = se / static_cast<double>(ref.data.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

double ssim(const PixelPlane& ref, const PixelPlane& test) {
    require_same_shape(ref, test, "ssim");
    if (ref.height < kWin || ref.width < kWin)
        throw InvariantError("ssim needs min dimension >= 11, got " +
                             std::to_string(ref.height) + "x" +
                             std::to_string(ref.width));
    const PixelPlane a = luminance_gray(ref);
    const PixelPlane b = luminance_gray(test);
    const int h = a.height, w = a.width;
    const std::size_t n = a.data.size();
    std::vector<double> aa(n), bb(n), ab(n);
    for (std::size_t i = 0; i < n; ++i) {
        aa[i] = a.data[i] * a.data[i];
        bb[i] = b.data[i] * b.data[i];
        ab[i] = a.data[i] * b.data[i];
    }
    const auto k = gaussian_window();
    const auto mu_a = filter_valid(a.data, h, w, k);
    const auto mu_b = filter_valid(b.data, h, w, k);
    const auto s_aa = filter_valid(aa, h, w, k);
    const auto s_bb = filter_valid(bb, h, w, k);
    const auto s_ab = filter_valid(ab, h, w, k);

    const double c1 = 0.01 * 0.01;  // (K1 * L)^2, L = 1
    const double c2 = 0.03 * 0.03;
    double sum = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double ma = mu_a[i], mb = mu_b[i];
        const double va = s_aa[i] - ma * ma;
        const double vb = s_bb[i] - mb * mb;
        const double cov = s_ab[i] - ma * mb;
        sum += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
               ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
    return sum / static_cast<double>(mu_a.size());
}

double discrete_entropy(const PixelPlane& p) {
    validate_shape(p);
    const Histogram256 h = histogram256(luminance_gray(p), 0);
    double bits = 0.0;
    for (std::uint64_t count : h.bins) {
        if (count == 0) continue;
        const double q = static_cast<double>(count) / static_cast<double>(h.total);
        bits -= q * std::log2(q);
    }
    return bits;
}

double loe(const PixelPlane& original, const PixelPlane& enhanced,
           int downsample_bound) {
    require_same_shape(original, enhanced, "loe");
    if (downsample_bound < 1)
        throw InvariantError("loe downsample bound must be >= 1");
    const PixelPlane lo = luminance_max(original);
    const PixelPlane le = luminance_max(enhanced);
    int th = lo.height, tw = lo.width;
    const int big = std::max(th, tw);
    if (big > downsample_bound) {
        const double s = static_cast<double>(downsample_bound) / big;
        th = std::max(1, static_cast<int>(std::lround(lo.height * s)));
        tw = std::max(1, static_cast<int>(std::lround(lo.width * s)));
    }
    const std::vector<double> l0 = resample_nn(lo, th, tw);
    const std::vector<double> l1 = resample_nn(le, th, tw);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(l0.size());
    long long flips = 0;
#pragma omp parallel for reduction(+ : flips) schedule(static)
    for (std::ptrdiff_t p = 0; p < m; ++p) {
        long long row = 0;
        for (std::ptrdiff_t q = 0; q < m; ++q)
            row += (l0[p] >= l0[q]) != (l1[p] >= l1[q]);
        flips += row;
    }
    return static_cast<double>(flips) / static_cast<double>(m);
}

MetricReport evaluate(const PixelPlane* ref, const PixelPlane& test) {
    MetricReport r;
    r.de = discrete_entropy(test);
    if (ref) {
        r.psnr = psnr(*ref, test);
        r.ssim = ssim(*ref, test);
        r.loe = loe(*ref, test);
    }
    return r;
}

}  // namespace pec
