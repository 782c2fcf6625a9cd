#include "pec/correct.hpp"

#include <cmath>

#include <omp.h>

namespace pec {

namespace {

int resolve_threads(int threads) {
    return threads > 0 ? threads : omp_get_max_threads();
}

void require_c_range(double c) {
    if (!(c >= 0.0 && c <= 1.0))
        throw InvariantError("coefficient c must lie in [0,1], got " +
                             std::to_string(c));
}

}  // namespace

PixelPlane adversarial(const PixelPlane& z, double c) {
    require_c_range(c);
    validate_plane(z);
    PixelPlane out = z;
    for (double& v : out.data) v = adversarial_value(v, c);
    return out;
}

PixelPlane warm_start(const PixelPlane& y, double c, ExposureMode mode) {
    require_c_range(c);
    validate_plane(y);
    PixelPlane out = y;
    for (double& v : out.data) v = step_value(v, v, c, mode);
    return out;
}

PixelPlane block_iterate(const PixelPlane& g, const PixelPlane& x0, double c,
                         int steps, ExposureMode mode) {
    require_c_range(c);
    validate_plane(g);
    validate_plane(x0);
    if (!g.same_shape(x0))
        throw InvariantError("anchor and start plane shapes differ");
    if (steps < 1)
        throw InvariantError("block iteration count must be >= 1, got " +
                             std::to_string(steps));
    PixelPlane x = x0;
    for (int k = 0; k < steps; ++k)
        for (std::size_t i = 0; i < x.data.size(); ++i)
            x.data[i] = step_value(g.data[i], x.data[i], c, mode);
    return x;
}

void correct_into(const PixelPlane& y, const CorrectionParams& params,
                  int threads, PixelPlane& out) {
    validate_params(params);
    validate_plane(y);
    if (!out.same_shape(y)) {
        out.height = y.height;
        out.width = y.width;
        out.channels = y.channels;
        out.data.resize(y.data.size());
    }
    const double* src = y.data.data();
    double* dst = out.data.data();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.data.size());
    const int nt = resolve_threads(threads);
#pragma omp parallel for num_threads(nt) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) dst[i] = correct_value(src[i], params);
}

PixelPlane correct(const PixelPlane& y, const CorrectionParams& params,
                   int threads) {
    PixelPlane out;
    correct_into(y, params, threads, out);
    return out;
}

PixelPlane compensation(const PixelPlane& y, const PixelPlane& x,
                        ExposureMode mode) {
    validate_shape(y);
    validate_shape(x);
    if (!y.same_shape(x))
        throw InvariantError("compensation expects matching shapes");
    PixelPlane eps = y;
    for (std::size_t i = 0; i < eps.data.size(); ++i)
        eps.data[i] = mode == ExposureMode::Under ? x.data[i] - y.data[i]
                                                  : y.data[i] - x.data[i];
    return eps;
}

void correct_steps(const PixelPlane& y, const CorrectionParams& params,
                   const StepObserver& observe) {
    validate_params(params);
    validate_plane(y);
    PixelPlane g = y;
    for (double& v : g.data) v = step_value(v, v, params.c, params.mode);
    observe(0, 0, g);
    PixelPlane x = g;
    for (int t = 0; t < params.blocks(); ++t) {
        for (int k = 1; k <= params.block_steps[t]; ++k) {
            for (std::size_t i = 0; i < x.data.size(); ++i)
                x.data[i] = step_value(g.data[i], x.data[i], params.c, params.mode);
            observe(t + 1, k, x);
        }
        g = x;  // re-anchor on the block output
    }
}

double fixed_point(double g, double c, ExposureMode mode) {
    if (!(g >= 0.0 && g <= 1.0))
        throw InvariantError("anchor g must lie in [0,1], got " + std::to_string(g));
    require_c_range(c);
    if (c == 0.0) return g;
    if (mode == ExposureMode::Under) {
        const double b = 1.0 - c;
        return (-b + std::sqrt(b * b + 4.0 * c * g)) / (2.0 * c);
    }
    const double b = 1.0 + c;
    return (b - std::sqrt(b * b - 4.0 * c * g)) / (2.0 * c);
}

namespace serial {

PixelPlane correct(const PixelPlane& y, const CorrectionParams& params) {
    validate_params(params);
    PixelPlane g = warm_start(y, params.c, params.mode);
    for (int steps : params.block_steps)
        g = block_iterate(g, g, params.c, steps, params.mode);
    return g;
}

}  // namespace serial

}  // namespace pec
