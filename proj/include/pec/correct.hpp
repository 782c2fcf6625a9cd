#pragma once

#include <functional>

#include "pec/plane.hpp"

namespace pec {

// Scalar kernels. Both the OpenMP path and the serial reference are built
// from these, so the two are bit-identical by construction.

// f(z) = c * z * (1 - z). Range [0, c/4].
inline double adversarial_value(double z, double c) {
    return c * z * (1.0 - z);
}

// One shrinkage step anchored at g: g + f(x) (under) or g - f(x) (over).
inline double step_value(double g, double x, double c, ExposureMode mode) {
    return mode == ExposureMode::Under ? g + adversarial_value(x, c)
                                       : g - adversarial_value(x, c);
}

// Full schedule for one element: warm start, then T blocks of K^t steps,
// re-anchoring after each block.
inline double correct_value(double y, const CorrectionParams& p) {
    double g = step_value(y, y, p.c, p.mode);  // warm start: y +/- f(y)
    for (int steps : p.block_steps) {
        double x = g;
        for (int k = 0; k < steps; ++k) x = step_value(g, x, p.c, p.mode);
        g = x;
    }
    return g;
}

// Plane operations.

// f applied element-wise. Rejects c outside [0,1] and any element outside [0,1].
PixelPlane adversarial(const PixelPlane& z, double c);

// Warm start g = y + f(y) (under) or y - f(y) (over). Output stays in [0,1].
PixelPlane warm_start(const PixelPlane& y, double c, ExposureMode mode);

// K shrinkage steps from x0 with fixed anchor g. g and x0 must share a shape.
PixelPlane block_iterate(const PixelPlane& g, const PixelPlane& x0, double c,
                         int steps, ExposureMode mode);

// The full corrector. Data-parallel over pixels; `threads` <= 0 means use
// all available. Output is bit-identical for every thread count.
PixelPlane correct(const PixelPlane& y, const CorrectionParams& params,
                   int threads = 0);

// Same kernel writing into a preallocated output plane (bench hot path).
void correct_into(const PixelPlane& y, const CorrectionParams& params,
                  int threads, PixelPlane& out);

// epsilon = x - y (under) or y - x (over).
PixelPlane compensation(const PixelPlane& y, const PixelPlane& x,
                        ExposureMode mode);

// Instrumented run: observer fires once for the warm start (block 0, step 0)
// and once after every shrinkage step with that block's 1-based index.
// Iterates are bit-identical to correct().
using StepObserver = std::function<void(int block, int step, const PixelPlane& x)>;
void correct_steps(const PixelPlane& y, const CorrectionParams& params,
                   const StepObserver& observe);

// Closed-form limit of an endless block anchored at g: the root in [0,1] of
//   under: c x^2 + (1-c) x - g = 0
//   over:  c x^2 - (1+c) x + g = 0
// For c = 0 the step is the identity, so g itself is returned.
double fixed_point(double g, double c, ExposureMode mode);

namespace serial {

// Reference implementation composed from the plane operations, one block at
// a time, no threading. Kept for parity tests and the comparison benchmark;
// must match pec::correct bit-for-bit.
PixelPlane correct(const PixelPlane& y, const CorrectionParams& params);

}  // namespace serial

}  // namespace pec
