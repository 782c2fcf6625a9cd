#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pec/correct.hpp"
#include "pec/plane.hpp"

namespace pec {

// Per-step record of an instrumented correct() run. The first entry is the
// warm-start anchor (block 0, step 0); every later entry is one shrinkage
// step, so relative_errors has exactly total-steps entries, one fewer than
// `steps`. Full iterate snapshots are kept only for small planes
// (<= 4096 elements); larger runs keep the scalar summaries alone.
struct IterationTrace {
    struct Step {
        int block = 0;
        int step = 0;
        double min = 0.0;
        double max = 0.0;
        double mean = 0.0;
        std::vector<double> snapshot;  // empty when not stored
    };
    std::vector<Step> steps;
    // r_k = ||x^k - x^{k-1}||_2 / ||x^k||_2, 0 when the denominator is 0.
    std::vector<double> relative_errors;
};

// Instrument a full run on an arbitrary plane.
IterationTrace run_trace(const PixelPlane& y, const CorrectionParams& params);

// Seeded 1 x M single-channel toy input, snapshots kept.
IterationTrace toy_trace(int m, const CorrectionParams& params,
                         std::uint64_t seed);

// Same run, relative errors only (snapshots dropped regardless of size).
std::vector<double> relative_error_trace(const PixelPlane& y,
                                         const CorrectionParams& params);

// Scalar input -> output mapping of correct() on a 1 x n ramp i/(n-1).
struct TransferCurve {
    std::vector<double> inputs;
    std::vector<double> outputs;
};
TransferCurve transfer_curve(const CorrectionParams& params, int n);

// correct() followed by the compensation difference, plus a min-max
// normalized copy for visualization (all-zero maps normalize to zero).
struct CompensationMap {
    PixelPlane raw;
    PixelPlane normalized;
};
CompensationMap compensation_map(const PixelPlane& y,
                                 const CorrectionParams& params);

// CSV emission. Byte-stable for identical inputs.
// Trace rows: t,k,r,min,max,mean (r empty on the warm-start row).
void write_trace_csv(std::ostream& out, const IterationTrace& trace);
// Curve rows: input,output.
void write_curve_csv(std::ostream& out, const TransferCurve& curve);

}  // namespace pec
