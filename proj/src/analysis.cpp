#include "pec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace pec {

namespace {

constexpr std::size_t kSnapshotLimit = 4096;

IterationTrace::Step summarize(int block, int step, const PixelPlane& x,
                               bool keep_snapshot) {
    IterationTrace::Step s;
    s.block = block;
    s.step = step;
    s.min = *std::min_element(x.data.begin(), x.data.end());
    s.max = *std::max_element(x.data.begin(), x.data.end());
    double sum = 0.0;
    for (double v : x.data) sum += v;
    s.mean = sum / static_cast<double>(x.data.size());
    if (keep_snapshot) s.snapshot = x.data;
    return s;
}

void format_double(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out += buf;
}

}  // namespace

IterationTrace run_trace(const PixelPlane& y, const CorrectionParams& params) {
    IterationTrace trace;
    const bool keep = y.data.size() <= kSnapshotLimit;
    std::vector<double> prev;
    correct_steps(y, params, [&](int block, int step, const PixelPlane& x) {
        trace.steps.push_back(summarize(block, step, x, keep));
        if (!prev.empty()) {
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < x.data.size(); ++i) {
                const double d = x.data[i] - prev[i];
                num += d * d;
                den += x.data[i] * x.data[i];
            }
            trace.relative_errors.push_back(
                den == 0.0 ? 0.0 : std::sqrt(num) / std::sqrt(den));
        }
        prev = x.data;
    });
    return trace;
}

IterationTrace toy_trace(int m, const CorrectionParams& params,
                         std::uint64_t seed) {
    if (m < 1) throw InvariantError("toy trace length must be >= 1");
    return run_trace(random_plane(1, m, 1, seed), params);
}

std::vector<double> relative_error_trace(const PixelPlane& y,
                                         const CorrectionParams& params) {
    IterationTrace t = run_trace(y, params);
    return std::move(t.relative_errors);
}

TransferCurve transfer_curve(const CorrectionParams& params, int n) {
    if (n < 2) throw InvariantError("transfer curve needs at least 2 samples");
    PixelPlane ramp = make_plane(1, n, 1);
    for (int i = 0; i < n; ++i) ramp.data[i] = i / static_cast<double>(n - 1);
    TransferCurve curve;
    curve.inputs = ramp.data;
    curve.outputs = correct(ramp, params).data;
    return curve;
}

CompensationMap compensation_map(const PixelPlane& y,
                                 const CorrectionParams& params) {
    CompensationMap map;
    map.raw = compensation(y, correct(y, params), params.mode);
    map.normalized = map.raw;
    const auto [lo, hi] =
        std::minmax_element(map.raw.data.begin(), map.raw.data.end());
    const double span = *hi - *lo;
    for (double& v : map.normalized.data)
        v = span == 0.0 ? 0.0 : (v - *lo) / span;
    return map;
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
    std::string buf = "t,k,r,min,max,mean\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        buf += std::to_string(s.block);
        buf += ',';
        buf += std::to_string(s.step);
        buf += ',';
        if (i > 0) format_double(buf, trace.relative_errors[i - 1]);
        buf += ',';
        format_double(buf, s.min);
        buf += ',';
        format_double(buf, s.max);
        buf += ',';
        format_double(buf, s.mean);
        buf += '\n';
    }
    out << buf;
}

void write_curve_csv(std::ostream& out, const TransferCurve& curve) {
    std::string buf = "input,output\n";
    for (std::size_t i = 0; i < curve.inputs.size(); ++i) {
        format_double(buf, curve.inputs[i]);
        buf += ',';
        format_double(buf, curve.outputs[i]);
        buf += '\n';
    }
    out << buf;
}

}  // namespace pec
