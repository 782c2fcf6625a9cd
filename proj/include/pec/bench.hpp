#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pec/plane.hpp"

namespace pec {

enum class BenchEngine { OpenMP, Serial };

struct BenchResult {
    int width = 0;
    int height = 0;
    CorrectionParams params;
    int repeats = 0;
    int warmup = 0;
    int threads = 0;  // as requested; 0 = all available
    BenchEngine engine = BenchEngine::OpenMP;
    std::vector<double> seconds;  // one entry per timed repeat
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
    std::uint64_t checksum = 0;  // over the output plane, equal for all runs
};

// Times the correct() kernel on seeded 3-channel noise. Input generation,
// output allocation, and checksumming happen outside the timed region; the
// timed region is the kernel itself including its input validation scan.
BenchResult time_correct(int width, int height, const CorrectionParams& params,
                         int repeats, int warmup, int threads,
                         BenchEngine engine = BenchEngine::OpenMP,
                         std::uint64_t seed = 2024);

// Report with the timing-policy metadata spelled out.
std::string bench_report_json(const BenchResult& r);

}  // namespace pec
