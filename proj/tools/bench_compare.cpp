// Side-by-side timing of the OpenMP kernel and the serial reference at the
// usual desktop resolutions. Checksums must agree; if they do not, the build
// is broken and this tool exits nonzero.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pec/bench.hpp"
#include "pec/plane.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pec-bench-compare: OpenMP kernel vs serial reference"};
    int repeats = 10, warmup = 2, threads = 0;
    std::string mode = "under";
    app.add_option("--repeats", repeats)->check(CLI::Range(3, 1000));
    app.add_option("--warmup", warmup)->check(CLI::NonNegativeNumber);
    app.add_option("--threads", threads)->envname("PEC_THREADS");
    app.add_option("--mode", mode)->check(CLI::IsMember({"under", "over"}));
    CLI11_PARSE(app, argc, argv);

    const pec::CorrectionParams params = pec::default_params(
        mode == "over" ? pec::ExposureMode::Over : pec::ExposureMode::Under);
    const std::vector<std::pair<int, int>> sizes = {
        {1280, 720}, {1920, 1080}, {2560, 1440}};

    std::printf("%-12s %14s %14s %8s %6s\n", "resolution", "serial_median_s",
                "openmp_median_s", "speedup", "match");
    bool all_match = true;
    for (const auto& [w, h] : sizes) {
        const auto serial = pec::time_correct(w, h, params, repeats, warmup,
                                              threads, pec::BenchEngine::Serial);
        const auto openmp = pec::time_correct(w, h, params, repeats, warmup,
                                              threads, pec::BenchEngine::OpenMP);
        const bool match = serial.checksum == openmp.checksum;
        all_match = all_match && match;
        std::printf("%dx%-7d %14.6f %14.6f %8.2f %6s\n", w, h, serial.median,
                    openmp.median, serial.median / openmp.median,
                    match ? "yes" : "NO");
    }
    if (!all_match) {
        std::fprintf(stderr, "checksum mismatch between kernels\n");
        return 1;
    }
    return 0;
}
