// pec: training-free exposure correction tool.
//
//   pec correct --mode under in.png -o out.png
//   pec metrics --ref ref.png test.png --json
//   pec trace in.png --csv trace.csv
//   pec curve -n 256 --csv curve.csv
//   pec hist in.png --channel 0 --csv hist.csv
//   pec bench -w 1280 -h 720 --json report.json

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pec/analysis.hpp"
#include "pec/bench.hpp"
#include "pec/correct.hpp"
#include "pec/image.hpp"
#include "pec/metrics.hpp"
#include "pec/plane.hpp"

namespace {

struct ParamFlags {
    std::string mode = "under";
    std::optional<double> c;
    std::optional<int> blocks;
    std::optional<std::string> k_list;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f, bool allow_auto) {
    const std::string modes = allow_auto ? "under|over|auto" : "under|over";
    cmd->add_option("--mode", f.mode, "exposure mode (" + modes + ")")
        ->check(CLI::IsMember(allow_auto
                                  ? std::vector<std::string>{"under", "over", "auto"}
                                  : std::vector<std::string>{"under", "over"}))
        ->capture_default_str();
    cmd->add_option("-c", f.c, "exposure coefficient, c in [0,1]")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("-T", f.blocks, "block count, T in [1,3]")
        ->check(CLI::Range(1, 3));
    cmd->add_option("-K", f.k_list,
                    "comma-separated per-block iteration counts (K^1..K^T)");
}

std::vector<int> parse_k_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size() || v < 1) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw CLI::ValidationError("-K", "'" + item +
                                                "' is not a positive integer");
        }
    }
    if (out.empty()) throw CLI::ValidationError("-K", "empty iteration list");
    return out;
}

// Builds CorrectionParams from the flags; `resolved_mode` must already be
// under or over (auto handled by the caller).
pec::CorrectionParams resolve_params(const ParamFlags& f,
                                     pec::ExposureMode resolved_mode) {
    pec::CorrectionParams p = pec::default_params(resolved_mode);
    if (f.c) p.c = *f.c;
    if (f.k_list) {
        p.block_steps = parse_k_list(*f.k_list);
        if (f.blocks && *f.blocks != static_cast<int>(p.block_steps.size()))
            throw CLI::ValidationError(
                "-K", "iteration list length " +
                          std::to_string(p.block_steps.size()) +
                          " does not match -T " + std::to_string(*f.blocks));
    } else if (f.blocks) {
        const int per_block = resolved_mode == pec::ExposureMode::Under ? 1 : 3;
        p.block_steps.assign(static_cast<std::size_t>(*f.blocks), per_block);
    }
    if (static_cast<int>(p.block_steps.size()) > 3)
        throw CLI::ValidationError("-K", "at most 3 blocks are supported");
    return p;
}

pec::ExposureMode resolve_mode(const ParamFlags& f, const pec::PixelPlane& input) {
    if (f.mode == "under") return pec::ExposureMode::Under;
    if (f.mode == "over") return pec::ExposureMode::Over;
    const pec::PixelPlane gray = pec::luminance_gray(input);
    double sum = 0.0;
    for (double v : gray.data) sum += v;
    const double mean = sum / static_cast<double>(gray.data.size());
    const auto mode =
        mean > 0.5 ? pec::ExposureMode::Over : pec::ExposureMode::Under;
    std::fprintf(stderr, "auto mode: mean luminance %.6f -> %s\n", mean,
                 pec::to_string(mode));
    return mode;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw pec::IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw pec::IoError("short write to '" + path + "'");
}

nlohmann::json metric_report_json(const pec::MetricReport& r) {
    nlohmann::json j;
    j["de"] = r.de;
    if (r.psnr) j["psnr"] = std::isinf(*r.psnr) ? nlohmann::json("inf")
                                                : nlohmann::json(*r.psnr);
    if (r.ssim) j["ssim"] = *r.ssim;
    if (r.loe) j["loe"] = *r.loe;
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"pec: practical exposure correction"};
    app.set_help_flag("--help", "print help");  // frees -h for bench height
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads,
                   "data-parallel width (0 = all cores; env PEC_THREADS)")
        ->envname("PEC_THREADS");

    // correct
    auto* c_cmd = app.add_subcommand("correct", "correct exposure of an image");
    ParamFlags c_flags;
    std::string c_in, c_out;
    add_param_flags(c_cmd, c_flags, true);
    c_cmd->add_option("input", c_in, "input image (png/jpeg/ppm/pgm)")->required();
    c_cmd->add_option("-o,--output", c_out, "output image (png/ppm/pgm)")
        ->required();

    // metrics
    auto* m_cmd = app.add_subcommand("metrics", "image quality metrics");
    std::string m_test, m_ref;
    bool m_json = false;
    int m_loe_bound = 100;
    m_cmd->add_option("test", m_test, "image under evaluation")->required();
    m_cmd->add_option("--ref", m_ref,
                      "reference image (pre-correction original for LOE)");
    m_cmd->add_flag("--json", m_json, "emit JSON on stdout");
    m_cmd->add_option("--loe-bound", m_loe_bound,
                      "LOE downsample bound (max dimension)")
        ->check(CLI::PositiveNumber);

    // trace
    auto* t_cmd = app.add_subcommand("trace", "relative-error trace of a run");
    ParamFlags t_flags;
    std::string t_in, t_csv;
    add_param_flags(t_cmd, t_flags, false);
    t_cmd->add_option("input", t_in, "input image")->required();
    t_cmd->add_option("--csv", t_csv, "output CSV path")->required();

    // curve
    auto* u_cmd = app.add_subcommand("curve", "scalar transfer curve");
    ParamFlags u_flags;
    int u_n = 1024;
    std::string u_csv;
    add_param_flags(u_cmd, u_flags, false);
    u_cmd->add_option("-n", u_n, "number of samples")->check(CLI::Range(2, 1 << 24));
    u_cmd->add_option("--csv", u_csv, "output CSV path")->required();

    // hist
    auto* h_cmd = app.add_subcommand("hist", "256-bin intensity histogram");
    std::string h_in, h_csv;
    int h_channel = 0;
    h_cmd->add_option("input", h_in, "input image")->required();
    h_cmd->add_option("--channel", h_channel, "channel index")
        ->check(CLI::NonNegativeNumber);
    h_cmd->add_option("--csv", h_csv, "output CSV path")->required();

    // bench
    auto* b_cmd = app.add_subcommand("bench", "kernel runtime measurement");
    ParamFlags b_flags;
    int b_w = 1920, b_h = 1080, b_repeats = 20, b_warmup = 3;
    std::string b_json, b_engine = "openmp";
    add_param_flags(b_cmd, b_flags, false);
    b_cmd->add_option("-w", b_w, "image width")->check(CLI::PositiveNumber);
    b_cmd->add_option("-h", b_h, "image height")->check(CLI::PositiveNumber);
    b_cmd->add_option("--repeats", b_repeats, "timed repeats")
        ->check(CLI::Range(3, 10000));
    b_cmd->add_option("--warmup", b_warmup, "warmup repeats")
        ->check(CLI::NonNegativeNumber);
    b_cmd->add_option("--engine", b_engine, "kernel to time")
        ->check(CLI::IsMember({"openmp", "serial"}));
    b_cmd->add_option("--json", b_json, "output JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the error message
        return code == 0 ? 0 : 1;
    }

    if (c_cmd->parsed()) {
        const pec::PixelPlane in = pec::to_plane(pec::decode_file(c_in));
        const pec::CorrectionParams params =
            resolve_params(c_flags, resolve_mode(c_flags, in));
        const pec::PixelPlane out = pec::correct(in, params, threads);
        pec::write_image_file(c_out, pec::from_plane(out));
        return 0;
    }
    if (m_cmd->parsed()) {
        const pec::PixelPlane test = pec::to_plane(pec::decode_file(m_test));
        pec::MetricReport report;
        if (!m_ref.empty()) {
            const pec::PixelPlane ref = pec::to_plane(pec::decode_file(m_ref));
            report.de = pec::discrete_entropy(test);
            report.psnr = pec::psnr(ref, test);
            report.ssim = pec::ssim(ref, test);
            report.loe = pec::loe(ref, test, m_loe_bound);
        } else {
            report = pec::evaluate(nullptr, test);
        }
        if (m_json) {
            std::printf("%s\n", metric_report_json(report).dump(2).c_str());
        } else {
            std::printf("de: %.6f bits\n", report.de);
            if (report.psnr) {
                if (std::isinf(*report.psnr))
                    std::printf("psnr: inf\n");
                else
                    std::printf("psnr: %.6f dB\n", *report.psnr);
                std::printf("ssim: %.6f\n", *report.ssim);
                std::printf("loe: %.6f\n", *report.loe);
            }
        }
        return 0;
    }
    if (t_cmd->parsed()) {
        const pec::PixelPlane in = pec::to_plane(pec::decode_file(t_in));
        const pec::CorrectionParams params =
            resolve_params(t_flags, resolve_mode(t_flags, in));
        std::ostringstream csv;
        pec::write_trace_csv(csv, pec::run_trace(in, params));
        write_text_file(t_csv, csv.str());
        return 0;
    }
    if (u_cmd->parsed()) {
        const pec::CorrectionParams params = resolve_params(
            u_flags, u_flags.mode == "over" ? pec::ExposureMode::Over
                                            : pec::ExposureMode::Under);
        std::ostringstream csv;
        pec::write_curve_csv(csv, pec::transfer_curve(params, u_n));
        write_text_file(u_csv, csv.str());
        return 0;
    }
    if (h_cmd->parsed()) {
        const pec::PixelPlane in = pec::to_plane(pec::decode_file(h_in));
        const pec::Histogram256 hist = pec::histogram256(in, h_channel);
        std::string csv;
        for (int i = 0; i < 256; ++i) {
            csv += std::to_string(i);
            csv += ',';
            csv += std::to_string(hist.bins[static_cast<std::size_t>(i)]);
            csv += '\n';
        }
        write_text_file(h_csv, csv);
        return 0;
    }
    if (b_cmd->parsed()) {
        const pec::CorrectionParams params = resolve_params(
            b_flags, b_flags.mode == "over" ? pec::ExposureMode::Over
                                            : pec::ExposureMode::Under);
        const auto engine = b_engine == "serial" ? pec::BenchEngine::Serial
                                                 : pec::BenchEngine::OpenMP;
        const pec::BenchResult result = pec::time_correct(
            b_w, b_h, params, b_repeats, b_warmup, threads, engine);
        write_text_file(b_json, pec::bench_report_json(result));
        std::fprintf(stderr, "bench %dx%d (%s): median %.6f s over %d repeats\n",
                     b_w, b_h, b_engine.c_str(), result.median, result.repeats);
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {  // post-parse flag validation
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const pec::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const pec::InvariantError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
