#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>

#include "benchmark_suite.hpp"
#include "mixdenoise/config.hpp"
#include "mixdenoise/detect.hpp"
#include "mixdenoise/metrics.hpp"
#include "mixdenoise/noise.hpp"
#include "mixdenoise/pgm.hpp"
#include "mixdenoise/solver.hpp"

namespace mixdenoise::cli {

namespace {

// Thrown for bad user input detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_psnr(double db) {
    if (std::isinf(db)) return "inf";
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << db << " dB";
    return out.str();
}

NoiseKind kind_from_flag(const std::string& text) {
    try {
        return parse_noise_kind(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Image load_input(const std::string& path) {
    try {
        return load_pgm(path);
    } catch (const PgmError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

ConfigFile load_config(const std::string& path) {
    if (path.empty()) return {};
    try {
        return ConfigFile::load(path);
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
}

struct CorruptArgs {
    std::string input, output, mask, meta, kind = "sp";
    double sigma = 10.0, rate = 0.3;
    std::uint64_t seed = 0;
};

int cmd_corrupt(const CorruptArgs& a) {
    const Image clean = load_input(a.input);
    const NoiseSpec spec{a.sigma, a.rate, kind_from_flag(a.kind), a.seed};
    const auto record = corrupt(clean, spec);
    const std::string mask_path = a.mask.empty() ? a.output + ".mask.pgm" : a.mask;
    const std::string meta_path = a.meta.empty() ? a.output + ".meta.txt" : a.meta;
    save_pgm(record.noisy, a.output);
    save_pgm(record.truth_mask.to_image(), mask_path);

    std::ofstream meta(meta_path);
    if (!meta) throw std::runtime_error("cannot write " + meta_path);
    meta << "input = " << a.input << '\n'
         << "sigma = " << spec.sigma << '\n'
         << "rate = " << spec.rate << '\n'
         << "kind = " << to_string(spec.kind) << '\n'
         << "seed = " << spec.seed << '\n'
         << "corrupted = " << record.truth_mask.suspect_count() << '\n'
         << "pixels = " << record.truth_mask.size() << '\n';
    std::cout << "corrupted " << record.truth_mask.suspect_count() << " of " << record.truth_mask.size()
              << " pixels; PSNR " << format_psnr(psnr(clean, record.noisy)) << '\n';
    return kExitOk;
}

struct DetectArgs {
    std::string input, output, kind = "sp";
    int wmax = 39;
    double delta_factor = 1.0;
};

int cmd_detect(const DetectArgs& a) {
    const Image img = load_input(a.input);
    const NoiseKind kind = kind_from_flag(a.kind);
    const PixelMask mask =
        kind == NoiseKind::SaltPepper ? amf_detect(img, a.wmax) : acwmf_detect(img, a.delta_factor);
    save_pgm(mask.to_image(), a.output);
    std::cout << "suspect: " << mask.suspect_count() << '\n'
              << "reliable: " << mask.reliable_count() << '\n'
              << "total: " << mask.size() << '\n';
    return kExitOk;
}

struct DenoiseArgs {
    std::string input, output, kind = "sp", config, trace, reference;
    double sigma = 10.0;
};

int cmd_denoise(const DenoiseArgs& a) {
    const Image noisy = load_input(a.input);
    SolverConfig cfg;
    try {
        cfg = make_solver_config(a.sigma, kind_from_flag(a.kind), load_config(a.config));
        cfg.nonlocal.validate(noisy.width(), noisy.height());
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }

    std::unique_ptr<std::ofstream> trace_file;
    std::ostream* trace_out = nullptr;
    if (a.trace == "-") {
        trace_out = &std::cout;
    } else if (!a.trace.empty()) {
        trace_file = std::make_unique<std::ofstream>(a.trace);
        if (!*trace_file) throw UsageError("cannot write trace file " + a.trace);
        trace_out = trace_file.get();
    }
    TraceSink sink;
    if (trace_out) {
        *trace_out << "outer,inner,suspects,objective,fidelity,rms_x_minus_u,rms_x_minus_w\n";
        sink = [trace_out](const TraceRecord& r) {
            *trace_out << r.outer << ',' << r.inner << ',' << r.suspects << ',' << std::setprecision(12)
                       << r.objective << ',' << r.fidelity << ',' << r.residual_u << ',' << r.residual_w
                       << '\n';
        };
    }

    const auto start = std::chrono::steady_clock::now();
    const auto result = denoise_detailed(noisy, cfg, sink);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    save_pgm(result.image, a.output);
    std::cerr << "denoised in " << std::fixed << std::setprecision(1) << seconds << " s, "
              << result.candidates.back().suspect_count() << " impulse candidates\n";
    if (!a.reference.empty()) {
        const Image ref = load_input(a.reference);
        if (!ref.same_shape(noisy)) throw UsageError("reference size differs from input");
        std::cout << "PSNR: " << format_psnr(psnr(ref, clip(result.image))) << '\n';
    }
    return kExitOk;
}

int cmd_evaluate(const std::string& ref_path, const std::string& test_path) {
    const Image ref = load_input(ref_path);
    const Image test = load_input(test_path);
    if (!ref.same_shape(test)) {
        throw UsageError("size mismatch: " + std::to_string(ref.width()) + "x" + std::to_string(ref.height()) +
                         " vs " + std::to_string(test.width()) + "x" + std::to_string(test.height()));
    }
    std::cout << "MSE: " << std::fixed << std::setprecision(4) << mse(ref, test) << '\n'
              << "PSNR: " << format_psnr(psnr(ref, test)) << '\n';
    return kExitOk;
}

int cmd_benchmark(const std::string& suite_path, const std::string& output, const std::string& config_path) {
    std::vector<BenchmarkCase> cases;
    try {
        cases = load_suite(suite_path);
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    const ConfigFile config = load_config(config_path);
    const auto rows = run_suite(cases, config, &std::cerr);
    if (output.empty() || output == "-") {
        write_report(std::cout, rows, config, suite_path);
    } else {
        std::ofstream out(output);
        if (!out) throw UsageError("cannot write report " + output);
        write_report(out, rows, config, suite_path);
    }
    for (const auto& row : rows) {
        if (row.status == "error" || row.status == "fail") return kExitCaseFailure;
    }
    return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Mixed Gaussian-impulse noise removal for grayscale PGM images"};
    app.require_subcommand(1);

    CorruptArgs corrupt_args;
    auto* corrupt = app.add_subcommand("corrupt", "Add Gaussian plus impulse noise");
    corrupt->add_option("--input,-i", corrupt_args.input, "Clean PGM")->required();
    corrupt->add_option("--output,-o", corrupt_args.output, "Noisy PGM")->required();
    corrupt->add_option("--mask", corrupt_args.mask, "Ground-truth mask PGM (default <output>.mask.pgm)");
    corrupt->add_option("--meta", corrupt_args.meta, "Metadata text (default <output>.meta.txt)");
    corrupt->add_option("--sigma", corrupt_args.sigma, "Gaussian standard deviation")->check(CLI::NonNegativeNumber);
    corrupt->add_option("--rate", corrupt_args.rate, "Impulse rate in [0,1]")->check(CLI::Range(0.0, 1.0));
    corrupt->add_option("--kind", corrupt_args.kind, "sp or rv")->check(CLI::IsMember({"sp", "rv"}));
    corrupt->add_option("--seed", corrupt_args.seed, "Random seed");

    DetectArgs detect_args;
    auto* detect = app.add_subcommand("detect", "Write the impulse-candidate mask (255 = suspect)");
    detect->add_option("--input,-i", detect_args.input)->required();
    detect->add_option("--output,-o", detect_args.output)->required();
    detect->add_option("--kind", detect_args.kind, "sp (AMF) or rv (ACWMF)")->check(CLI::IsMember({"sp", "rv"}));
    detect->add_option("--wmax", detect_args.wmax, "Largest AMF window (odd)")
        ->check(CLI::Range(3, 1001))
        ->check([](const std::string& s) { return std::stoi(s) % 2 == 1 ? "" : "must be odd"; });
    detect->add_option("--delta-factor", detect_args.delta_factor, "ACWMF threshold factor")
        ->check(CLI::NonNegativeNumber);

    DenoiseArgs denoise_args;
    auto* den = app.add_subcommand("denoise", "Remove mixed Gaussian-impulse noise");
    den->add_option("--input,-i", denoise_args.input)->required();
    den->add_option("--output,-o", denoise_args.output)->required();
    den->add_option("--sigma", denoise_args.sigma, "Gaussian standard deviation of the noise")
        ->required()
        ->check(CLI::PositiveNumber);
    den->add_option("--kind", denoise_args.kind, "sp or rv")->required()->check(CLI::IsMember({"sp", "rv"}));
    den->add_option("--config", denoise_args.config, "Flat section.key = value settings file");
    den->add_option("--trace", denoise_args.trace, "Per-iteration CSV log ('-' for stdout)");
    den->add_option("--reference", denoise_args.reference, "Clean image; prints PSNR of the result");

    std::string ref_path, test_path;
    auto* evaluate = app.add_subcommand("evaluate", "Print MSE and PSNR between two PGMs");
    evaluate->add_option("reference", ref_path)->required();
    evaluate->add_option("test", test_path)->required();

    std::string suite_path, report_path, bench_config;
    auto* bench = app.add_subcommand("benchmark", "Run a suite of corrupt+denoise cases");
    bench->add_option("--suite", suite_path, "CSV case list")->required();
    bench->add_option("--output,-o", report_path, "Report CSV (default stdout)");
    bench->add_option("--config", bench_config, "Settings file applied to every case");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*corrupt) return cmd_corrupt(corrupt_args);
        if (*detect) return cmd_detect(detect_args);
        if (*den) return cmd_denoise(denoise_args);
        if (*evaluate) return cmd_evaluate(ref_path, test_path);
        if (*bench) return cmd_benchmark(suite_path, report_path, bench_config);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCaseFailure;
    }
    return kExitUsage;
}

}  // namespace mixdenoise::cli
