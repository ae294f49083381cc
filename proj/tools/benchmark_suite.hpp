#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mixdenoise/config.hpp"
#include "mixdenoise/noise.hpp"

namespace mixdenoise::cli {

/// One reproducible experiment: corrupt `image` with (sigma, rate, kind, seed)
/// and denoise it with the given sigma.
struct BenchmarkCase {
    std::filesystem::path image;
    NoiseKind kind = NoiseKind::SaltPepper;
    double sigma = 10.0;
    double rate = 0.0;
    std::uint64_t seed = 0;
    std::optional<double> min_psnr;  ///< pass/fail bound on the denoised PSNR
};

/// Suite files are CSV lines `image,kind,sigma,rate,seed[,min_psnr]`. '#'
/// lines and blank lines are skipped; a header line starting with "image" is
/// allowed. Relative image paths resolve against the suite file's directory.
std::vector<BenchmarkCase> parse_suite(const std::string& text, const std::filesystem::path& base_dir);
std::vector<BenchmarkCase> load_suite(const std::filesystem::path& path);

struct BenchmarkRow {
    BenchmarkCase spec;
    std::string status;  ///< "pass", "fail", "ok" (no bound) or "error"
    double noisy_psnr = 0.0;
    double denoised_psnr = 0.0;
    double runtime_s = 0.0;
    std::string error;
};

/// Runs every case in order; a failing case never stops the others.
std::vector<BenchmarkRow> run_suite(const std::vector<BenchmarkCase>& cases, const ConfigFile& config,
                                    std::ostream* progress = nullptr);

/// CSV report with a leading '#' block carrying the effective configuration.
void write_report(std::ostream& out, const std::vector<BenchmarkRow>& rows, const ConfigFile& config,
                  const std::string& suite_name);

}  // namespace mixdenoise::cli
