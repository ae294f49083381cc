#include "benchmark_suite.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "mixdenoise/metrics.hpp"
#include "mixdenoise/pgm.hpp"
#include "mixdenoise/solver.hpp"

namespace mixdenoise::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::string fixed(double v, int digits) {
    if (std::isinf(v)) return "inf";
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << v;
    return out.str();
}

}  // namespace

std::vector<BenchmarkCase> parse_suite(const std::string& text, const std::filesystem::path& base_dir) {
    std::vector<BenchmarkCase> cases;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#' || line.rfind("image", 0) == 0) continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(trim(f));
        if (fields.size() < 5 || fields.size() > 6) {
            throw ConfigError("suite line " + std::to_string(line_no) +
                              ": expected image,kind,sigma,rate,seed[,min_psnr]");
        }
        try {
            BenchmarkCase c;
            c.image = std::filesystem::path(fields[0]);
            if (c.image.is_relative()) c.image = base_dir / c.image;
            c.kind = parse_noise_kind(fields[1]);
            c.sigma = std::stod(fields[2]);
            c.rate = std::stod(fields[3]);
            c.seed = std::stoull(fields[4]);
            if (fields.size() == 6 && !fields[5].empty()) c.min_psnr = std::stod(fields[5]);
            cases.push_back(std::move(c));
        } catch (const std::exception& e) {
            throw ConfigError("suite line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cases;
}

std::vector<BenchmarkCase> load_suite(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open suite file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_suite(buf.str(), path.parent_path());
}

std::vector<BenchmarkRow> run_suite(const std::vector<BenchmarkCase>& cases, const ConfigFile& config,
                                    std::ostream* progress) {
    std::vector<BenchmarkRow> rows;
    rows.reserve(cases.size());
    for (const auto& c : cases) {
        BenchmarkRow row{c, "error", 0.0, 0.0, 0.0, {}};
        try {
            const Image clean = load_pgm(c.image);
            NoiseSpec spec{c.sigma, c.rate, c.kind, c.seed};
            const auto record = corrupt(clean, spec);
            const SolverConfig cfg = make_solver_config(c.sigma, c.kind, config);
            const auto start = std::chrono::steady_clock::now();
            const Image restored = denoise(record.noisy, cfg);
            row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            row.noisy_psnr = psnr(clean, record.noisy);
            row.denoised_psnr = psnr(clean, restored);
            row.status = !c.min_psnr ? "ok" : (row.denoised_psnr >= *c.min_psnr ? "pass" : "fail");
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        if (progress) {
            *progress << c.image.filename().string() << ' ' << to_string(c.kind) << " r=" << c.rate
                      << ": " << row.status;
            if (row.status != "error") *progress << " (" << fixed(row.denoised_psnr, 2) << " dB)";
            else *progress << " (" << row.error << ")";
            *progress << '\n';
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_report(std::ostream& out, const std::vector<BenchmarkRow>& rows, const ConfigFile& config,
                  const std::string& suite_name) {
    out << "# mixdenoise benchmark\n# suite: " << suite_name << '\n';
    std::set<std::pair<double, NoiseKind>> seen;
    for (const auto& row : rows) {
        if (!seen.insert({row.spec.sigma, row.spec.kind}).second) continue;
        std::string text;
        try {
            text = describe(make_solver_config(row.spec.sigma, row.spec.kind, config));
        } catch (const std::exception& e) {
            text = std::string("config error: ") + e.what() + "\n";
        }
        out << "# config for sigma=" << row.spec.sigma << " kind=" << to_string(row.spec.kind) << ":\n";
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) out << "#   " << line << '\n';
    }
    out << "image,kind,r,sigma,seed,noisy_psnr,denoised_psnr,runtime_s,min_psnr,status\n";
    for (const auto& row : rows) {
        const auto& c = row.spec;
        const bool ok = row.status != "error";
        out << c.image.filename().string() << ',' << to_string(c.kind) << ',' << c.rate << ','
            << c.sigma << ',' << c.seed << ',' << (ok ? fixed(row.noisy_psnr, 2) : "") << ','
            << (ok ? fixed(row.denoised_psnr, 2) : "") << ',' << (ok ? fixed(row.runtime_s, 1) : "")
            << ',' << (c.min_psnr ? fixed(*c.min_psnr, 2) : "") << ',' << row.status << '\n';
    }
}

}  // namespace mixdenoise::cli
