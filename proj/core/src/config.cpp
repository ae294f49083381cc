#include "mixdenoise/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mixdenoise {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    in.imbue(std::locale::classic());
    double v = 0.0;
    if (!(in >> v) || !(in >> std::ws).eof()) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
    }
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    int v = 0;
    const auto s = trim(text);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + text + "'");
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& text) {
    const auto s = trim(text);
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ConfigError("config key '" + key + "': expected true or false, got '" + text + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(to_double(key, std::string(trim(item))));
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
}

std::string format(double v) {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out << std::setprecision(10) << v;
    return out.str();
}

template <typename Range>
std::string format_list(const Range& values) {
    std::string s;
    for (double v : values) s += (s.empty() ? "" : ",") + format(v);
    return s;
}

}  // namespace

ConfigFile ConfigFile::parse(std::string_view text) {
    ConfigFile file;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        const auto line = trim(text.substr(pos, end - pos));
        ++line_no;
        pos = end + 1;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || key.find('.') == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": key '" + std::string(key) +
                              "' must have the form section.key");
        }
        file.set(std::string(key), std::string(value));
    }
    return file;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void ConfigFile::set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys{
        "noise.sigma",          "noise.kind",
        "solver.lambda",        "solver.beta",
        "solver.mu1",           "solver.mu2",
        "solver.lambda_scale",  "solver.beta_scale",
        "solver.mu1_scale",     "solver.mu2_scale",
        "solver.inner_iters",   "solver.outer_iters",
        "solver.median_init",   "detect.sp_extremes_only",
        "detect.wmax",          "detect.acwmf_s",
        "detect.acwmf_offsets", "detect.delta_schedule",
        "local.rho0_factor",    "local.hqs_iters",
        "nonlocal.block_size",  "nonlocal.group_size",
        "nonlocal.window",      "nonlocal.step",
        "nonlocal.weights",
    };
    return keys;
}

SolverConfig make_solver_config(double sigma, NoiseKind kind, const ConfigFile& file) {
    const auto& known = known_config_keys();
    for (const auto& [key, value] : file.values()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    const auto get = [&](const std::string& key) -> const std::string* {
        const auto it = file.values().find(key);
        return it == file.values().end() ? nullptr : &it->second;
    };

    if (const auto* v = get("noise.sigma")) sigma = to_double("noise.sigma", *v);
    if (const auto* v = get("noise.kind")) {
        try {
            kind = parse_noise_kind(*v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");

    WeightScales scales;
    if (const auto* v = get("solver.lambda_scale")) scales.lambda = to_double("solver.lambda_scale", *v);
    if (const auto* v = get("solver.beta_scale")) scales.beta = to_double("solver.beta_scale", *v);
    if (const auto* v = get("solver.mu1_scale")) scales.mu1 = to_double("solver.mu1_scale", *v);
    if (const auto* v = get("solver.mu2_scale")) scales.mu2 = to_double("solver.mu2_scale", *v);
    SolverConfig cfg = SolverConfig::for_noise(sigma, kind, scales);

    if (const auto* v = get("solver.lambda")) cfg.lambda = to_double("solver.lambda", *v);
    if (const auto* v = get("solver.beta")) cfg.beta = to_double("solver.beta", *v);
    if (const auto* v = get("solver.mu1")) cfg.mu1 = to_double("solver.mu1", *v);
    if (const auto* v = get("solver.mu2")) cfg.mu2 = to_double("solver.mu2", *v);
    if (const auto* v = get("solver.inner_iters")) cfg.inner_iters = to_int("solver.inner_iters", *v);
    if (const auto* v = get("solver.outer_iters")) cfg.outer_iters = to_int("solver.outer_iters", *v);

    if (const auto* v = get("solver.median_init")) cfg.median_init = to_bool("solver.median_init", *v);
    if (const auto* v = get("detect.sp_extremes_only")) {
        cfg.sp_extremes_only = to_bool("detect.sp_extremes_only", *v);
    }
    if (const auto* v = get("detect.wmax")) cfg.amf_wmax = to_int("detect.wmax", *v);
    if (const auto* v = get("detect.acwmf_s")) cfg.acwmf.s = to_double("detect.acwmf_s", *v);
    if (const auto* v = get("detect.acwmf_offsets")) {
        const auto list = to_list("detect.acwmf_offsets", *v);
        if (list.size() != 4) throw ConfigError("detect.acwmf_offsets needs exactly 4 values");
        std::copy(list.begin(), list.end(), cfg.acwmf.offsets.begin());
    }
    if (const auto* v = get("detect.delta_schedule")) cfg.delta_schedule = to_list("detect.delta_schedule", *v);

    if (const auto* v = get("local.rho0_factor")) cfg.local.rho0_factor = to_double("local.rho0_factor", *v);
    if (const auto* v = get("local.hqs_iters")) cfg.local.hqs_iters = to_int("local.hqs_iters", *v);

    if (const auto* v = get("nonlocal.block_size")) cfg.nonlocal.block_size = to_int("nonlocal.block_size", *v);
    if (const auto* v = get("nonlocal.group_size")) cfg.nonlocal.group_size = to_int("nonlocal.group_size", *v);
    if (const auto* v = get("nonlocal.window")) cfg.nonlocal.window = to_int("nonlocal.window", *v);
    if (const auto* v = get("nonlocal.step")) cfg.nonlocal.step = to_int("nonlocal.step", *v);
    if (const auto* v = get("nonlocal.weights")) {
        try {
            cfg.nonlocal.weights = parse_aggregation_weights(*v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

std::string describe(const SolverConfig& cfg) {
    const double s2 = cfg.sigma * cfg.sigma;
    std::ostringstream out;
    out << "noise.sigma = " << format(cfg.sigma) << '\n'
        << "noise.kind = " << to_string(cfg.kind) << '\n'
        << "solver.lambda = " << format(cfg.lambda) << '\n'
        << "solver.beta = " << format(cfg.beta) << '\n'
        << "solver.mu1 = " << format(cfg.mu1) << '\n'
        << "solver.mu2 = " << format(cfg.mu2) << '\n'
        << "solver.lambda_scale = " << format(cfg.lambda / s2) << '\n'
        << "solver.beta_scale = " << format(cfg.beta / s2) << '\n'
        << "solver.mu1_scale = " << format(cfg.mu1 / s2) << '\n'
        << "solver.mu2_scale = " << format(cfg.mu2 / s2) << '\n'
        << "solver.inner_iters = " << cfg.inner_iters << '\n'
        << "solver.outer_iters = " << cfg.outer_iters << '\n'
        << "solver.median_init = " << (cfg.median_init ? "true" : "false") << '\n'
        << "detect.sp_extremes_only = " << (cfg.sp_extremes_only ? "true" : "false") << '\n'
        << "detect.wmax = " << cfg.amf_wmax << '\n'
        << "detect.acwmf_s = " << format(cfg.acwmf.s) << '\n'
        << "detect.acwmf_offsets = " << format_list(cfg.acwmf.offsets) << '\n'
        << "detect.delta_schedule = " << format_list(cfg.delta_schedule) << '\n'
        << "local.rho0_factor = " << format(cfg.local.rho0_factor) << '\n'
        << "local.hqs_iters = " << cfg.local.hqs_iters << '\n'
        << "nonlocal.block_size = " << cfg.nonlocal.block_size << '\n'
        << "nonlocal.group_size = " << cfg.nonlocal.group_size << '\n'
        << "nonlocal.window = " << cfg.nonlocal.window << '\n'
        << "nonlocal.step = " << cfg.nonlocal.step << '\n'
        << "nonlocal.weights = " << to_string(cfg.nonlocal.weights) << '\n';
    return out.str();
}

}  // namespace mixdenoise
