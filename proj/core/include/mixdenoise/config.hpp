#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mixdenoise/solver.hpp"

namespace mixdenoise {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat `section.key = value` settings. Blank lines and lines starting with
/// '#' are ignored; later assignments override earlier ones.
class ConfigFile {
public:
    static ConfigFile parse(std::string_view text);
    static ConfigFile load(const std::filesystem::path& path);

    void set(std::string key, std::string value);
    bool contains(const std::string& key) const { return values_.contains(key); }
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// Every key understood by make_solver_config.
const std::vector<std::string>& known_config_keys();

/// Defaults for (sigma, kind), then file overrides. `solver.*_scale` keys set
/// weights as multiples of sigma^2; `solver.lambda` etc. set them directly and
/// win over the scales. Unknown keys and malformed values throw ConfigError.
SolverConfig make_solver_config(double sigma, NoiseKind kind, const ConfigFile& file = {});

/// One `key = value` line per setting, in known_config_keys() order.
std::string describe(const SolverConfig& cfg);

}  // namespace mixdenoise
