#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "mixdenoise/image.hpp"
#include "mixdenoise/mask.hpp"
#include "mixdenoise/pgm.hpp"

namespace testsupport {

inline mixdenoise::Image random_image(int w, int h, std::uint64_t seed, double lo = 0.0, double hi = 255.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    mixdenoise::Image img(w, h);
    for (auto& v : img.pixels()) v = dist(rng);
    return img;
}

inline mixdenoise::Image random_integer_image(int w, int h, std::uint64_t seed, int lo = 0, int hi = 255) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(lo, hi);
    mixdenoise::Image img(w, h);
    for (auto& v : img.pixels()) v = dist(rng);
    return img;
}

inline mixdenoise::PixelMask random_mask(int w, int h, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    mixdenoise::PixelMask m(w, h);
    for (std::size_t i = 0; i < m.size(); ++i) m.set(i, coin(rng));
    return m;
}

// Smooth gradient-plus-ripple scene strictly inside (0, 255).
inline mixdenoise::Image smooth_scene(int w, int h) {
    mixdenoise::Image img(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            img(r, c) = 128.0 + 60.0 * std::sin(0.11 * c) * std::cos(0.07 * r) + 0.2 * (r - c);
        }
    }
    return img;
}

inline double max_abs_diff(const mixdenoise::Image& a, const mixdenoise::Image& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline std::filesystem::path data_dir() { return MIXDENOISE_TEST_DATA_DIR; }

inline bool have_image(const std::string& name) { return std::filesystem::exists(data_dir() / name); }

inline mixdenoise::Image load_data_image(const std::string& name) {
    return mixdenoise::load_pgm(data_dir() / name);
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("mixdenoise_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testsupport
