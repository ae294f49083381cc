#include "mixdenoise/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mixdenoise {

namespace {

constexpr std::uint64_t kGaussianStream = 0x6761757373ULL;  // "gauss"
constexpr std::uint64_t kImpulseStream = 0x696d70756c7365ULL;  // "impulse"

void check_rate(double rate) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
        throw std::invalid_argument("impulse rate must lie in [0, 1], got " + std::to_string(rate));
    }
}

}  // namespace

std::string_view to_string(NoiseKind kind) noexcept {
    return kind == NoiseKind::SaltPepper ? "sp" : "rv";
}

NoiseKind parse_noise_kind(std::string_view text) {
    if (text == "sp" || text == "salt-pepper" || text == "saltpepper") return NoiseKind::SaltPepper;
    if (text == "rv" || text == "random-valued" || text == "randomvalued") return NoiseKind::RandomValued;
    throw std::invalid_argument("unknown noise kind '" + std::string(text) + "' (expected sp or rv)");
}

void NoiseSpec::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("sigma must be finite and >= 0, got " + std::to_string(sigma));
    }
    check_rate(rate);
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 NoiseStream::row_engine(int row) const noexcept {
    const std::uint64_t base = seed_ ^ splitmix64(stream_id_);
    return std::mt19937_64(splitmix64(base + static_cast<std::uint64_t>(row)));
}

double uniform01(std::mt19937_64& engine) noexcept {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& engine) noexcept {
    const double u1 = 1.0 - uniform01(engine);  // (0, 1]
    const double u2 = uniform01(engine);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Image add_gaussian(const Image& x, double sigma, const NoiseStream& rng) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
    Image out = x;
    if (sigma == 0.0) return out;
    for (int r = 0; r < x.height(); ++r) {
        auto engine = rng.row_engine(r);
        for (int c = 0; c < x.width(); ++c) out(r, c) += sigma * standard_normal(engine);
    }
    return out;
}

ImpulseResult add_salt_pepper(const Image& y_tilde, double rate, const NoiseStream& rng) {
    check_rate(rate);
    ImpulseResult res{y_tilde, PixelMask(y_tilde.width(), y_tilde.height())};
    for (int r = 0; r < y_tilde.height(); ++r) {
        auto engine = rng.row_engine(r);
        for (int c = 0; c < y_tilde.width(); ++c) {
            const double u = uniform01(engine);
            if (u < rate / 2.0) {
                res.noisy(r, c) = kDMin;
                res.mask.set(r, c, true);
            } else if (u < rate) {
                res.noisy(r, c) = kDMax;
                res.mask.set(r, c, true);
            }
        }
    }
    return res;
}

ImpulseResult add_random_valued(const Image& y_tilde, double rate, const NoiseStream& rng) {
    check_rate(rate);
    ImpulseResult res{y_tilde, PixelMask(y_tilde.width(), y_tilde.height())};
    for (int r = 0; r < y_tilde.height(); ++r) {
        auto engine = rng.row_engine(r);
        for (int c = 0; c < y_tilde.width(); ++c) {
            // Two draws per pixel regardless of outcome keeps rows aligned.
            const double u = uniform01(engine);
            const double value = kDMin + (kDMax - kDMin) * uniform01(engine);
            if (u < rate) {
                res.noisy(r, c) = value;
                res.mask.set(r, c, true);
            }
        }
    }
    return res;
}

CorruptionRecord corrupt(const Image& x, const NoiseSpec& spec) {
    spec.validate();
    const Image y_tilde = clip(add_gaussian(x, spec.sigma, NoiseStream(spec.seed, kGaussianStream)));
    const NoiseStream impulses(spec.seed, kImpulseStream);
    auto res = spec.kind == NoiseKind::SaltPepper ? add_salt_pepper(y_tilde, spec.rate, impulses)
                                                  : add_random_valued(y_tilde, spec.rate, impulses);
    return CorruptionRecord{std::move(res.noisy), std::move(res.mask), spec};
}

}  // namespace mixdenoise
