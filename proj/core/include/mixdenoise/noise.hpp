#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "mixdenoise/image.hpp"
#include "mixdenoise/mask.hpp"

namespace mixdenoise {

enum class NoiseKind { SaltPepper, RandomValued };

std::string_view to_string(NoiseKind kind) noexcept;
/// Accepts "sp"/"salt-pepper" and "rv"/"random-valued".
NoiseKind parse_noise_kind(std::string_view text);

struct NoiseSpec {
    double sigma = 0.0;  ///< Gaussian standard deviation, intensity units
    double rate = 0.0;   ///< impulse corruption probability in [0, 1]
    NoiseKind kind = NoiseKind::SaltPepper;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless sigma >= 0 and 0 <= rate <= 1.
    void validate() const;
};

struct CorruptionRecord {
    Image noisy;
    PixelMask truth_mask;  ///< pixels hit by the impulse step
    NoiseSpec spec;
};

/// Deterministic random source split into independent per-row substreams.
///
/// Row r of stream s draws from mt19937_64 seeded with
/// splitmix64(seed ^ splitmix64(s) + r), so results never depend on how rows
/// are scheduled across threads.
class NoiseStream {
public:
    NoiseStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : seed_(seed), stream_id_(stream_id) {}

    std::mt19937_64 row_engine(int row) const noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
};

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
double uniform01(std::mt19937_64& engine) noexcept;
/// Standard normal via Box-Muller (cosine branch, one normal per two uniforms).
double standard_normal(std::mt19937_64& engine) noexcept;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// y~ = x + n with n ~ N(0, sigma^2) i.i.d. Not clipped.
Image add_gaussian(const Image& x, double sigma, const NoiseStream& rng);

struct ImpulseResult {
    Image noisy;
    PixelMask mask;
};

/// Each pixel independently becomes 0 w.p. rate/2, 255 w.p. rate/2.
ImpulseResult add_salt_pepper(const Image& y_tilde, double rate, const NoiseStream& rng);

/// Each pixel independently is replaced w.p. rate by a uniform draw on [0, 255].
/// A replacement that happens to equal the old value is still marked.
ImpulseResult add_random_valued(const Image& y_tilde, double rate, const NoiseStream& rng);

/// Gaussian step, clip to [0, 255], then the impulse step of spec.kind.
CorruptionRecord corrupt(const Image& x, const NoiseSpec& spec);

}  // namespace mixdenoise
