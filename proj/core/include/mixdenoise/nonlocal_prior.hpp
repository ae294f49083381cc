#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mixdenoise/image.hpp"
#include "mixdenoise/transform.hpp"

namespace mixdenoise {

enum class AggregationWeights { Uniform, InverseSparsity };

AggregationWeights parse_aggregation_weights(std::string_view text);
std::string_view to_string(AggregationWeights w) noexcept;

struct NonlocalConfig {
    int block_size = 8;   ///< B_s, block side in pixels
    int group_size = 16;  ///< C, blocks per group
    int window = 39;      ///< L, search window side in pixels
    int step = 4;         ///< reference-block stride
    AggregationWeights weights = AggregationWeights::Uniform;

    /// Throws std::invalid_argument for inconsistent parameters or an image
    /// too small to host a full search window's worth of candidates.
    void validate(int image_width, int image_height) const;
};

struct Position {
    int row = 0;
    int col = 0;
    auto operator<=>(const Position&) const = default;
};

/// Reference block rows (or columns) along one axis: 0, step, 2*step, ...
/// plus extent - block_size so the last block touches the border.
std::vector<int> reference_grid(int extent, int block_size, int step);
std::vector<Position> reference_positions(int width, int height, const NonlocalConfig& cfg);

/// Squared Euclidean distance between two blocks.
double block_distance(const Image& img, Position a, Position b, int block_size) noexcept;

/// The group_size best matches to the reference block inside the L x L window
/// centred on it (clipped to the image). The reference always comes first;
/// the rest are ordered by distance, ties by raster order of position.
std::vector<Position> match_blocks(const Image& img, Position ref, const NonlocalConfig& cfg);

struct BlockGroup {
    Position ref_pos;
    std::vector<Position> members;
    std::vector<double> stack;  ///< block_size^2 * group_size, GroupTransform layout
};

BlockGroup make_group(const Image& img, Position ref, const NonlocalConfig& cfg);

struct GroupSpectrum {
    int block_size = 0;
    int group_size = 0;
    struct Entry {
        Position ref_pos;
        std::vector<Position> members;
        std::vector<double> coeffs;
    };
    std::vector<Entry> groups;

    /// K = block_size^2 * group_size * n.
    std::size_t total_length() const noexcept;
    /// Number of coefficients with magnitude above kNonzeroEpsilon.
    std::size_t count_nonzero() const noexcept;
};

inline constexpr double kNonzeroEpsilon = 1e-12;

/// Transform coefficients of every reference group of img (matched on img).
GroupSpectrum compute_spectrum(const Image& img, const NonlocalConfig& cfg);

/// Nonlocal l0 measure: nonzero 3D-transform coefficients over all groups.
std::size_t phi_nc(const Image& img, const NonlocalConfig& cfg);

/// hard(theta, a): zero when |theta| < a, otherwise theta unchanged.
inline double hard_threshold(double theta, double a) noexcept {
    return (theta < 0.0 ? -theta : theta) < a ? 0.0 : theta;
}
void hard_threshold(std::span<double> coeffs, double a) noexcept;

/// sqrt(2*tau) with tau = K*beta / (2*N*mu2).
double w_threshold(int width, int height, double beta, double mu2, const NonlocalConfig& cfg);

/// Group r on its own content, hard-threshold every group spectrum at
/// `threshold`, invert and average the overlapping block estimates.
Image collaborative_hard_threshold(const Image& r, double threshold, const NonlocalConfig& cfg);

/// Minimizer of the w sub-problem: collaborative_hard_threshold at w_threshold.
Image solve_w(const Image& r, double beta, double mu2, const NonlocalConfig& cfg);

}  // namespace mixdenoise
