#pragma once

#include <span>
#include <vector>

namespace mixdenoise {

/// n x n orthonormal DCT-II matrix, row-major (row k is basis function k).
std::vector<double> dct_matrix(int n);

/// n x n orthonormal multilevel Haar matrix, n a power of two. Row 0 is the
/// constant vector; the transform recurses on the averages.
std::vector<double> haar_matrix(int n);

bool is_power_of_two(int n) noexcept;

/// Separable orthonormal transform of a block_size x block_size x group_size
/// stack: a 2D DCT-II on every slice, then a 1D transform along the group axis
/// (Haar when group_size is a power of two, DCT-II otherwise).
///
/// Stacks and coefficient arrays share the layout
/// index = member * block_size^2 + row * block_size + col.
class GroupTransform {
public:
    GroupTransform(int block_size, int group_size);

    int block_size() const noexcept { return bs_; }
    int group_size() const noexcept { return gs_; }
    std::size_t length() const noexcept {
        return static_cast<std::size_t>(bs_ * bs_) * static_cast<std::size_t>(gs_);
    }

    /// In-place forward transform; data.size() must equal length().
    void forward(std::span<double> data) const;
    void inverse(std::span<double> data) const;

    std::vector<double> forward_copy(std::span<const double> stack) const;
    std::vector<double> inverse_copy(std::span<const double> coeffs) const;

    const std::vector<double>& spatial_basis() const noexcept { return dct_; }
    const std::vector<double>& group_basis() const noexcept { return group_; }

private:
    void check(std::span<const double> data) const;
    void apply(std::span<double> data, bool transpose) const;

    int bs_;
    int gs_;
    std::vector<double> dct_;
    std::vector<double> group_;
};

}  // namespace mixdenoise
