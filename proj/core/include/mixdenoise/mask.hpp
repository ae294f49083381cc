#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mixdenoise/image.hpp"

namespace mixdenoise {

/// Partition of the pixel grid into impulse suspects (N) and reliable pixels (B).
class PixelMask {
public:
    PixelMask(int width, int height, bool suspect = false);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return suspect_.size(); }

    bool suspect(int row, int col) const noexcept { return suspect_[index(row, col)] != 0; }
    bool suspect(std::size_t i) const noexcept { return suspect_[i] != 0; }
    bool reliable(std::size_t i) const noexcept { return suspect_[i] == 0; }
    void set(int row, int col, bool value) noexcept { suspect_[index(row, col)] = value ? 1 : 0; }
    void set(std::size_t i, bool value) noexcept { suspect_[i] = value ? 1 : 0; }

    std::size_t suspect_count() const noexcept;
    /// M = |B|.
    std::size_t reliable_count() const noexcept { return size() - suspect_count(); }

    /// True if every suspect pixel of this mask is also suspect in `other`.
    bool subset_of(const PixelMask& other) const;

    /// 0 = reliable, 255 = suspect.
    Image to_image() const;
    /// Pixels >= 128 become suspect.
    static PixelMask from_image(const Image& img);

    bool operator==(const PixelMask&) const = default;

private:
    std::size_t index(int row, int col) const noexcept {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> suspect_;
};

/// Element-wise OR of two candidate sets.
PixelMask progressive_union(const PixelMask& prev, const PixelMask& fresh);

/// The M x N row-selection matrix built from a mask, applied matrix-free.
///
/// apply() is B*y (reliable values in raster order), embed() is B^T*v. Since
/// B*B^T = I_M, embed(apply(.)) is the idempotent 0/1 projector onto B.
class MaskOperator {
public:
    explicit MaskOperator(PixelMask mask);

    const PixelMask& mask() const noexcept { return mask_; }
    std::size_t rows() const noexcept { return reliable_.size(); }

    std::vector<double> apply(const Image& img) const;
    Image embed(std::span<const double> v) const;
    /// embed(apply(img)) without the intermediate vector.
    Image project(const Image& img) const;

private:
    PixelMask mask_;
    std::vector<std::size_t> reliable_;
};

}  // namespace mixdenoise
