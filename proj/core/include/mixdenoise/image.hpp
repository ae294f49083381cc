#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixdenoise {

/// Dynamic range of 8-bit grayscale images.
inline constexpr double kDMin = 0.0;
inline constexpr double kDMax = 255.0;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Grayscale image stored row-major as double-precision intensities.
///
/// Values are kept unquantized; rounding to bytes only happens when an image is
/// written to disk. Every constructor enforces width, height >= 1 and a data
/// buffer of exactly width*height finite values.
class Image {
public:
    Image(int width, int height, double fill = 0.0);
    Image(int width, int height, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(int row, int col) noexcept { return data_[index(row, col)]; }
    double operator()(int row, int col) const noexcept { return data_[index(row, col)]; }
    double& operator[](std::size_t i) noexcept { return data_[i]; }
    double operator[](std::size_t i) const noexcept { return data_[i]; }

    std::span<double> pixels() noexcept { return data_; }
    std::span<const double> pixels() const noexcept { return data_; }
    const std::vector<double>& data() const noexcept { return data_; }

    bool same_shape(const Image& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    /// Throws DimensionError if any value is NaN or infinite.
    void check_finite() const;

    bool operator==(const Image&) const = default;

private:
    std::size_t index(int row, int col) const noexcept {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_;
    int height_;
    std::vector<double> data_;
};

void require_same_shape(const Image& a, const Image& b, const char* what);

/// Clamp every value into [kDMin, kDMax].
Image clip(const Image& img);

}  // namespace mixdenoise
