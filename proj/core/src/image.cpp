#include "mixdenoise/image.hpp"

#include <algorithm>
#include <cmath>

namespace mixdenoise {

Image::Image(int width, int height, double fill)
    : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw DimensionError("image dimensions must be positive, got " +
                             std::to_string(width) + "x" + std::to_string(height));
    }
    if (!std::isfinite(fill)) throw DimensionError("image fill value must be finite");
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Image::Image(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width < 1 || height < 1) {
        throw DimensionError("image dimensions must be positive, got " +
                             std::to_string(width) + "x" + std::to_string(height));
    }
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw DimensionError("image buffer holds " + std::to_string(data_.size()) +
                             " values, expected " + std::to_string(width) + "x" +
                             std::to_string(height));
    }
    check_finite();
}

void Image::check_finite() const {
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!std::isfinite(data_[i])) {
            throw DimensionError("non-finite intensity at index " + std::to_string(i));
        }
    }
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
    if (!a.same_shape(b)) {
        throw DimensionError(std::string(what) + ": dimension mismatch " +
                             std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                             " vs " + std::to_string(b.width()) + "x" +
                             std::to_string(b.height()));
    }
}

Image clip(const Image& img) {
    Image out = img;
    for (double& v : out.pixels()) v = std::clamp(v, kDMin, kDMax);
    return out;
}

}  // namespace mixdenoise
