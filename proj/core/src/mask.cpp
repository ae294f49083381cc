#include "mixdenoise/mask.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace mixdenoise {

namespace {

void require_same_mask_shape(const PixelMask& a, const PixelMask& b, const char* what) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw DimensionError(std::string(what) + ": mask dimension mismatch");
    }
}

}  // namespace

PixelMask::PixelMask(int width, int height, bool suspect) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw DimensionError("mask dimensions must be positive");
    suspect_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                    suspect ? 1 : 0);
}

std::size_t PixelMask::suspect_count() const noexcept {
    return static_cast<std::size_t>(std::count(suspect_.begin(), suspect_.end(), std::uint8_t{1}));
}

bool PixelMask::subset_of(const PixelMask& other) const {
    require_same_mask_shape(*this, other, "subset_of");
    for (std::size_t i = 0; i < size(); ++i) {
        if (suspect_[i] && !other.suspect_[i]) return false;
    }
    return true;
}

Image PixelMask::to_image() const {
    Image img(width_, height_);
    for (std::size_t i = 0; i < size(); ++i) img[i] = suspect_[i] ? 255.0 : 0.0;
    return img;
}

PixelMask PixelMask::from_image(const Image& img) {
    PixelMask m(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) m.set(i, img[i] >= 128.0);
    return m;
}

PixelMask progressive_union(const PixelMask& prev, const PixelMask& fresh) {
    require_same_mask_shape(prev, fresh, "progressive_union");
    PixelMask out = prev;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (fresh.suspect(i)) out.set(i, true);
    }
    return out;
}

MaskOperator::MaskOperator(PixelMask mask) : mask_(std::move(mask)) {
    reliable_.reserve(mask_.size());
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        if (mask_.reliable(i)) reliable_.push_back(i);
    }
}

std::vector<double> MaskOperator::apply(const Image& img) const {
    if (img.width() != mask_.width() || img.height() != mask_.height()) {
        throw DimensionError("mask apply: image/mask dimension mismatch");
    }
    std::vector<double> v(reliable_.size());
    for (std::size_t k = 0; k < reliable_.size(); ++k) v[k] = img[reliable_[k]];
    return v;
}

Image MaskOperator::embed(std::span<const double> v) const {
    if (v.size() != reliable_.size()) {
        throw DimensionError("mask embed: vector length " + std::to_string(v.size()) +
                             " != reliable count " + std::to_string(reliable_.size()));
    }
    Image img(mask_.width(), mask_.height());
    for (std::size_t k = 0; k < reliable_.size(); ++k) img[reliable_[k]] = v[k];
    return img;
}

Image MaskOperator::project(const Image& img) const {
    if (img.width() != mask_.width() || img.height() != mask_.height()) {
        throw DimensionError("mask project: image/mask dimension mismatch");
    }
    Image out(img.width(), img.height());
    for (std::size_t i : reliable_) out[i] = img[i];
    return out;
}

}  // namespace mixdenoise
