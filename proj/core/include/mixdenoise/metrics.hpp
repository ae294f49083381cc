#pragma once

#include "mixdenoise/image.hpp"

namespace mixdenoise {

inline constexpr double kPsnrPeak = 255.0;

/// Mean squared difference over all pixels. Throws DimensionError on shape mismatch.
double mse(const Image& a, const Image& b);

/// 10*log10(255^2 / mse); +infinity when the images are identical.
double psnr(const Image& reference, const Image& test);

}  // namespace mixdenoise
