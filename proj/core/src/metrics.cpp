#include "mixdenoise/metrics.hpp"

#include <cmath>
#include <limits>

namespace mixdenoise {

double mse(const Image& a, const Image& b) {
    require_same_shape(a, b, "mse");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum / static_cast<double>(a.size());
}

double psnr(const Image& reference, const Image& test) {
    const double err = mse(reference, test);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kPsnrPeak * kPsnrPeak / err);
}

}  // namespace mixdenoise
