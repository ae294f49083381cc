#include "mixdenoise/detect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixdenoise/parallel.hpp"

namespace mixdenoise {

int reflect_index(int i, int n) noexcept {
    if (n == 1) return 0;
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

namespace {

bool amf_pixel_suspect(const Image& img, double value, int row, int col, int w_max,
                       std::vector<double>& buf) {
    double median = value;
    for (int w = 3; w <= w_max; w += 2) {
        const int h = w / 2;
        buf.clear();
        for (int dr = -h; dr <= h; ++dr) {
            const int rr = reflect_index(row + dr, img.height());
            for (int dc = -h; dc <= h; ++dc) {
                buf.push_back(img(rr, reflect_index(col + dc, img.width())));
            }
        }
        const auto mid = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2);
        std::nth_element(buf.begin(), mid, buf.end());
        median = *mid;
        const double lo = *std::min_element(buf.begin(), mid + 1);
        const double hi = *std::max_element(mid, buf.end());
        if (lo < median && median < hi) return !(lo < value && value < hi);
    }
    return value != median;
}

double median_of(std::vector<double>& v) {
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

}  // namespace

PixelMask amf_detect(const Image& img, int w_max) { return amf_detect(img, img, w_max); }

PixelMask amf_detect(const Image& img, const Image& observed, int w_max) {
    require_same_shape(img, observed, "amf_detect");
    if (w_max < 3 || w_max % 2 == 0) {
        throw std::invalid_argument("amf w_max must be odd and >= 3, got " + std::to_string(w_max));
    }
    PixelMask mask(img.width(), img.height());
    parallel_for(img.height(), [&](int row) {
        std::vector<double> buf;
        buf.reserve(static_cast<std::size_t>(w_max) * static_cast<std::size_t>(w_max));
        for (int col = 0; col < img.width(); ++col) {
            if (amf_pixel_suspect(img, observed(row, col), row, col, w_max, buf)) mask.set(row, col, true);
        }
    });
    return mask;
}

PixelMask acwmf_detect(const Image& img, double delta_factor, const AcwmfParams& params) {
    return acwmf_detect(img, img, delta_factor, params);
}

PixelMask acwmf_detect(const Image& img, const Image& observed, double delta_factor,
                       const AcwmfParams& params) {
    require_same_shape(img, observed, "acwmf_detect");
    if (!(delta_factor >= 0.0)) throw std::invalid_argument("acwmf delta factor must be >= 0");
    PixelMask mask(img.width(), img.height());
    parallel_for(img.height(), [&](int row) {
        std::vector<double> window(9), weighted, dev(9);
        weighted.reserve(15);
        for (int col = 0; col < img.width(); ++col) {
            const double center = observed(row, col);
            std::vector<double> neighbours;
            neighbours.reserve(8);
            int n = 0;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    const double v = (dr == 0 && dc == 0)
                                         ? center
                                         : img(reflect_index(row + dr, img.height()),
                                               reflect_index(col + dc, img.width()));
                    window[static_cast<std::size_t>(n++)] = v;
                    if (dr != 0 || dc != 0) neighbours.push_back(v);
                }
            }
            std::vector<double> tmp = window;
            const double plain_median = median_of(tmp);
            for (std::size_t j = 0; j < 9; ++j) dev[j] = std::abs(window[j] - plain_median);
            const double mad = median_of(dev);

            bool suspect = false;
            for (int k = 0; k < 4 && !suspect; ++k) {
                weighted = neighbours;
                weighted.insert(weighted.end(), static_cast<std::size_t>(2 * k + 1), center);
                const double cwm = median_of(weighted);
                const double threshold =
                    params.s * mad + delta_factor * params.offsets[static_cast<std::size_t>(k)];
                suspect = std::abs(cwm - center) > threshold;
            }
            if (suspect) mask.set(row, col, true);
        }
    });
    return mask;
}

PixelMask extreme_values(const Image& img) {
    PixelMask mask(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) mask.set(i, img[i] == kDMin || img[i] == kDMax);
    return mask;
}

}  // namespace mixdenoise
