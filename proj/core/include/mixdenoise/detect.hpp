#pragma once

#include <array>

#include "mixdenoise/image.hpp"
#include "mixdenoise/mask.hpp"

namespace mixdenoise {

/// Adaptive median filter detector for salt-and-pepper impulses.
///
/// Each pixel grows an odd window 3x3, 5x5, ... up to w_max x w_max until the
/// window median lies strictly between the window min and max. The pixel is
/// then reliable iff it lies strictly inside (min, max). If no window yields an
/// interior median the filter falls back to the terminal median and the pixel
/// is suspect iff it differs from it; locally constant regions are therefore
/// reliable. Windows use half-sample symmetric reflection at the borders.
PixelMask amf_detect(const Image& img, int w_max);

/// amf_detect with window statistics taken from `neighbourhood` and the tested
/// value taken from `observed` (same shape). Used to judge observed pixels
/// against a restored estimate; amf_detect(img) == amf_detect(img, img).
PixelMask amf_detect(const Image& neighbourhood, const Image& observed, int w_max);

struct AcwmfParams {
    double s = 0.6;                                  ///< MAD multiplier
    std::array<double, 4> offsets{40.0, 25.0, 10.0, 5.0};  ///< delta_k for weights 1,3,5,7
};

/// Adaptive center-weighted median detector for random-valued impulses.
///
/// In the 3x3 window, CWM_k is the median of the 8 neighbours plus the center
/// counted 2k+1 times (k = 0..3). With d_k = |CWM_k - y| and
/// T_k = s * MAD + delta_factor * offsets[k], where MAD is the median of the
/// window's absolute deviations from its plain median, a pixel is suspect iff
/// d_k > T_k for some k.
PixelMask acwmf_detect(const Image& img, double delta_factor, const AcwmfParams& params = {});

/// acwmf_detect with the 8 neighbours read from `neighbourhood` and the center
/// value from `observed`.
PixelMask acwmf_detect(const Image& neighbourhood, const Image& observed, double delta_factor,
                       const AcwmfParams& params = {});

/// Pixels whose value equals kDMin or kDMax.
PixelMask extreme_values(const Image& img);

/// Half-sample symmetric reflection of an index into [0, n).
int reflect_index(int i, int n) noexcept;

}  // namespace mixdenoise
