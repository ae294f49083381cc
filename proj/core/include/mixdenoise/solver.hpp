#pragma once

#include <functional>
#include <vector>

#include "mixdenoise/detect.hpp"
#include "mixdenoise/image.hpp"
#include "mixdenoise/local_prior.hpp"
#include "mixdenoise/mask.hpp"
#include "mixdenoise/noise.hpp"
#include "mixdenoise/nonlocal_prior.hpp"

namespace mixdenoise {

/// Multipliers of sigma^2 used to derive the model weights from the noise level.
struct WeightScales {
    double lambda = 0.15;
    double beta = 0.05;
    double mu1 = 0.025;
    double mu2 = 0.025;
};

struct SolverConfig {
    double sigma = 10.0;  ///< assumed Gaussian standard deviation
    NoiseKind kind = NoiseKind::SaltPepper;

    double lambda = 15.0;  ///< hyper-Laplacian prior weight
    double beta = 5.0;     ///< nonlocal l0 prior weight
    double mu1 = 2.5;      ///< penalty tying x to u
    double mu2 = 2.5;      ///< penalty tying x to w

    int inner_iters = 8;  ///< Split-Bregman passes per outer iteration
    int outer_iters = 4;  ///< progressive detection rounds

    int amf_wmax = 39;
    /// Salt-and-pepper: keep only candidates whose observed value is 0 or 255.
    bool sp_extremes_only = true;
    /// Replace suspect pixels of the initial x, u, w by reliable-neighbour medians.
    bool median_init = true;
    AcwmfParams acwmf{};
    /// ACWMF threshold factor per outer iteration; the last entry repeats.
    std::vector<double> delta_schedule{1.0, 0.95, 0.9, 0.85};

    LocalConfig local{};
    NonlocalConfig nonlocal{};

    /// Defaults for a noise level: every weight is scale * sigma^2.
    static SolverConfig for_noise(double sigma, NoiseKind kind, const WeightScales& scales = {});

    /// Throws std::invalid_argument on non-positive weights or counts.
    void validate() const;

    double delta_factor(int outer) const;
};

/// Split-Bregman iterates. Initially x = u = w = y and b = c = 0.
struct SolverState {
    Image x, u, w, b, c;
    int inner_iter = 0;
    int outer_iter = 0;

    static SolverState initial(const Image& y);
};

/// Exact minimizer of ||Bx - y_B||^2 + mu1||x - u - b||^2 + mu2||x - w - c||^2:
/// x = (y + mu1(b+u) + mu2(c+w)) / (1+mu) on reliable pixels and
/// x = (mu1(b+u) + mu2(c+w)) / mu on suspect pixels, mu = mu1 + mu2.
Image solve_x(const Image& u, const Image& w, const Image& b, const Image& c, const Image& y,
              const PixelMask& mask, double mu1, double mu2);

/// Same minimizer written as (1/mu)(s - P s / (1+mu)) with s = P y + mu1(b+u) + mu2(c+w)
/// and P the reliable-pixel projector of `op`.
Image solve_x_operator(const Image& u, const Image& w, const Image& b, const Image& c,
                       const Image& y, const MaskOperator& op, double mu1, double mu2);

/// Copy of `img` where each suspect pixel holds the median of the reliable pixels
/// in the smallest centered (2k+1)^2 window containing one. Unchanged if nothing
/// is reliable.
Image median_fill(const Image& img, const PixelMask& mask);

/// b -= x - u; c -= x - w.
void bregman_update(SolverState& state);

/// ||Bx - y_B||^2 + lambda*hyper_energy(x) + beta*phi_nc(x).
double objective(const Image& x, const Image& y, const PixelMask& mask, const SolverConfig& cfg);

struct TraceRecord {
    int outer = 0;
    int inner = 0;
    std::size_t suspects = 0;
    double objective = 0.0;      ///< full model energy at x
    double fidelity = 0.0;       ///< ||Bx - y_B||^2
    double residual_u = 0.0;     ///< RMS of x - u
    double residual_w = 0.0;     ///< RMS of x - w
};

using TraceSink = std::function<void(const TraceRecord&)>;

/// cfg.inner_iters passes of solve_x, solve_u(x - b), solve_w(x - c), bregman_update.
/// When `trace` is set, one record is emitted after each pass.
void inner_loop(SolverState& state, const Image& y, const PixelMask& mask, const SolverConfig& cfg,
                const TraceSink& trace = {});

struct DenoiseResult {
    Image image;                       ///< final estimate clipped to [0, 255]
    std::vector<PixelMask> candidates;  ///< suspect set used in each outer iteration
};

/// Progressive-detection outer loop around inner_loop.
DenoiseResult denoise_detailed(const Image& y, const SolverConfig& cfg, const TraceSink& trace = {});
Image denoise(const Image& y, const SolverConfig& cfg);

/// Candidate set for one outer iteration. Detector windows are read from
/// clip(estimate), the tested value from the observation y. Salt-and-pepper uses
/// AMF (optionally restricted to extreme observed values), random-valued uses
/// ACWMF with the scheduled threshold factor.
PixelMask detect_impulses(const Image& estimate, const Image& y, const SolverConfig& cfg, int outer);

}  // namespace mixdenoise
