#include "mixdenoise/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mixdenoise {

SolverConfig SolverConfig::for_noise(double sigma, NoiseKind kind, const WeightScales& scales) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
    SolverConfig cfg;
    cfg.sigma = sigma;
    cfg.kind = kind;
    const double s2 = sigma * sigma;
    cfg.lambda = scales.lambda * s2;
    cfg.beta = scales.beta * s2;
    cfg.mu1 = scales.mu1 * s2;
    cfg.mu2 = scales.mu2 * s2;
    return cfg;
}

void SolverConfig::validate() const {
    if (!(sigma > 0.0)) throw std::invalid_argument("solver sigma must be > 0");
    if (!(lambda > 0.0) || !(beta > 0.0) || !(mu1 > 0.0) || !(mu2 > 0.0)) {
        throw std::invalid_argument("solver weights lambda, beta, mu1, mu2 must be > 0");
    }
    if (inner_iters < 1 || outer_iters < 1) {
        throw std::invalid_argument("solver inner_iters and outer_iters must be >= 1");
    }
    if (amf_wmax < 3 || amf_wmax % 2 == 0) throw std::invalid_argument("detect.wmax must be odd and >= 3");
    if (delta_schedule.empty()) throw std::invalid_argument("detect.delta_schedule must not be empty");
    for (double d : delta_schedule) {
        if (!(d >= 0.0)) throw std::invalid_argument("detect.delta_schedule entries must be >= 0");
    }
    if (local.hqs_iters < 1 || !(local.rho0_factor > 0.0)) {
        throw std::invalid_argument("local.hqs_iters must be >= 1 and local.rho0_factor > 0");
    }
}

double SolverConfig::delta_factor(int outer) const {
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(std::max(outer, 0)),
                                         delta_schedule.size() - 1);
    return delta_schedule[i];
}

SolverState SolverState::initial(const Image& y) {
    const Image zero(y.width(), y.height());
    return SolverState{y, y, y, zero, zero, 0, 0};
}

Image solve_x(const Image& u, const Image& w, const Image& b, const Image& c, const Image& y,
              const PixelMask& mask, double mu1, double mu2) {
    for (const Image* img : {&w, &b, &c, &y}) require_same_shape(u, *img, "solve_x");
    if (mask.width() != u.width() || mask.height() != u.height()) {
        throw DimensionError("solve_x: mask dimension mismatch");
    }
    const double mu = mu1 + mu2;
    if (!(mu > 0.0)) throw std::invalid_argument("solve_x requires mu1 + mu2 > 0");
    Image x(u.width(), u.height());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double prior = mu1 * (b[i] + u[i]) + mu2 * (c[i] + w[i]);
        x[i] = mask.suspect(i) ? prior / mu : (y[i] + prior) / (1.0 + mu);
    }
    return x;
}

Image solve_x_operator(const Image& u, const Image& w, const Image& b, const Image& c,
                       const Image& y, const MaskOperator& op, double mu1, double mu2) {
    const double mu = mu1 + mu2;
    Image s = op.embed(op.apply(y));
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += mu1 * (b[i] + u[i]) + mu2 * (c[i] + w[i]);
    const Image ps = op.project(s);
    Image x(s.width(), s.height());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (s[i] - ps[i] / (1.0 + mu)) / mu;
    return x;
}

void bregman_update(SolverState& state) {
    for (std::size_t i = 0; i < state.x.size(); ++i) {
        state.b[i] -= state.x[i] - state.u[i];
        state.c[i] -= state.x[i] - state.w[i];
    }
}

namespace {

double masked_fidelity(const Image& x, const Image& y, const PixelMask& mask) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (mask.reliable(i)) {
            const double d = x[i] - y[i];
            sum += d * d;
        }
    }
    return sum;
}

double rms_difference(const Image& a, const Image& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(sum / static_cast<double>(a.size()));
}

}  // namespace

double objective(const Image& x, const Image& y, const PixelMask& mask, const SolverConfig& cfg) {
    require_same_shape(x, y, "objective");
    return masked_fidelity(x, y, mask) + cfg.lambda * hyper_energy(x) +
           cfg.beta * static_cast<double>(phi_nc(x, cfg.nonlocal));
}

void inner_loop(SolverState& state, const Image& y, const PixelMask& mask, const SolverConfig& cfg,
                const TraceSink& trace) {
    const std::size_t suspects = trace ? mask.suspect_count() : 0;
    for (int j = 0; j < cfg.inner_iters; ++j) {
        state.x = solve_x(state.u, state.w, state.b, state.c, y, mask, cfg.mu1, cfg.mu2);

        Image target = state.x;
        for (std::size_t i = 0; i < target.size(); ++i) target[i] -= state.b[i];
        state.u = solve_u(target, cfg.lambda, cfg.mu1, cfg.local);

        Image residual = state.x;
        for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= state.c[i];
        state.w = solve_w(residual, cfg.beta, cfg.mu2, cfg.nonlocal);

        bregman_update(state);
        state.inner_iter = j + 1;

        if (trace) {
            TraceRecord rec;
            rec.outer = state.outer_iter;
            rec.inner = j;
            rec.suspects = suspects;
            rec.fidelity = masked_fidelity(state.x, y, mask);
            rec.objective = objective(state.x, y, mask, cfg);
            rec.residual_u = rms_difference(state.x, state.u);
            rec.residual_w = rms_difference(state.x, state.w);
            trace(rec);
        }
    }
}

PixelMask detect_impulses(const Image& estimate, const Image& y, const SolverConfig& cfg, int outer) {
    const Image view = clip(estimate);
    if (cfg.kind == NoiseKind::SaltPepper) {
        PixelMask mask = amf_detect(view, y, cfg.amf_wmax);
        if (cfg.sp_extremes_only) {
            const PixelMask extremes = extreme_values(y);
            for (std::size_t i = 0; i < mask.size(); ++i) mask.set(i, mask.suspect(i) && extremes.suspect(i));
        }
        return mask;
    }
    return acwmf_detect(view, y, cfg.delta_factor(outer), cfg.acwmf);
}

Image median_fill(const Image& img, const PixelMask& mask) {
    if (mask.width() != img.width() || mask.height() != img.height()) {
        throw DimensionError("median_fill: mask and image shapes differ");
    }
    if (mask.reliable_count() == 0) return img;
    Image out = img;
    std::vector<double> buf;
    const int w = img.width(), h = img.height();
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!mask.suspect(r, c)) continue;
            for (int k = 1;; ++k) {
                buf.clear();
                for (int rr = std::max(0, r - k); rr <= std::min(h - 1, r + k); ++rr) {
                    for (int cc = std::max(0, c - k); cc <= std::min(w - 1, c + k); ++cc) {
                        if (!mask.suspect(rr, cc)) buf.push_back(img(rr, cc));
                    }
                }
                if (buf.empty()) continue;
                // lower median for even counts
                const auto mid = buf.begin() + static_cast<std::ptrdiff_t>((buf.size() - 1) / 2);
                std::nth_element(buf.begin(), mid, buf.end());
                out(r, c) = *mid;
                break;
            }
        }
    }
    return out;
}

DenoiseResult denoise_detailed(const Image& y, const SolverConfig& cfg, const TraceSink& trace) {
    cfg.validate();
    cfg.nonlocal.validate(y.width(), y.height());
    y.check_finite();

    SolverState state = SolverState::initial(y);
    PixelMask candidates(y.width(), y.height());
    DenoiseResult result{y, {}};
    for (int i = 0; i < cfg.outer_iters; ++i) {
        state.outer_iter = i;
        candidates = progressive_union(candidates, detect_impulses(state.x, y, cfg, i));
        result.candidates.push_back(candidates);
        if (i == 0 && cfg.median_init) {
            state.x = median_fill(state.x, candidates);
            state.u = state.x;
            state.w = state.x;
        }
        inner_loop(state, y, candidates, cfg, trace);
    }
    result.image = clip(state.x);
    return result;
}

Image denoise(const Image& y, const SolverConfig& cfg) { return denoise_detailed(y, cfg).image; }

}  // namespace mixdenoise
