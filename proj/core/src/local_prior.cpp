#include "mixdenoise/local_prior.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mixdenoise {

GradientField grad(const Image& img) {
    const int w = img.width(), h = img.height();
    GradientField f{Image(w, h), Image(w, h)};
    for (int r = 0; r < h; ++r) {
        const int rn = r + 1 == h ? 0 : r + 1;
        for (int c = 0; c < w; ++c) {
            const int cn = c + 1 == w ? 0 : c + 1;
            f.gx(r, c) = img(r, cn) - img(r, c);
            f.gy(r, c) = img(rn, c) - img(r, c);
        }
    }
    return f;
}

Image div(const GradientField& f) {
    require_same_shape(f.gx, f.gy, "div");
    const int w = f.gx.width(), h = f.gx.height();
    Image out(w, h);
    for (int r = 0; r < h; ++r) {
        const int rp = r == 0 ? h - 1 : r - 1;
        for (int c = 0; c < w; ++c) {
            const int cp = c == 0 ? w - 1 : c - 1;
            out(r, c) = (f.gx(r, c) - f.gx(r, cp)) + (f.gy(r, c) - f.gy(rp, c));
        }
    }
    return out;
}

double hyper_energy(const Image& img) {
    const auto g = grad(img);
    double sum = 0.0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        sum += std::cbrt(g.gx[i] * g.gx[i]) + std::cbrt(g.gy[i] * g.gy[i]);
    }
    return sum;
}

double shrink23(double v, double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("shrink23 requires kappa > 0");
    const double a = std::abs(v);
    if (a == 0.0) return 0.0;
    const double c = 1.0 / (3.0 * kappa);

    // h(t) = t^4 - a t + c is convex on t > 0 with its minimum at t* = (a/4)^(1/3).
    const double t_star = std::cbrt(a / 4.0);
    const auto h = [&](double t) { return ((t * t) * (t * t)) - a * t + c; };
    if (h(t_star) > 0.0) return 0.0;

    // h(a^(1/3)) = c > 0, so the larger root lies in [t*, a^(1/3)]. Newton from
    // the right converges monotonically for a convex function; bisection guards
    // against rounding at the bracket ends.
    double lo = t_star, hi = std::cbrt(a);
    double t = hi;
    for (int it = 0; it < 100; ++it) {
        const double ht = h(t);
        if (ht > 0.0) hi = t; else lo = t;
        const double dh = 4.0 * t * t * t - a;
        double next = dh > 0.0 ? t - ht / dh : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 1e-15 * std::max(1.0, t)) {
            t = next;
            break;
        }
        t = next;
    }
    const double g = t * t * t;
    const auto f = [&](double x) { return kappa * (x - a) * (x - a) + std::cbrt(x * x); };
    const double mag = f(g) < f(0.0) ? g : 0.0;
    return v < 0.0 ? -mag : mag;
}

double u_objective(const Image& u, const Image& target, double lambda, double mu1) {
    require_same_shape(u, target, "u_objective");
    double fit = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - target[i];
        fit += d * d;
    }
    return mu1 * fit + lambda * hyper_energy(u);
}

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwDeleter {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

}  // namespace

Image quadratic_u_step(const Image& target, const GradientField& g, double mu1, double rho) {
    require_same_shape(target, g.gx, "quadratic_u_step");
    require_same_shape(target, g.gy, "quadratic_u_step");
    if (!(mu1 > 0.0) || !(rho >= 0.0)) {
        throw std::invalid_argument("quadratic_u_step requires mu1 > 0 and rho >= 0");
    }
    const int w = target.width(), h = target.height();
    const int wc = w / 2 + 1;
    const std::size_t n_real = target.size();
    const std::size_t n_cplx = static_cast<std::size_t>(h) * static_cast<std::size_t>(wc);

    // rhs = mu1*target + rho*grad^T(g) = mu1*target - rho*div(g)
    const Image dg = div(g);
    std::unique_ptr<double, FftwDeleter> real(fftw_alloc_real(n_real));
    std::unique_ptr<fftw_complex, FftwDeleter> spec(fftw_alloc_complex(n_cplx));
    for (std::size_t i = 0; i < n_real; ++i) real.get()[i] = mu1 * target[i] - rho * dg[i];

    fftw_plan fwd, inv;
    {
        std::lock_guard lock(planner_mutex());
        fwd = fftw_plan_dft_r2c_2d(h, w, real.get(), spec.get(), FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_2d(h, w, spec.get(), real.get(), FFTW_ESTIMATE);
    }
    fftw_execute(fwd);

    std::vector<double> lap_x(static_cast<std::size_t>(wc)), lap_y(static_cast<std::size_t>(h));
    for (int k = 0; k < wc; ++k) {
        lap_x[static_cast<std::size_t>(k)] = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / w);
    }
    for (int l = 0; l < h; ++l) {
        lap_y[static_cast<std::size_t>(l)] = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * l / h);
    }
    const double scale = 1.0 / static_cast<double>(n_real);
    for (int l = 0; l < h; ++l) {
        for (int k = 0; k < wc; ++k) {
            const std::size_t i = static_cast<std::size_t>(l) * static_cast<std::size_t>(wc) +
                                  static_cast<std::size_t>(k);
            const double denom =
                mu1 + rho * (lap_x[static_cast<std::size_t>(k)] + lap_y[static_cast<std::size_t>(l)]);
            spec.get()[i][0] *= scale / denom;
            spec.get()[i][1] *= scale / denom;
        }
    }
    fftw_execute(inv);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    return Image(w, h, std::vector<double>(real.get(), real.get() + n_real));
}

Image solve_u(const Image& target, double lambda, double mu1, const LocalConfig& cfg) {
    if (!(lambda > 0.0) || !(mu1 > 0.0)) {
        throw std::invalid_argument("solve_u requires lambda > 0 and mu1 > 0");
    }
    if (cfg.hqs_iters < 1 || !(cfg.rho0_factor > 0.0)) {
        throw std::invalid_argument("solve_u requires hqs_iters >= 1 and rho0_factor > 0");
    }
    Image u = target;
    double rho = cfg.rho0_factor * lambda;
    for (int pass = 0; pass < cfg.hqs_iters; ++pass) {
        GradientField g = grad(u);
        const double kappa = rho / lambda;
        for (std::size_t i = 0; i < u.size(); ++i) {
            g.gx[i] = shrink23(g.gx[i], kappa);
            g.gy[i] = shrink23(g.gy[i], kappa);
        }
        u = quadratic_u_step(target, g, mu1, rho);
        rho *= 2.0;
    }
    if (u_objective(u, target, lambda, mu1) > u_objective(target, target, lambda, mu1)) return target;
    return u;
}

}  // namespace mixdenoise
