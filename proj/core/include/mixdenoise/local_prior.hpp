#pragma once

#include "mixdenoise/image.hpp"

namespace mixdenoise {

/// Forward differences with periodic wraparound.
struct GradientField {
    Image gx;  ///< x(i, j+1 mod W) - x(i, j)
    Image gy;  ///< x(i+1 mod H, j) - x(i, j)
};

GradientField grad(const Image& img);

/// Exact negative adjoint of grad: <grad(x), f> == -<x, div(f)>.
Image div(const GradientField& f);

/// Anisotropic hyper-Laplacian energy: sum |gx|^(2/3) + |gy|^(2/3).
double hyper_energy(const Image& img);

/// Global minimizer of kappa*(g - v)^2 + |g|^(2/3), kappa > 0.
///
/// For g with the sign of v, stationarity reduces to the quartic
/// t^4 - |v| t + 1/(3 kappa) = 0 in t = |g|^(1/3). The larger root (a local
/// minimum) is found by a safeguarded Newton iteration and compared against
/// g = 0 by objective value; ties go to 0.
double shrink23(double v, double kappa);

struct LocalConfig {
    double rho0_factor = 2.0;  ///< initial half-quadratic weight rho = rho0_factor * lambda
    int hqs_iters = 4;         ///< passes; rho doubles after each
};

/// mu1*||u - target||^2 + lambda*hyper_energy(u).
double u_objective(const Image& u, const Image& target, double lambda, double mu1);

/// Exact minimizer of mu1*||u - target||^2 + rho*||grad(u) - g||^2, solved
/// in the Fourier domain where the periodic Laplacian is diagonal.
Image quadratic_u_step(const Image& target, const GradientField& g, double mu1, double rho);

/// Approximate minimizer of u_objective by half-quadratic splitting.
///
/// Alternates g = shrink23(grad(u), rho/lambda) per component with
/// quadratic_u_step, doubling rho each pass. The result never has a larger
/// objective than u = target.
Image solve_u(const Image& target, double lambda, double mu1, const LocalConfig& cfg = {});

}  // namespace mixdenoise
