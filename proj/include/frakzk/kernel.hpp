#pragma once

#include "frakzk/dispersion.hpp"

namespace fzk {

struct KernelValue {
    double value = 0.0;   ///< kernel value (real)
    double abs_err = 0.0; ///< quadrature error estimate
    int evaluations = 0;
};

struct KernelOptions {
    /// Width of the Gaussian g(x, y) = exp(-(x^2 + y^2) / (2 sigma^2)) the
    /// kernel is convolved with; 0 gives the bare kernel.
    double sigma = 0.0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_evaluations = 20000;
};

/// Convolution kernel of D_x^beta W(t) evaluated at (x, y), so that
/// D_x^beta W(t) f = K_t * f. The eta-integral is done in closed form and the
/// remaining one-dimensional integral by adaptive Gauss-Kronrod quadrature.
/// With sigma > 0 the result is K_t * g_sigma at (x, y).
KernelValue kernel_reduced(double t, double x, double y, double beta, const DispersionSpec& spec,
                           const KernelOptions& opt = {});

} // namespace fzk
