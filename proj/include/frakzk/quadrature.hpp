#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace fzk {

struct QuadResult {
    std::complex<double> value;
    double abs_err = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of a complex
/// integrand over the union of the given consecutive breakpoints. Stops when
/// the summed error estimate is below max(abs_tol, rel_tol*|I|) or when the
/// evaluation budget is spent (converged = false).
QuadResult integrate_gk(const std::function<std::complex<double>(double)>& f,
                        const std::vector<double>& breakpoints, double rel_tol, double abs_tol,
                        int max_evaluations);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace fzk
