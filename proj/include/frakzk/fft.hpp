#pragma once

#include "frakzk/field.hpp"

namespace fzk {

/// Physical samples to normalized half spectrum.
Field forward(const Field& f);
/// Normalized half spectrum to physical samples.
Field inverse(const Field& f);

/// Raw transforms on caller-owned buffers; `spec` is scaled by 1/(nx*ny).
void r2c(const SpectralGrid& g, const double* phys, cplx* spec);
/// `spec` is left untouched.
void c2r(const SpectralGrid& g, const cplx* spec, double* phys);
/// Same as c2r but uses `spec` as scratch; its contents are destroyed.
void c2r_destroy(const SpectralGrid& g, cplx* spec, double* phys);

/// Sum over the full lattice of |c_k|^2 * w(j, m) from half-layout coefficients.
template <class W>
double half_sum(const SpectralGrid& g, const cplx* c, W&& w) {
    const int nk = g.nkx();
    double acc = 0.0;
    for (int m = 0; m < g.ny; ++m) {
        for (int j = 0; j < nk; ++j) {
            const double a = std::norm(c[static_cast<std::size_t>(m) * nk + j]);
            if (a == 0.0) continue;
            const double mult = (j == 0 || (g.nx % 2 == 0 && j == g.nx / 2)) ? 1.0 : 2.0;
            acc += mult * a * w(j, m);
        }
    }
    return acc;
}

} // namespace fzk
