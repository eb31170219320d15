#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace fzk {

using cplx = std::complex<double>;

/// Periodic box [0, lx) x [0, ly) sampled on nx x ny points.
///
/// Spectral data uses the real-to-complex half layout: ny rows of
/// nx/2 + 1 coefficients, x being the contiguous (fast) direction.
struct SpectralGrid {
    int nx = 0;
    int ny = 0;
    double lx = 0.0;
    double ly = 0.0;
    std::vector<double> kx;   ///< full lattice, length nx, signed order
    std::vector<double> ky;   ///< full lattice, length ny, signed order

    int nkx() const { return nx / 2 + 1; }
    std::size_t n_phys() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t n_spec() const { return static_cast<std::size_t>(nkx()) * ny; }
    double dx() const { return lx / nx; }
    double dy() const { return ly / ny; }
    /// Riemann-sum weight of one sample.
    double cell() const { return lx * ly / (static_cast<double>(nx) * ny); }
    bool nyquist_x(int j) const { return j == nx / 2; }
    bool nyquist_y(int m) const { return m == ny / 2; }
    /// Half-layout coefficient is flagged when it sits on a Nyquist line.
    bool nyquist(int j, int m) const { return nyquist_x(j) || nyquist_y(m); }
    double x(int j) const { return j * dx(); }
    double y(int m) const { return m * dy(); }

    bool same_as(const SpectralGrid& o) const {
        return nx == o.nx && ny == o.ny && lx == o.lx && ly == o.ly;
    }
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

/// Signed index of lattice position j on an n-point axis, in (-n/2, n/2].
int wrap_index(int j, int n);

GridPtr make_grid(int nx, int ny, double lx, double ly);

} // namespace fzk
