#include "frakzk/grid.hpp"

#include "frakzk/errors.hpp"

#include <cmath>
#include <numbers>

namespace fzk {

int wrap_index(int j, int n) {
    return j <= n / 2 ? j : j - n;
}

GridPtr make_grid(int nx, int ny, double lx, double ly) {
    if (nx < 4 || ny < 4 || nx % 2 != 0 || ny % 2 != 0) {
        throw InvalidArgument("grid sizes must be even and at least 4, got " +
                              std::to_string(nx) + "x" + std::to_string(ny));
    }
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
        throw InvalidArgument("domain lengths must be positive and finite");
    }
    auto g = std::make_shared<SpectralGrid>();
    g->nx = nx;
    g->ny = ny;
    g->lx = lx;
    g->ly = ly;
    g->kx.resize(nx);
    g->ky.resize(ny);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 0; j < nx; ++j) g->kx[j] = two_pi * wrap_index(j, nx) / lx;
    for (int m = 0; m < ny; ++m) g->ky[m] = two_pi * wrap_index(m, ny) / ly;
    return g;
}

} // namespace fzk
