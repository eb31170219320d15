#include "frakzk/fft.hpp"

#include "frakzk/errors.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace fzk {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// Plans are created once per grid shape. Creation is serialized because the
// FFTW planner is not reentrant; execution through the new-array interface
// is safe from any thread and the unaligned flag lets callers pass any buffer.
const PlanPair& plans_for(int nx, int ny) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({nx, ny});
    if (it != cache.end()) return it->second;
    const std::size_t n_phys = static_cast<std::size_t>(nx) * ny;
    const std::size_t n_spec = static_cast<std::size_t>(nx / 2 + 1) * ny;
    double* r = fftw_alloc_real(n_phys);
    fftw_complex* c = fftw_alloc_complex(n_spec);
    PlanPair p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.fwd = fftw_plan_dft_r2c_2d(ny, nx, r, c, flags);
    p.bwd = fftw_plan_dft_c2r_2d(ny, nx, c, r, flags);
    fftw_free(r);
    fftw_free(c);
    if (!p.fwd || !p.bwd) throw Error("FFTW planner failed");
    return cache.emplace(std::make_pair(nx, ny), p).first->second;
}

} // namespace

void r2c(const SpectralGrid& g, const double* phys, cplx* spec) {
    const auto& p = plans_for(g.nx, g.ny);
    fftw_execute_dft_r2c(p.fwd, const_cast<double*>(phys), reinterpret_cast<fftw_complex*>(spec));
    const double scale = 1.0 / static_cast<double>(g.n_phys());
    const std::size_t n = g.n_spec();
    for (std::size_t i = 0; i < n; ++i) spec[i] *= scale;
}

void c2r(const SpectralGrid& g, const cplx* spec, double* phys) {
    const auto& p = plans_for(g.nx, g.ny);
    // c2r overwrites its input, so transform a private copy.
    std::vector<cplx> work(spec, spec + g.n_spec());
    fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(work.data()), phys);
}

void c2r_destroy(const SpectralGrid& g, cplx* spec, double* phys) {
    const auto& p = plans_for(g.nx, g.ny);
    fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(spec), phys);
}

Field forward(const Field& f) {
    if (!f.is_physical()) throw RepresentationMismatch("forward expects a physical field");
    const auto& g = *f.grid();
    std::vector<cplx> out(g.n_spec());
    r2c(g, f.samples().data(), out.data());
    return Field::spectral(f.grid(), std::move(out));
}

Field inverse(const Field& f) {
    if (!f.is_spectral()) throw RepresentationMismatch("inverse expects a spectral field");
    const auto& g = *f.grid();
    std::vector<double> out(g.n_phys());
    c2r(g, f.coeffs().data(), out.data());
    return Field::physical(f.grid(), std::move(out));
}

} // namespace fzk
