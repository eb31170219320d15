#include "frakzk/field.hpp"

#include "frakzk/errors.hpp"
#include "frakzk/fft.hpp"

namespace fzk {

Field Field::physical(GridPtr grid, std::vector<double> samples) {
    if (!grid) throw InvalidArgument("field without grid");
    if (samples.size() != grid->n_phys()) {
        throw InvalidArgument("physical sample count does not match grid");
    }
    Field f;
    f.grid_ = std::move(grid);
    f.rep_ = Representation::physical;
    f.phys_ = std::move(samples);
    return f;
}

Field Field::spectral(GridPtr grid, std::vector<cplx> coeffs) {
    if (!grid) throw InvalidArgument("field without grid");
    if (coeffs.size() != grid->n_spec()) {
        throw InvalidArgument("spectral coefficient count does not match grid");
    }
    Field f;
    f.grid_ = std::move(grid);
    f.rep_ = Representation::spectral;
    f.spec_ = std::move(coeffs);
    return f;
}

Field Field::zeros(GridPtr grid, Representation rep) {
    if (rep == Representation::physical) {
        const auto n = grid->n_phys();
        return physical(std::move(grid), std::vector<double>(n, 0.0));
    }
    const auto n = grid->n_spec();
    return spectral(std::move(grid), std::vector<cplx>(n, cplx{}));
}

const std::vector<double>& Field::samples() const {
    if (rep_ != Representation::physical) throw RepresentationMismatch("field is spectral");
    return phys_;
}

const std::vector<cplx>& Field::coeffs() const {
    if (rep_ != Representation::spectral) throw RepresentationMismatch("field is physical");
    return spec_;
}

std::vector<double>& Field::samples_mut() {
    if (rep_ != Representation::physical) throw RepresentationMismatch("field is spectral");
    return phys_;
}

std::vector<cplx>& Field::coeffs_mut() {
    if (rep_ != Representation::spectral) throw RepresentationMismatch("field is physical");
    return spec_;
}

std::vector<double> physical_samples(const Field& f) {
    return f.is_physical() ? f.samples() : inverse(f).samples();
}

std::vector<cplx> spectral_coeffs(const Field& f) {
    return f.is_spectral() ? f.coeffs() : forward(f).coeffs();
}

namespace {

void check_same_grid(const Field& a, const Field& b) {
    if (!a.grid()->same_as(*b.grid())) throw InvalidArgument("fields live on different grids");
}

template <class Op>
Field combine(const Field& a, const Field& b, Op op) {
    check_same_grid(a, b);
    if (a.is_physical()) {
        auto out = a.samples();
        const auto rb = physical_samples(b);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(out[i], rb[i]);
        return Field::physical(a.grid(), std::move(out));
    }
    auto out = a.coeffs();
    const auto cb = spectral_coeffs(b);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(out[i], cb[i]);
    return Field::spectral(a.grid(), std::move(out));
}

} // namespace

Field operator+(const Field& a, const Field& b) {
    return combine(a, b, [](auto x, auto y) { return x + y; });
}

Field operator-(const Field& a, const Field& b) {
    return combine(a, b, [](auto x, auto y) { return x - y; });
}

Field operator*(double s, const Field& a) {
    if (a.is_physical()) {
        auto out = a.samples();
        for (auto& v : out) v *= s;
        return Field::physical(a.grid(), std::move(out));
    }
    auto out = a.coeffs();
    for (auto& v : out) v *= s;
    return Field::spectral(a.grid(), std::move(out));
}

} // namespace fzk
