#include "frakzk/multipliers.hpp"

#include "frakzk/errors.hpp"
#include "frakzk/fft.hpp"

#include <cmath>

namespace fzk {

cplx MultiplierSpec::at(double kx, double ky) const {
    if (kx == 0.0 && at_kx0) return *at_kx0;
    if (ky == 0.0 && at_ky0) return *at_ky0;
    return symbol(kx, ky);
}

double hermitian_defect(const SpectralGrid& g, const MultiplierSpec& m) {
    double worst = 0.0;
    for (int mm = 0; mm < g.ny; ++mm) {
        for (int j = 0; j < g.nkx(); ++j) {
            if (g.nyquist(j, mm)) continue;
            const double kx = g.kx[j];
            const double ky = g.ky[mm];
            const cplx a = m.at(kx, ky);
            const cplx b = m.at(-kx, -ky);
            const double scale = std::max(1.0, std::abs(a));
            worst = std::max(worst, std::abs(a - std::conj(b)) / scale);
        }
    }
    return worst;
}

Field apply_multiplier(const Field& f, const MultiplierSpec& m) {
    const auto& g = *f.grid();
#ifndef NDEBUG
    if (hermitian_defect(g, m) > 1e-12) {
        throw InvalidArgument(m.name + " is not conjugate-symmetric on the lattice");
    }
#endif
    auto c = spectral_coeffs(f);
    const int nk = g.nkx();
    for (int mm = 0; mm < g.ny; ++mm) {
        for (int j = 0; j < nk; ++j) {
            auto& v = c[static_cast<std::size_t>(mm) * nk + j];
            if (g.nyquist(j, mm)) {
                v = 0.0;
                continue;
            }
            const cplx s = m.at(g.kx[j], g.ky[mm]);
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
                throw NonFiniteSymbol(m.name + " at kx=" + std::to_string(g.kx[j]) +
                                      ", ky=" + std::to_string(g.ky[mm]));
            }
            v *= s;
        }
    }
    Field out = Field::spectral(f.grid(), std::move(c));
    return f.is_physical() ? inverse(out) : out;
}

double sgn(double v) {
    return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
}

double abs_pow(double v, double a) {
    return v == 0.0 ? 0.0 : std::pow(std::abs(v), a);
}

double japanese(double v, double s) {
    return std::pow(1.0 + v * v, 0.5 * s);
}

MultiplierSpec hilbert_symbol() {
    return {[](double kx, double) { return cplx(0.0, -sgn(kx)); }, cplx(0.0), std::nullopt, "hilbert_x"};
}

MultiplierSpec dx_symbol() {
    return {[](double kx, double) { return cplx(0.0, kx); }, std::nullopt, std::nullopt, "dx"};
}

MultiplierSpec dy_symbol() {
    return {[](double, double ky) { return cplx(0.0, ky); }, std::nullopt, std::nullopt, "dy"};
}

MultiplierSpec frac_deriv_symbol(double a) {
    if (!(a >= -2.0 && a <= 2.0)) throw InvalidArgument("fractional order must lie in [-2, 2]");
    return {[a](double kx, double) { return cplx(abs_pow(kx, a)); }, cplx(0.0), std::nullopt, "frac_deriv_x"};
}

MultiplierSpec bessel_symbol(double sx, double sy) {
    return {[sx, sy](double kx, double ky) { return cplx(japanese(kx, sx) * japanese(ky, sy)); },
            std::nullopt, std::nullopt, "bessel"};
}

MultiplierSpec bessel_iso_symbol(double s) {
    return {[s](double kx, double ky) { return cplx(std::pow(1.0 + kx * kx + ky * ky, 0.5 * s)); },
            std::nullopt, std::nullopt, "bessel_iso"};
}

Field hilbert_x(const Field& f) { return apply_multiplier(f, hilbert_symbol()); }
Field dx(const Field& f) { return apply_multiplier(f, dx_symbol()); }
Field dy(const Field& f) { return apply_multiplier(f, dy_symbol()); }
Field frac_deriv_x(const Field& f, double a) { return apply_multiplier(f, frac_deriv_symbol(a)); }
Field bessel(const Field& f, double sx, double sy) { return apply_multiplier(f, bessel_symbol(sx, sy)); }
Field bessel_iso(const Field& f, double s) { return apply_multiplier(f, bessel_iso_symbol(s)); }

double x_mean_fraction(const Field& f, bool skip_ky0) {
    const auto& g = *f.grid();
    const auto c = spectral_coeffs(f);
    const double total = half_sum(g, c.data(), [](int, int) { return 1.0; });
    if (total == 0.0) return 0.0;
    double plane = 0.0;
    const int nk = g.nkx();
    for (int m = 0; m < g.ny; ++m) {
        if (skip_ky0 && m == 0) continue;
        if (g.nyquist_y(m)) continue;
        plane += std::norm(c[static_cast<std::size_t>(m) * nk]);
    }
    return std::sqrt(plane / total);
}

void require_zero_x_mean(const Field& f, bool skip_ky0, const char* who) {
    const double frac = x_mean_fraction(f, skip_ky0);
    if (frac >= kXMeanTol) {
        throw NonzeroXMean(std::string(who) + ": kx = 0 content is " + std::to_string(frac) +
                           " of the L2 norm");
    }
}

Field inv_dx(const Field& f) {
    require_zero_x_mean(f, false, "inv_dx");
    return apply_multiplier(
        f, {[](double kx, double) { return cplx(0.0, -1.0 / kx); }, cplx(0.0), std::nullopt, "inv_dx"});
}

Field inv_dx_dy(const Field& f) {
    require_zero_x_mean(f, true, "inv_dx_dy");
    return apply_multiplier(
        f, {[](double kx, double ky) { return cplx(ky / kx); }, cplx(0.0), std::nullopt, "inv_dx_dy"});
}

void SmoothingParams::validate() const {
    if (!(tau >= theta_smooth && theta_smooth >= 0.0)) {
        throw InvalidArgument("smoothing parameters need tau >= theta >= 0");
    }
    if (!(s1 > 0.0 && s2 > 0.0)) throw InvalidArgument("smoothing exponents must be positive");
}

Field bona_smith_smooth(const Field& f, double tau, double s1, double s2) {
    if (tau == 0.0) return f;
    return apply_multiplier(
        f, {[tau, s1, s2](double kx, double ky) {
                return cplx(std::exp(-tau * (japanese(kx, s1) + japanese(ky, s2))));
            },
            std::nullopt, std::nullopt, "bona_smith"});
}

Field bona_smith_smooth(const Field& f, const SmoothingParams& p) {
    p.validate();
    return bona_smith_smooth(f, p.tau, p.s1, p.s2);
}

} // namespace fzk
