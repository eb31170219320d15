#include "frakzk/dispersion.hpp"

#include "frakzk/errors.hpp"
#include "frakzk/fft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace fzk {

namespace {

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

} // namespace

void DispersionSpec::validate() const {
    if (!(alpha >= -1.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [-1, 1]");
}

double phase(double kx, double ky, const DispersionSpec& spec) {
    return kx * kx * kx + sgn(kx) * abs_pow(kx, spec.alpha) * ky * ky;
}

MultiplierSpec group_symbol(double t, const DispersionSpec& spec) {
    return {[t, spec](double kx, double ky) { return std::polar(1.0, -t * phase(kx, ky, spec)); },
            std::nullopt, std::nullopt, "group"};
}

Field apply_group(const Field& psi, double t, const DispersionSpec& spec) {
    spec.validate();
    if (t == 0.0) return psi;
    return apply_multiplier(psi, group_symbol(t, spec));
}

void DecayProbe::validate(const DispersionSpec& spec) const {
    spec.validate();
    if (!(beta > spec.alpha / 2.0 - 1.0 && (beta < spec.alpha / 2.0 || !strict_beta))) {
        throw InvalidArgument("beta must satisfy alpha/2 - 1 < beta < alpha/2");
    }
    if (times.empty()) throw InvalidArgument("decay probe needs at least one time");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0)) throw InvalidArgument("decay times must be positive");
        if (i > 0 && !(times[i] > times[i - 1])) throw InvalidArgument("decay times must increase");
    }
}

double spectral_radius(const Field& f, double rel_floor) {
    const auto& g = *f.grid();
    const auto c = spectral_coeffs(f);
    double peak = 0.0;
    for (const auto& v : c) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    double kmax = 0.0;
    const int nk = g.nkx();
    for (int m = 0; m < g.ny; ++m) {
        for (int j = 0; j < nk; ++j) {
            if (std::abs(c[static_cast<std::size_t>(m) * nk + j]) > rel_floor * peak) {
                kmax = std::max(kmax, std::hypot(g.kx[j], g.ky[m]));
            }
        }
    }
    return kmax;
}

double outer_fraction(const Field& f) {
    const auto& g = *f.grid();
    const auto s = physical_samples(f);
    double peak = 0.0, outer = 0.0;
    for (int m = 0; m < g.ny; ++m) {
        const bool y_in = std::abs(g.y(m) - 0.5 * g.ly) < 0.25 * g.ly;
        for (int j = 0; j < g.nx; ++j) {
            const double v = std::abs(s[static_cast<std::size_t>(m) * g.nx + j]);
            peak = std::max(peak, v);
            const bool x_in = std::abs(g.x(j) - 0.5 * g.lx) < 0.25 * g.lx;
            if (!(x_in && y_in)) outer = std::max(outer, v);
        }
    }
    return peak == 0.0 ? 0.0 : outer / peak;
}

void check_horizon(const Field& psi, double t_max, double* kmax_out) {
    const auto& g = *psi.grid();
    const double frac = outer_fraction(psi);
    if (frac >= 1e-8) {
        throw WrapAroundRisk("data is not localized: outer/peak = " + format_sci(frac));
    }
    const double kmax = spectral_radius(psi);
    if (kmax_out) *kmax_out = kmax;
    const double margin = 10.0 * std::max(g.dx(), g.dy());
    const double reach = 3.0 * kmax * kmax * t_max;
    const double room = 0.5 * std::min(g.lx, g.ly) - margin;
    if (!(reach < room)) {
        throw WrapAroundRisk("front reach " + std::to_string(reach) + " exceeds " + std::to_string(room) +
                             " at t = " + std::to_string(t_max));
    }
}

std::vector<std::pair<double, double>> decay_sup_norm(const Field& psi, const DecayProbe& probe,
                                                      const DispersionSpec& spec) {
    probe.validate(spec);
    check_horizon(psi, probe.times.back());
    const auto& g = *psi.grid();
    const auto c0 = spectral_coeffs(psi);
    const int nk = g.nkx();
    std::vector<cplx> c(c0.size());
    std::vector<double> u(g.n_phys());
    std::vector<std::pair<double, double>> out;
    for (double t : probe.times) {
        for (int m = 0; m < g.ny; ++m) {
            for (int j = 0; j < nk; ++j) {
                const std::size_t i = static_cast<std::size_t>(m) * nk + j;
                if (g.nyquist(j, m) || j == 0) {
                    c[i] = 0.0;
                    continue;
                }
                const double kx = g.kx[j], ky = g.ky[m];
                c[i] = c0[i] * abs_pow(kx, probe.beta) * std::polar(1.0, -t * phase(kx, ky, spec));
            }
        }
        c2r(g, c.data(), u.data());
        double sup = 0.0;
        for (double v : u) sup = std::max(sup, std::abs(v));
        out.emplace_back(t, sup);
    }
    return out;
}

LogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("fit needs two or more points");
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidArgument("log fit needs positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw InvalidArgument("log fit needs distinct abscissae");
    LogFit f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - f.intercept - f.slope * lx[i];
        r2 += r * r;
    }
    f.residual = std::sqrt(r2 / n);
    return f;
}

} // namespace fzk
