#include "frakzk/evolution.hpp"

#include "frakzk/errors.hpp"
#include "frakzk/fft.hpp"

#include <algorithm>
#include <cmath>

namespace fzk {

void SolverConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be positive");
    if (dt > t_end * (1.0 + 1e-12)) throw InvalidArgument("dt exceeds t_end");
    if (snapshot_stride < 1) throw InvalidArgument("snapshot_stride must be positive");
    if (!(dealias > 0.0 && dealias <= 1.0)) throw InvalidArgument("dealias must lie in (0, 1]");
    const double n = t_end / dt;
    if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) {
        throw InvalidArgument("t_end must be an integer multiple of dt");
    }
    if (std::round(n) > static_cast<double>(max_steps)) throw InvalidArgument("step budget exceeded");
}

long SolverConfig::steps() const {
    return static_cast<long>(std::llround(t_end / dt));
}

namespace {

bool keep_mode(const SpectralGrid& g, int j, int m, double dealias) {
    if (g.nyquist(j, m)) return false;
    const int wj = std::abs(wrap_index(j, g.nx));
    const int wm = std::abs(wrap_index(m, g.ny));
    return wj < dealias * (g.nx / 2) && wm < dealias * (g.ny / 2);
}

double sup_abs(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

} // namespace

Stepper::Stepper(GridPtr grid, DispersionSpec spec, double dealias) : g_(std::move(grid)), spec_(spec) {
    spec_.validate();
    if (!(dealias > 0.0 && dealias <= 1.0)) throw InvalidArgument("dealias must lie in (0, 1]");
    const auto& g = *g_;
    const int nk = g.nkx();
    theta_.resize(g.n_spec());
    keep_.resize(g.n_spec());
    for (int m = 0; m < g.ny; ++m) {
        for (int j = 0; j < nk; ++j) {
            const std::size_t i = static_cast<std::size_t>(m) * nk + j;
            theta_[i] = phase(g.kx[j], g.ky[m], spec_);
            keep_[i] = keep_mode(g, j, m, dealias);
            if (keep_[i]) kx_max_ = std::max(kx_max_, std::abs(g.kx[j]));
        }
    }
    phys_.resize(g.n_phys());
    spec_buf_.resize(g.n_spec());
    for (auto* v : {&a_, &b_, &cc_, &d_, &tmp_, &e_full_, &e_half_}) v->resize(g.n_spec());
}

void Stepper::truncate(std::vector<cplx>& c) const {
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!keep_[i]) c[i] = 0.0;
    }
}

void Stepper::nonlinear(const std::vector<cplx>& c, std::vector<cplx>& out) {
    const auto& g = *g_;
    const int nk = g.nkx();
    for (std::size_t i = 0; i < c.size(); ++i) spec_buf_[i] = keep_[i] ? c[i] : cplx{};
    c2r_destroy(g, spec_buf_.data(), phys_.data());
    for (double& v : phys_) v = 0.5 * v * v;
    r2c(g, phys_.data(), out.data());
    for (int m = 0; m < g.ny; ++m) {
        for (int j = 0; j < nk; ++j) {
            const std::size_t i = static_cast<std::size_t>(m) * nk + j;
            out[i] = keep_[i] ? out[i] * cplx(0.0, g.kx[j]) : cplx{};
        }
    }
}

double Stepper::stable_dt(const std::vector<cplx>& c) {
    const auto& g = *g_;
    for (std::size_t i = 0; i < c.size(); ++i) spec_buf_[i] = keep_[i] ? c[i] : cplx{};
    c2r_destroy(g, spec_buf_.data(), phys_.data());
    const double umax = sup_abs(phys_);
    if (umax == 0.0 || kx_max_ == 0.0) return INFINITY;
    return kStabilityConstant / (umax * kx_max_);
}

void Stepper::step(std::vector<cplx>& c, double dt) {
    const std::size_t n = c.size();
    if (dt != cached_dt_) {
        for (std::size_t i = 0; i < n; ++i) {
            e_full_[i] = std::polar(1.0, -dt * theta_[i]);
            e_half_[i] = std::polar(1.0, -0.5 * dt * theta_[i]);
        }
        cached_dt_ = dt;
    }
    const double h2 = 0.5 * dt;
    nonlinear(c, a_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = e_half_[i] * (c[i] + h2 * a_[i]);
    nonlinear(tmp_, b_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = e_half_[i] * c[i] + h2 * b_[i];
    nonlinear(tmp_, cc_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = e_full_[i] * c[i] + dt * e_half_[i] * cc_[i];
    nonlinear(tmp_, d_);
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = e_full_[i] * c[i] + w * (e_full_[i] * a_[i] + 2.0 * e_half_[i] * (b_[i] + cc_[i]) + d_[i]);
    }
}

double l2_norm(const Field& u) {
    const auto& g = *u.grid();
    const auto c = spectral_coeffs(u);
    return std::sqrt(g.lx * g.ly * half_sum(g, c.data(), [](int, int) { return 1.0; }));
}

double mass(const Field& u) {
    const auto& g = *u.grid();
    if (u.is_spectral()) return g.lx * g.ly * u.coeffs()[0].real();
    double s = 0.0;
    for (double v : u.samples()) s += v;
    return s * g.cell();
}

double hamiltonian(const Field& u, const DispersionSpec& spec) {
    const auto& g = *u.grid();
    const auto c = spectral_coeffs(u);
    const double a = spec.alpha;
    const double quad = half_sum(g, c.data(), [&](int j, int m) {
        if (g.nyquist(j, m)) return 0.0;
        const double kx = g.kx[j], ky = g.ky[m];
        return kx * kx + abs_pow(kx, a - 1.0) * ky * ky;
    });
    const auto s = physical_samples(u);
    double cubic = 0.0;
    for (double v : s) cubic += v * v * v;
    return -0.5 * g.lx * g.ly * quad + cubic * g.cell() / 6.0;
}

Diagnostics diagnose(const Field& u, const DispersionSpec& spec) {
    Diagnostics d;
    d.l2 = l2_norm(u);
    d.mass = mass(u);
    d.hamiltonian = hamiltonian(u, spec);
    d.sup_u = sup_abs(physical_samples(u));
    d.sup_ux = sup_abs(physical_samples(dx(u)));
    d.sup_uy = sup_abs(physical_samples(dy(u)));
    return d;
}

Field nonlinear_term(const Field& u, double dealias) {
    Stepper st(u.grid(), DispersionSpec{0.0}, dealias);
    auto c = spectral_coeffs(u);
    std::vector<cplx> out(c.size());
    st.nonlinear(c, out);
    Field r = Field::spectral(u.grid(), std::move(out));
    return u.is_physical() ? inverse(r) : r;
}

namespace {

void check_finite(const std::vector<cplx>& c, long step) {
    double s = 0.0;
    for (const auto& v : c) s += std::abs(v.real()) + std::abs(v.imag());
    if (!std::isfinite(s)) throw NumericalBlowup("non-finite state at step " + std::to_string(step));
}

void check_budget(Stepper& st, const std::vector<cplx>& c, double dt, long step) {
    const double lim = st.stable_dt(c);
    if (dt > lim) {
        throw StabilityBudgetExceeded("dt = " + std::to_string(dt) + " exceeds " + std::to_string(lim) +
                                      " at step " + std::to_string(step));
    }
}

} // namespace

Field step_ifrk4(const Field& u, double dt, const DispersionSpec& spec, double dealias) {
    Stepper st(u.grid(), spec, dealias);
    auto c = spectral_coeffs(u);
    check_budget(st, c, dt, 0);
    st.step(c, dt);
    check_finite(c, 1);
    Field r = Field::spectral(u.grid(), std::move(c));
    return u.is_physical() ? inverse(r) : r;
}

double Trajectory::l2_drift() const {
    if (diagnostics.empty()) return 0.0;
    const double a = diagnostics.front().l2;
    double w = 0.0;
    for (const auto& d : diagnostics) w = std::max(w, std::abs(d.l2 - a));
    return a == 0.0 ? w : w / a;
}

double Trajectory::mass_drift() const {
    if (diagnostics.empty()) return 0.0;
    const double a = diagnostics.front().mass;
    double w = 0.0;
    for (const auto& d : diagnostics) w = std::max(w, std::abs(d.mass - a));
    return w;
}

double Trajectory::hamiltonian_drift() const {
    if (diagnostics.empty()) return 0.0;
    const double a = diagnostics.front().hamiltonian;
    double w = 0.0;
    for (const auto& d : diagnostics) w = std::max(w, std::abs(d.hamiltonian - a));
    return a == 0.0 ? w : w / std::abs(a);
}

Trajectory evolve(const Field& psi, const SolverConfig& cfg, const DispersionSpec& spec,
                  const SnapshotSink& sink) {
    cfg.validate();
    spec.validate();
    Stepper st(psi.grid(), spec, cfg.dealias);
    const long n = cfg.steps();
    auto c = spectral_coeffs(psi);
    Trajectory tr;
    // Diagnostics come from the spectrum so that the kx = 0 plane, which no
    // step modifies, gives a bit-exact mass.
    auto record = [&](long k, const Field& f, const Field& fs) {
        Diagnostics d = diagnose(fs, spec);
        d.step = k;
        d.t = k * cfg.dt;
        tr.times.push_back(d.t);
        tr.states.push_back(f);
        tr.diagnostics.push_back(d);
        if (sink) sink(tr.states.size() - 1, f, d);
    };
    record(0, psi, Field::spectral(psi.grid(), c));
    for (long k = 1; k <= n; ++k) {
        check_budget(st, c, cfg.dt, k);
        st.step(c, cfg.dt);
        check_finite(c, k);
        if (k % cfg.snapshot_stride == 0 || k == n) {
            Field f = Field::spectral(psi.grid(), c);
            record(k, psi.is_physical() ? inverse(f) : f, f);
        }
    }
    return tr;
}

Field evolve_to(const Field& psi, const SolverConfig& cfg, const DispersionSpec& spec) {
    cfg.validate();
    spec.validate();
    Stepper st(psi.grid(), spec, cfg.dealias);
    const long n = cfg.steps();
    auto c = spectral_coeffs(psi);
    for (long k = 1; k <= n; ++k) {
        check_budget(st, c, cfg.dt, k);
        st.step(c, cfg.dt);
        check_finite(c, k);
    }
    Field f = Field::spectral(psi.grid(), std::move(c));
    return psi.is_physical() ? inverse(f) : f;
}

Field picard_iterate(const Field& psi, int n, double t, const DispersionSpec& spec, int quad_steps,
                     double dealias) {
    spec.validate();
    if (n < 0 || n > 3) throw InvalidArgument("picard order must lie in [0, 3]");
    if (quad_steps < 16) throw InvalidArgument("picard needs at least 16 quadrature steps");
    if (!std::isfinite(t)) throw InvalidArgument("picard time must be finite");
    if (n == 0) return apply_group(psi, t, spec);

    Stepper st(psi.grid(), spec, dealias);
    const auto& theta = st.theta();
    const std::size_t ns = psi.grid()->n_spec();
    const int q = quad_steps;
    const double h = t / q;
    const auto c0 = spectral_coeffs(psi);

    // States at the nodes s_i = i h of the current iterate.
    std::vector<std::vector<cplx>> u(q + 1, std::vector<cplx>(ns));
    for (int i = 0; i <= q; ++i) {
        for (std::size_t k = 0; k < ns; ++k) u[i][k] = c0[k] * std::polar(1.0, -i * h * theta[k]);
    }
    std::vector<std::vector<cplx>> f(q + 1, std::vector<cplx>(ns));
    std::vector<cplx> nl(ns);
    for (int it = 0; it < n; ++it) {
        // Interaction-picture integrand e^{i s theta} N(u(s)).
        for (int i = 0; i <= q; ++i) {
            st.nonlinear(u[i], nl);
            for (std::size_t k = 0; k < ns; ++k) f[i][k] = std::polar(1.0, i * h * theta[k]) * nl[k];
        }
        // Cumulative fourth-order integral on every node.
        std::vector<std::vector<cplx>> acc(q + 1, std::vector<cplx>(ns));
        for (std::size_t k = 0; k < ns; ++k) {
            acc[1][k] = h / 24.0 * (9.0 * f[0][k] + 19.0 * f[1][k] - 5.0 * f[2][k] + f[3][k]);
            acc[2][k] = h / 3.0 * (f[0][k] + 4.0 * f[1][k] + f[2][k]);
        }
        for (int i = 3; i <= q; ++i) {
            for (std::size_t k = 0; k < ns; ++k) {
                if (i % 2 == 0) {
                    acc[i][k] = acc[i - 2][k] + h / 3.0 * (f[i - 2][k] + 4.0 * f[i - 1][k] + f[i][k]);
                } else {
                    acc[i][k] = acc[i - 3][k] +
                                3.0 * h / 8.0 * (f[i - 3][k] + 3.0 * f[i - 2][k] + 3.0 * f[i - 1][k] + f[i][k]);
                }
            }
        }
        for (int i = 0; i <= q; ++i) {
            for (std::size_t k = 0; k < ns; ++k) {
                u[i][k] = std::polar(1.0, -i * h * theta[k]) * (c0[k] + acc[i][k]);
            }
        }
    }
    Field r = Field::spectral(psi.grid(), std::move(u[q]));
    return psi.is_physical() ? inverse(r) : r;
}

Field reflect(const Field& f) {
    const auto& g = *f.grid();
    const auto s = physical_samples(f);
    std::vector<double> out(s.size());
    for (int m = 0; m < g.ny; ++m) {
        const int mr = (g.ny - m) % g.ny;
        for (int j = 0; j < g.nx; ++j) {
            const int jr = (g.nx - j) % g.nx;
            out[static_cast<std::size_t>(mr) * g.nx + jr] = s[static_cast<std::size_t>(m) * g.nx + j];
        }
    }
    Field r = Field::physical(f.grid(), std::move(out));
    return f.is_physical() ? r : forward(r);
}

} // namespace fzk
