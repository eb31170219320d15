#include "frakzk/datagen.hpp"
#include "frakzk/errors.hpp"
#include "frakzk/fft.hpp"
#include "frakzk/harness.hpp"
#include "frakzk/illposed.hpp"
#include "frakzk/kernel.hpp"
#include "frakzk/norms.hpp"
#include "frakzk/snapshot.hpp"
#include "frakzk/sparse_duhamel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

namespace fzk {

namespace {

using nlohmann::json;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string tag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

/// Largest sample difference relative to the largest sample of b.
double rel_max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0, s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
        s = std::max(s, std::abs(b[i]));
    }
    return s == 0.0 ? d : d / s;
}

/// Relative l2 distance of two coefficient arrays.
double rel_l2_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double d = 0.0, s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += std::norm(a[i] - b[i]);
        s += std::norm(b[i]);
    }
    return s == 0.0 ? std::sqrt(d) : std::sqrt(d / s);
}

double rel_field_diff(const Field& a, const Field& b) {
    return rel_l2_diff(spectral_coeffs(a), spectral_coeffs(b));
}

std::vector<double> geometric(double lo, double hi, int n) {
    std::vector<double> out;
    for (int k = 0; k < n; ++k) out.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : double(k) / (n - 1)));
    return out;
}

std::vector<double> doubles(const json& j) { return j.get<std::vector<double>>(); }

Field initial_data(ExperimentContext& ctx, const GridPtr& grid) {
    return gen_data(ctx.config().at("data"), grid, ctx.seed());
}

double spread(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
}

json grid_block(int nx, int ny, double lx, double ly) { return {{"nx", nx}, {"ny", ny}, {"lx", lx}, {"ly", ly}}; }

json solver_block(double dt, double t_end, int stride) {
    return {{"dt", dt}, {"t_end", t_end}, {"snapshot_stride", stride}, {"dealias", 2.0 / 3.0}};
}

const double kTwoPi = 2.0 * 3.14159265358979323846;

// ---------------------------------------------------------------- simulate

void run_simulate(ExperimentContext& ctx) {
    const GridPtr grid = ctx.grid();
    const Field psi = initial_data(ctx, grid);
    const Trajectory traj = evolve(psi, ctx.solver(), ctx.dispersion());
    ctx.info("l2_drift", traj.l2_drift());
    ctx.info("mass_drift", traj.mass_drift());
    ctx.info("hamiltonian_drift", traj.hamiltonian_drift());
    ctx.info("sup_u_final", traj.diagnostics.back().sup_u);
    if (ctx.writes()) {
        write_trajectory(ctx.path("trajectory"), traj);
        ctx.add_file("trajectory");
    }
}

// ------------------------------------------------------------- multipliers

void run_multipliers(ExperimentContext& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    const GridPtr grid = ctx.grid();
    const Field f = initial_data(ctx, grid);
    const json& p = ctx.params();

    const Field back = inverse(forward(f));
    ctx.check_le("roundtrip_rel", rel_max_diff(back.samples(), f.samples()), ctx.tol("roundtrip"), "derived");

    const double l2_phys = lp_norm(f, 2.0);
    const auto c = spectral_coeffs(f);
    const double l2_spec = std::sqrt(grid->lx * grid->ly * half_sum(*grid, c.data(), [](int, int) { return 1.0; }));
    ctx.check_le("parseval_rel", std::abs(l2_phys - l2_spec) / l2_spec, ctx.tol("parseval"), "derived");

    // H H f = -(f minus its kx = 0 plane)
    const Field hh = hilbert_x(hilbert_x(f));
    const Field proj = project_zero_x_mean(f);
    ctx.check_le("hilbert_square_rel", rel_field_diff((-1.0) * hh, proj), ctx.tol("hilbert"), "closed form");

    double worst_semigroup = 0.0;
    for (const auto& ab : p.at("semigroup_pairs")) {
        const double a = ab.at(0).get<double>(), b = ab.at(1).get<double>();
        const Field lhs = frac_deriv_x(frac_deriv_x(proj, a), b);
        const Field rhs = frac_deriv_x(proj, a + b);
        worst_semigroup = std::max(worst_semigroup, rel_field_diff(lhs, rhs));
    }
    ctx.check_le("frac_deriv_semigroup_rel", worst_semigroup, ctx.tol("semigroup"), "closed form");

    double worst_bessel = 0.0;
    for (const auto& s : p.at("bessel_orders")) {
        const double sx = s.at(0).get<double>(), sy = s.at(1).get<double>();
        worst_bessel = std::max(worst_bessel, rel_field_diff(bessel(bessel(f, sx, sy), -sx, -sy), f));
        worst_bessel = std::max(worst_bessel, rel_field_diff(bessel_iso(bessel_iso(f, sx), -sx), f));
    }
    ctx.check_le("bessel_inverse_rel", worst_bessel, ctx.tol("bessel"), "closed form");

    double worst_herm = 0.0;
    for (const auto& m : {hilbert_symbol(), dx_symbol(), dy_symbol(), frac_deriv_symbol(0.5), frac_deriv_symbol(-0.5),
                          bessel_symbol(1.0, 2.0)}) {
        worst_herm = std::max(worst_herm, hermitian_defect(*grid, m));
    }
    ctx.check_le("hermitian_defect", worst_herm, ctx.tol("hermitian"), "derived");

    ctx.check_le("wall_time_s", seconds_since(t0), ctx.tol("wall_time_s"), "derived");
}

// ------------------------------------------------------------------- group

void run_group(ExperimentContext& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    const GridPtr grid = ctx.grid();
    const Field psi = forward(initial_data(ctx, grid));
    const json& p = ctx.params();
    const double t = p.at("t").get<double>(), s = p.at("s").get<double>();
    const double l2 = l2_norm(psi);

    double unitary = 0.0, inverse_law = 0.0, group_law = 0.0, identity = 0.0, commute = 0.0;
    for (double alpha : doubles(p.at("alphas"))) {
        const DispersionSpec spec{alpha};
        const Field wt = apply_group(psi, t, spec);
        unitary = std::max(unitary, std::abs(l2_norm(wt) - l2) / l2);
        inverse_law = std::max(inverse_law, rel_field_diff(apply_group(apply_group(psi, 1.0, spec), -1.0, spec), psi));
        group_law = std::max(group_law, rel_field_diff(apply_group(apply_group(psi, s, spec), t, spec),
                                                       apply_group(psi, t + s, spec)));
        const Field w0 = apply_group(psi, 0.0, spec);
        for (std::size_t k = 0; k < w0.coeffs().size(); ++k) {
            identity = std::max(identity, std::abs(w0.coeffs()[k] - psi.coeffs()[k]));
        }
        commute = std::max(commute, rel_field_diff(apply_group(dx(psi), t, spec), dx(wt)));
    }
    ctx.check_le("unitarity_rel", unitary, ctx.tol("unitarity"), "closed form");
    ctx.check_le("inverse_law_rel", inverse_law, ctx.tol("group_law"), "closed form");
    ctx.check_le("group_law_rel", group_law, ctx.tol("group_law"), "closed form");
    ctx.check_le("identity_at_zero", identity, 0.0, "closed form", "W(0) must be the identity bit for bit");
    ctx.check_le("commutes_with_dx_rel", commute, ctx.tol("group_law"), "closed form");
    ctx.check_le("wall_time_s", seconds_since(t0), ctx.tol("wall_time_s"), "derived");
}

// ---------------------------------------------------------------- conserve

void run_conserve(ExperimentContext& ctx) {
    const GridPtr grid = ctx.grid();
    const Field psi = initial_data(ctx, grid);
    const json& p = ctx.params();
    const SolverConfig base = ctx.solver();
    const auto alphas = doubles(p.at("alphas"));
    const auto order_dts = doubles(p.at("order_dts"));

    struct Row {
        double l2 = 0, mass = 0, ham = 0;
        LogFit order;
    };
    std::vector<Row> rows(alphas.size());
    parallel_for(alphas.size(), ctx.jobs(), [&](std::size_t i) {
        const DispersionSpec spec{alphas[i]};
        const Trajectory traj = evolve(psi, base, spec);
        rows[i].l2 = traj.l2_drift();
        rows[i].mass = traj.mass_drift();
        rows[i].ham = traj.hamiltonian_drift();
        if (ctx.writes()) write_trajectory(ctx.path("alpha_" + tag(alphas[i])), traj);
        std::vector<double> drifts;
        for (double h : order_dts) {
            SolverConfig c = base;
            c.dt = h;
            c.snapshot_stride = 1;
            drifts.push_back(evolve(psi, c, spec).hamiltonian_drift());
        }
        rows[i].order = fit_loglog(order_dts, drifts);
    });
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const std::string a = "alpha_" + tag(alphas[i]);
        if (ctx.writes()) ctx.add_file(a);
        ctx.check_le(a + ".l2_drift", rows[i].l2, ctx.tol("l2_drift"), "derived");
        ctx.check_le(a + ".mass_drift", rows[i].mass, ctx.tol("mass_drift"), "derived");
        ctx.check_le(a + ".hamiltonian_drift", rows[i].ham, ctx.tol("hamiltonian_drift"), "derived");
        ctx.check_fit(a + ".hamiltonian_order", rows[i].order, 4.0, ctx.tol("order"), "derived",
                      "drift against dt with snapshots at every step");
    }
}

// -------------------------------------------------------------- decay etc.

std::vector<double> sup_decay(const Field& psi, double beta, const std::vector<double>& times, const DispersionSpec& spec) {
    const DecayProbe probe{beta, times, false};
    std::vector<double> out;
    for (const auto& [t, v] : decay_sup_norm(psi, probe, spec)) out.push_back(v);
    return out;
}

void run_decay(ExperimentContext& ctx) {
    const GridPtr grid = ctx.grid();
    const Field psi = initial_data(ctx, grid);
    const json& p = ctx.params();
    const auto times = geometric(p.at("t_min").get<double>(), p.at("t_max").get<double>(), p.at("n_times").get<int>());
    double kmax = 0.0;
    check_horizon(psi, times.back(), &kmax);
    ctx.info("spectral_radius", kmax);
    ctx.info("outer_fraction", outer_fraction(psi));
    const auto pairs = p.at("pairs").get<std::vector<std::vector<double>>>();
    std::vector<LogFit> fits(pairs.size());
    parallel_for(pairs.size(), ctx.jobs(), [&](std::size_t i) {
        const DispersionSpec spec{pairs[i].at(0)};
        fits[i] = fit_loglog(times, sup_decay(psi, pairs[i].at(1), times, spec));
    });
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double alpha = pairs[i][0], beta = pairs[i][1];
        const std::string n = "alpha_" + tag(alpha) + "_beta_" + tag(beta);
        const bool hypothesis = beta < alpha / 2.0;
        ctx.check_fit(n, fits[i], -(5.0 + 2.0 * beta - alpha) / 6.0, ctx.tol("slope"), "closed form",
                      hypothesis ? "" : "beta is not below alpha/2, outside the decay hypothesis");
    }
}

void run_strichartz(ExperimentContext& ctx) {
    const GridPtr grid = ctx.grid();
    const Field psi = initial_data(ctx, grid);
    const json& p = ctx.params();
    const auto times = geometric(p.at("t_min").get<double>(), p.at("t_max").get<double>(), p.at("n_times").get<int>());
    const DispersionSpec spec = ctx.dispersion();
    const double eps = p.at("eps").get<double>();
    check_horizon(psi, times.back());

    // theta = 1: sup norm of W(t) D_x^{alpha/2 - eps} psi
    const double beta = spec.alpha / 2.0 - eps;
    const LogFit fit = fit_loglog(times, sup_decay(psi, beta, times, spec));
    ctx.check_fit("theta_1.sup_slope", fit, -(5.0 - 2.0 * eps) / 6.0, ctx.tol("slope"), "closed form");

    // theta = 0: L2 norm of W(t) psi
    const double l2 = l2_norm(psi);
    double worst = 0.0;
    for (double t : times) worst = std::max(worst, std::abs(l2_norm(apply_group(psi, t, spec)) - l2) / l2);
    ctx.check_le("theta_0.l2_rel_variation", worst, ctx.tol("l2_constant"), "closed form");
}

// ------------------------------------------------------------------ kernel

void run_kernel(ExperimentContext& ctx) {
    const GridPtr grid = ctx.grid();
    const SpectralGrid& g = *grid;
    const json& p = ctx.params();
    const double sigma = p.at("sigma").get<double>();
    const double beta = p.at("beta").get<double>();
    const int n_points = p.at("n_points").get<int>();
    std::vector<double> s(g.n_phys());
    for (int m = 0; m < g.ny; ++m) {
        for (int j = 0; j < g.nx; ++j) {
            const double x = g.x(j) - 0.5 * g.lx, y = g.y(m) - 0.5 * g.ly;
            s[static_cast<std::size_t>(m) * g.nx + j] = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
        }
    }
    const auto c0 = spectral_coeffs(Field::physical(grid, s));
    const int nk = g.nkx();
    KernelOptions kopt;
    kopt.sigma = sigma;

    for (double alpha : doubles(p.at("alphas"))) {
        if (alpha < 0.0) throw InvalidArgument("kernel oracle covers alpha >= 0 only");
        const DispersionSpec spec{alpha};
        for (double t : doubles(p.at("times"))) {
            // On the torus the kx = 0 plane carries the limit of the symbol
            // as kx -> 0: 1 for alpha > 0, e^{-i t ky^2} for alpha = 0.
            auto c = c0;
            for (int m = 0; m < g.ny; ++m) {
                for (int j = 0; j < nk; ++j) {
                    cplx& v = c[static_cast<std::size_t>(m) * nk + j];
                    if (g.nyquist(j, m)) {
                        v = 0.0;
                    } else if (j == 0) {
                        const double ky = g.ky[m];
                        v *= beta == 0.0 ? (alpha > 0.0 ? cplx(1.0) : std::polar(1.0, -t * ky * ky)) : cplx(0.0);
                    } else {
                        v *= abs_pow(g.kx[j], beta) * std::polar(1.0, -t * phase(g.kx[j], g.ky[m], spec));
                    }
                }
            }
            const auto u = inverse(Field::spectral(grid, std::move(c))).samples();
            std::vector<std::size_t> idx(u.size());
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            std::partial_sort(idx.begin(), idx.begin() + n_points, idx.end(),
                              [&](std::size_t a, std::size_t b) { return std::abs(u[a]) > std::abs(u[b]); });
            std::vector<double> errs(n_points);
            parallel_for(n_points, ctx.jobs(), [&](std::size_t k) {
                const std::size_t i = idx[k];
                const int m = static_cast<int>(i / g.nx), j = static_cast<int>(i % g.nx);
                const KernelValue kv = kernel_reduced(t, g.x(j) - 0.5 * g.lx, g.y(m) - 0.5 * g.ly, beta, spec, kopt);
                errs[k] = std::abs(kv.value - u[i]) / std::abs(u[i]);
            });
            ctx.check_le("alpha_" + tag(alpha) + "_t_" + tag(t) + ".max_rel_err",
                         *std::max_element(errs.begin(), errs.end()), ctx.tol("rel_err"), "derived",
                         "largest |u| samples of the propagated Gaussian");
        }
    }
}

// ----------------------------------------------------------------- scaling

void run_scaling(ExperimentContext& ctx) {
    const GridPtr grid = ctx.grid();
    const DispersionSpec spec = ctx.dispersion();
    const SolverConfig cfg = ctx.solver();
    const double lambda = ctx.params().at("lambda").get<double>();
    const Field psi = initial_data(ctx, grid);

    // u_lambda(x, y, t) = lambda^2 u(lambda x, lambda^{(3-alpha)/2} y, lambda^3 t) lives on the shrunken torus.
    const double ey = (3.0 - spec.alpha) / 2.0;
    const GridPtr small = make_grid(grid->nx, grid->ny, grid->lx / lambda, grid->ly / std::pow(lambda, ey));
    std::vector<double> scaled = physical_samples(psi);
    for (double& v : scaled) v *= lambda * lambda;
    SolverConfig cfg_s = cfg;
    cfg_s.dt = cfg.dt / std::pow(lambda, 3);
    cfg_s.t_end = cfg.t_end / std::pow(lambda, 3);

    const Field u = evolve_to(psi, cfg, spec);
    const Field v = evolve_to(Field::physical(small, std::move(scaled)), cfg_s, spec);
    std::vector<double> expect = physical_samples(u);
    for (double& x : expect) x *= lambda * lambda;
    const auto got = physical_samples(v);
    double d = 0.0, n = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        d += (got[i] - expect[i]) * (got[i] - expect[i]);
        n += expect[i] * expect[i];
    }
    ctx.check_le("rel_l2_discrepancy", std::sqrt(d / n), ctx.tol("rel_l2"), "closed form");
}

// ------------------------------------------------------------------ energy

struct EnergyRun {
    double rate_constant = 0.0;   ///< max over intervals of d log||u|| / (|u_x|_inf + |u_y|_inf) dt
    double integrated = 0.0;      ///< max over t of log(||u(t)||/||psi||) / int_0^t (...)
    std::vector<double> log_ratio, integral;
};

EnergyRun energy_run(const Field& psi, const SolverConfig& cfg, const DispersionSpec& spec, const SobolevIndex& idx) {
    const Trajectory traj = evolve(psi, cfg, spec);
    EnergyRun r;
    const double n0 = norm(psi, idx);
    double prev = n0, integral = 0.0;
    for (std::size_t k = 1; k < traj.states.size(); ++k) {
        const auto& a = traj.diagnostics[k - 1];
        const auto& b = traj.diagnostics[k];
        const double d = 0.5 * (traj.times[k] - traj.times[k - 1]) * (a.sup_ux + a.sup_uy + b.sup_ux + b.sup_uy);
        integral += d;
        const double nk = norm(traj.states[k], idx);
        r.rate_constant = std::max(r.rate_constant, std::log(nk / prev) / d);
        r.integrated = std::max(r.integrated, std::log(nk / n0) / integral);
        r.log_ratio.push_back(std::log(nk / n0));
        r.integral.push_back(integral);
        prev = nk;
    }
    return r;
}

void run_energy(ExperimentContext& ctx) {
    const GridPtr grid = ctx.grid();
    const DispersionSpec spec = ctx.dispersion();
    const SolverConfig cfg = ctx.solver();
    const json& p = ctx.params();
    const SobolevIndex idx{p.at("s1").get<double>(), p.at("s2").get<double>()};
    const int n_train = p.at("n_train").get<int>(), n_test = p.at("n_test").get<int>();
    const auto amp = doubles(p.at("amplitude_range"));
    const auto width = doubles(p.at("width_range"));

    std::vector<EnergyRun> runs(n_train + n_test);
    parallel_for(runs.size(), ctx.jobs(), [&](std::size_t i) {
        std::mt19937_64 rng(ctx.seed() + i);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        const double a = amp[0] + (amp[1] - amp[0]) * u01(rng);
        const double sx = width[0] + (width[1] - width[0]) * u01(rng);
        const double sy = width[0] + (width[1] - width[0]) * u01(rng);
        const json data = {{"amplitude", a}, {"sx", sx}, {"sy", sy}};
        runs[i] = energy_run(gen_data("gaussian", data, grid, 0), cfg, spec, idx);
    });

    // The fitted constant is the one of the differential inequality
    // d/dt log||u|| <= C (|u_x|_inf + |u_y|_inf), maximized over the training runs.
    std::vector<double> train;
    for (int i = 0; i < n_train; ++i) train.push_back(runs[i].rate_constant);
    const double c_fit = *std::max_element(train.begin(), train.end());
    ctx.info("fitted_C", c_fit, "fitted constant");
    ctx.check_le("fitted_C_spread", spread(train), ctx.tol("spread"), "fitted constant", "max/min over training runs");

    double worst = -std::numeric_limits<double>::infinity();
    for (int i = n_train; i < n_train + n_test; ++i) {
        for (std::size_t k = 0; k < runs[i].log_ratio.size(); ++k) {
            worst = std::max(worst, runs[i].log_ratio[k] - c_fit * runs[i].integral[k]);
        }
        ctx.info("heldout_" + std::to_string(i - n_train) + ".integrated_C", runs[i].integrated, "measured");
    }
    ctx.check_le("heldout_bound_excess", worst, 0.0, "fitted constant",
                 "max over held-out runs and times of log(||u||/||psi||) - C int(|u_x| + |u_y|)");
}

// -------------------------------------------------------------- bona-smith

void run_bona_smith(ExperimentContext& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    const GridPtr grid = ctx.grid();
    const SpectralGrid& g = *grid;
    const json& p = ctx.params();
    const double s2 = p.at("s2").get<double>();
    const int nk = g.nkx();

    // Operator norm of f -> f^tau from H^{s1,s2} to H^{s1+1,s2}, a sup over lattice modes.
    auto gain = [&](double tau, double s1) {
        double best = 0.0;
        for (int m = 0; m < g.ny; ++m) {
            for (int j = 0; j < nk; ++j) {
                if (g.nyquist(j, m)) continue;
                const double kx = g.kx[j], ky = g.ky[m];
                const double w = std::exp(-tau * (japanese(kx, s1) + japanese(ky, s2)));
                const double hi = japanese(kx, 2.0 * s1 + 2.0) + japanese(ky, 2.0 * s2);
                const double lo = japanese(kx, 2.0 * s1) + japanese(ky, 2.0 * s2);
                best = std::max(best, w * std::sqrt(hi / lo));
            }
        }
        return best;
    };
    for (const auto& row : p.at("slope_runs")) {
        const double s1 = row.at("s1").get<double>();
        const auto taus = geometric(row.at("tau_min").get<double>(), row.at("tau_max").get<double>(), 8);
        std::vector<double> gains;
        for (double tau : taus) gains.push_back(gain(tau, s1));
        const LogFit fit = fit_loglog(taus, gains);
        ctx.check_fit("s1_" + tag(s1) + ".tau_slope", fit, -1.0 / s1, ctx.tol("slope_rel") / s1, "closed form");
    }

    // Difference bound: |e^{-tau w} - e^{-theta w}| <= |tau - theta| w and w <= sqrt2 (<kx>^{2s1} + <ky>^{2s2})^{1/2}.
    const double s1 = p.at("s1").get<double>();
    double c_lattice = 0.0;
    for (const auto& pair : p.at("difference_pairs")) {
        const double tau = pair.at(0).get<double>(), theta = pair.at(1).get<double>();
        for (int m = 0; m < g.ny; ++m) {
            for (int j = 0; j < nk; ++j) {
                if (g.nyquist(j, m)) continue;
                const double a = japanese(g.kx[j], s1) + japanese(g.ky[m], s2);
                const double h = std::sqrt(japanese(g.kx[j], 2.0 * s1) + japanese(g.ky[m], 2.0 * s2));
                c_lattice = std::max(c_lattice, std::abs(std::exp(-tau * a) - std::exp(-theta * a)) / ((tau - theta) * h));
            }
        }
    }
    ctx.check_le("difference_constant", c_lattice, ctx.tol("difference_constant"), "derived",
                 "sup over lattice modes and the listed (tau, theta) pairs");

    // Convergence on a noise field.
    const Field f = initial_data(ctx, grid);
    const SobolevIndex idx{s1, s2};
    double prev = std::numeric_limits<double>::infinity();
    int violations = 0;
    double last = 0.0;
    for (double tau : geometric(1.0, 1e-6, 13)) {
        last = norm(bona_smith_smooth(f, tau, s1, s2) - f, idx);
        if (last > prev) ++violations;
        prev = last;
    }
    ctx.check_le("convergence_violations", violations, 0.0, "derived", "||f^tau - f|| must shrink as tau decreases");
    ctx.info("distance_at_smallest_tau", last / norm(f, idx));
    ctx.check_le("wall_time_s", seconds_since(t0), ctx.tol("wall_time_s"), "derived");
}

// --------------------------------------------------------- flow-continuity

void run_flow_continuity(ExperimentContext& ctx) {
    const GridPtr grid = ctx.grid();
    const DispersionSpec spec = ctx.dispersion();
    const SolverConfig cfg = ctx.solver();
    const json& p = ctx.params();
    const int n_pairs = p.at("n_pairs").get<int>();
    const double delta = p.at("delta").get<double>();
    const json noise = {{"amplitude", 1.0}, {"kmax", p.at("noise_kmax").get<double>()}};
    const Field psi = initial_data(ctx, grid);
    const Trajectory tu = evolve(psi, cfg, spec);

    std::vector<double> c(n_pairs);
    parallel_for(n_pairs, ctx.jobs(), [&](std::size_t i) {
        const Field phi = psi + delta * gen_data("noise", noise, grid, ctx.seed() + 1 + i);
        const Trajectory tv = evolve(phi, cfg, spec);
        const double d0 = lp_norm(psi - phi, 2.0);
        double integral = 0.0, worst = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k < tu.states.size(); ++k) {
            const double h = tu.times[k] - tu.times[k - 1];
            integral += 0.5 * h * (tu.diagnostics[k - 1].sup_ux + tv.diagnostics[k - 1].sup_ux +
                                   tu.diagnostics[k].sup_ux + tv.diagnostics[k].sup_ux);
            worst = std::max(worst, std::log(lp_norm(tu.states[k] - tv.states[k], 2.0) / d0) / integral);
        }
        c[i] = worst;
    });
    for (int i = 0; i < n_pairs; ++i) ctx.info("pair_" + std::to_string(i) + ".c", c[i]);
    ctx.check_le("max_c", *std::max_element(c.begin(), c.end()), ctx.tol("c"), "closed form",
                 "smallest c with ||u - v|| <= ||psi - phi|| exp(c int(|u_x| + |v_x|))");
}

// ----------------------------------------------------------- gn-inequality

void run_gn_inequality(ExperimentContext& ctx) {
    const json& p = ctx.params();
    const json& gj = ctx.config().at("grid");
    const json noise = ctx.config().at("data");
    const int n_inputs = p.at("n_inputs").get<int>();
    const auto sizes = p.at("sizes").get<std::vector<int>>();

    for (double alpha : doubles(p.at("alphas"))) {
        // p = 2: ||f||_4^4 <= C ||f||_2^{2-(1-alpha)/2} ||f_x||_2^{(3-alpha)/2} ||D_x^{(alpha-1)/2} f_y||_2
        const Functional lhs = [](const Field& f) { return std::pow(lp_norm(f, 4.0), 4.0); };
        const Functional rhs = [alpha](const Field& f) {
            return std::pow(lp_norm(f, 2.0), 2.0 - (1.0 - alpha) / 2.0) *
                   std::pow(lp_norm(dx(f), 2.0), (3.0 - alpha) / 2.0) *
                   lp_norm(frac_deriv_x(dy(f), (alpha - 1.0) / 2.0), 2.0);
        };
        std::vector<double> sups;
        for (int n : sizes) {
            const GridPtr grid = make_grid(n, n, gj.at("lx").get<double>(), gj.at("ly").get<double>());
            std::vector<Field> inputs(n_inputs);
            parallel_for(n_inputs, ctx.jobs(),
                         [&](std::size_t i) { inputs[i] = gen_data(noise, grid, ctx.seed() + i); });
            const ProbeReport r = probe_inequality("gn_alpha_" + tag(alpha), lhs, rhs, inputs);
            const std::string name = "alpha_" + tag(alpha) + "_n_" + std::to_string(n);
            ctx.info(name + ".sup_ratio", r.sup_ratio);
            ctx.check_le(name + ".violations", r.violation ? 1.0 : 0.0, 0.0, "closed form");
            sups.push_back(r.sup_ratio);
            if (ctx.writes()) {
                const std::string witness = name + "_witness.fzk";
                write_snapshot(ctx.path(witness), inputs[r.argmax]);
                std::ofstream(ctx.path(name + "_probe.json")) << probe_report_json(r, witness) << "\n";
                ctx.add_file(witness);
                ctx.add_file(name + "_probe.json");
            }
        }
        ctx.check_le("alpha_" + tag(alpha) + ".refinement_spread", spread(sups), ctx.tol("spread"), "derived",
                     "max/min of the sup ratio over the grid sizes");
    }
}

// ---------------------------------------------------------------- illposed

void write_sweep_csv(const std::string& path, const SweepResult& r, const json& manifest) {
    std::ofstream os(path);
    os << "N,gamma,eps,max_abs_chi,chi_ratio,f3_norm\n";
    char buf[256];
    for (const auto& w : r.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", w.bigN, w.gamma, w.eps, w.max_abs_chi,
                      w.chi_ratio, w.f3_norm);
        os << buf;
    }
    os << "# " << manifest.dump() << "\n";
}

void run_illposed(ExperimentContext& ctx) {
    const json& p = ctx.params();
    std::mt19937_64 rng(ctx.seed());
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    // Symmetry of chi under k1 <-> k - k1.
    double sym = 0.0, roots = 0.0;
    const int n_sym = p.at("symmetry_samples").get<int>();
    for (int k = 0; k < n_sym; ++k) {
        const double theta = 0.05 + 0.95 * u01(rng);
        const double xi = 0.1 + 20.0 * u01(rng);
        const double xi1 = xi * (0.01 + 0.98 * u01(rng));
        const double eta = 40.0 * (u01(rng) - 0.5), eta1 = 40.0 * (u01(rng) - 0.5);
        const double scale = resonance_scale(xi, xi1, eta, eta1, theta);
        const double a = resonance_chi(xi, xi1, eta, eta1, theta);
        const double b = resonance_chi(xi, xi - xi1, eta, eta - eta1, theta);
        sym = std::max(sym, std::abs(a - b) / scale);
        double lo = 0.0, hi = 0.0;
        if (resonance_eta_roots(xi, xi1, eta1, theta, lo, hi)) {
            for (double e : {lo, hi}) {
                roots = std::max(roots, std::abs(resonance_chi(xi, xi1, e, eta1, theta)) /
                                            resonance_scale(xi, xi1, e, eta1, theta));
            }
        }
    }
    ctx.check_le("chi_symmetry_rel", sym, ctx.tol("symmetry"), "closed form");
    ctx.check_le("chi_root_rel", roots, ctx.tol("roots"), "derived");

    // Stable kernel against the literal formula where the latter is accurate.
    double kern = 0.0;
    for (double x : geometric(1e-6, 1e3, 91)) {
        for (double sgn_chi : {1.0, -1.0}) {
            const cplx a = duhamel_kernel(1.0, sgn_chi * x), b = duhamel_kernel_naive(1.0, sgn_chi * x);
            kern = std::max(kern, std::abs(a - b) / std::abs(a));
        }
    }
    ctx.check_le("kernel_stable_vs_naive_rel", kern, ctx.tol("kernel"), "derived", "|t chi| in [1e-6, 1e3]");

    // Norm of the data.
    for (const auto& [rule, rname] : {std::pair{WeightRule::product, "product"}, std::pair{WeightRule::balanced, "balanced"}}) {
        const double s = p.at("phi_norm_s").get<double>();
        const CounterexampleParams cp = make_counterexample(-1.0, p.at("phi_norm_N").get<double>(), 0.01, s, s, rule);
        const BoxLattice lat = box_lattice(cp, p.at("cells").get<int>());
        const double nrm = sparse_norm(build_phi_hat(snap_to_lattice(cp, lat), lat), s, s);
        ctx.check_le(std::string("phi_norm_") + rname + ".upper", nrm, 4.0, "closed form");
        ctx.check_ge(std::string("phi_norm_") + rname + ".lower", nrm, 0.25, "closed form");
    }

    // Frequency quadrature of f3 against the time-domain Duhamel oracle.
    {
        const json& o = p.at("oracle");
        const int m_cells = o.at("cells").get<int>();
        const double t = o.at("t").get<double>();
        const CounterexampleParams cp = make_counterexample(o.at("alpha").get<double>(), o.at("N").get<double>(),
                                                            o.at("eps").get<double>(), 0.0, 0.0);
        const BoxLattice lat = box_lattice(cp, m_cells);
        const CounterexampleParams q = snap_to_lattice(cp, lat);
        const SparseSpectrum phi = build_phi_hat(q, lat);
        const std::int64_t i0 = std::llround((q.d1.xi_lo + q.d2.xi_lo) / lat.dxi);
        const std::int64_t m0 = std::llround((q.d1.eta_lo + q.d2.eta_lo) / lat.deta);
        std::vector<std::pair<std::int64_t, std::int64_t>> outs;
        for (std::int64_t di : {m_cells / 4, m_cells / 2 + m_cells / 4, m_cells + m_cells / 4}) {
            for (std::int64_t dm : {m_cells / 8, m_cells / 2, m_cells + m_cells / 4}) {
                outs.push_back({2 * (i0 + di), 2 * (m0 + dm)});
            }
        }
        const auto grid_vals = sparse_duhamel_quadratic(phi, t, DispersionSpec{cp.alpha}, outs, o.at("quad_steps").get<int>());
        std::vector<double> rel(outs.size());
        parallel_for(outs.size(), ctx.jobs(), [&](std::size_t k) {
            const cplx f = eval_f3_hat(t, outs[k].first * phi.dxi, outs[k].second * phi.deta, q);
            rel[k] = std::abs(grid_vals[k] - f) / std::abs(f);
        });
        ctx.check_le("f3_oracle_max_rel", *std::max_element(rel.begin(), rel.end()), ctx.tol("oracle"), "derived",
                     "nine points of D1 + D2");
    }

    // chi ratio stability and growth of ||f3||.
    std::vector<double> n_list;
    for (int e = p.at("log2_N_min").get<int>(); e <= p.at("log2_N_max").get<int>(); ++e) n_list.push_back(std::ldexp(1.0, e));
    const auto chi_samples = p.at("chi_samples").get<std::size_t>();
    struct Job {
        double alpha, eps, s;
        WeightRule rule;
        std::string name;
        SweepResult result;
    };
    std::vector<Job> jobs;
    for (const auto& run : p.at("growth_runs")) {
        const double alpha = run.at("alpha").get<double>(), eps = run.at("eps").get<double>();
        const double s = run.at("s").get<double>();
        const std::string rule = run.at("rule").get<std::string>();
        if (rule != "product" && rule != "balanced") throw SchemaError("growth rule must be 'product' or 'balanced'");
        jobs.push_back({alpha, eps, s, rule == "product" ? WeightRule::product : WeightRule::balanced,
                        "alpha_" + tag(alpha) + "_eps_" + tag(eps) + "_s_" + tag(s) + "_" + rule, {}});
    }
    parallel_for(jobs.size(), ctx.jobs(), [&](std::size_t i) {
        Job& j = jobs[i];
        j.result = growth_sweep(j.alpha, j.eps, j.s, j.s, j.rule, n_list, 1.0, chi_samples);
    });
    for (const Job& j : jobs) {
        std::vector<double> ratios;
        for (const auto& r : j.result.rows) ratios.push_back(r.chi_ratio);
        ctx.check_le(j.name + ".chi_ratio_spread", spread(ratios), ctx.tol("chi_ratio_spread"), "derived",
                     "max/min of max|chi|/(gamma^2 N) over the N sweep");
        const LogFit fit{j.result.slope, j.result.intercept, j.result.residual};
        ctx.check_fit(j.name + ".growth", fit, j.result.expected_slope, ctx.tol("growth_slope"), "closed form");
        if (ctx.writes()) {
            const json manifest = {{"alpha", j.alpha},       {"eps", j.eps},
                                   {"s1", j.s},              {"s2", j.s},
                                   {"slope", j.result.slope}, {"intercept", j.result.intercept},
                                   {"residual", j.result.residual}, {"expected_slope", j.result.expected_slope}};
            write_sweep_csv(ctx.path("sweep_" + j.name + ".csv"), j.result, manifest);
            ctx.add_file("sweep_" + j.name + ".csv");
        }
    }
}

// ---------------------------------------------------------------- registry

json tolerances_block(std::initializer_list<std::pair<const char*, double>> t) {
    json j = json::object();
    for (const auto& [k, v] : t) j[k] = v;
    return j;
}

std::vector<ExperimentDef> make_registry() {
    std::vector<ExperimentDef> r;
    const json gauss = {{"kind", "gaussian"}, {"amplitude", 1.0}, {"x0", 20.0}, {"y0", 20.0}, {"sx", 1.5}, {"sy", 1.5}};
    const json bump = {{"kind", "bump"}, {"amplitude", 1.0}, {"x0", 320.0}, {"y0", 320.0}, {"kmax", 2.5}, {"power", 3.0}};

    r.push_back({"simulate", "evolve initial data and write a trajectory directory",
                 {{"dispersion", {{"alpha", 1.0}}},
                  {"grid", grid_block(128, 128, 40.0, 40.0)},
                  {"solver", solver_block(2e-3, 1.0, 50)},
                  {"data", gauss}},
                 run_simulate});

    r.push_back({"multipliers", "transform round trip, Parseval and multiplier identities",
                 {{"grid", grid_block(256, 256, kTwoPi, kTwoPi)},
                  {"data", {{"kind", "noise"}, {"amplitude", 1.0}, {"kmax", 40.0}, {"decay", 0.0}, {"zero_x_mean", false}}},
                  {"params",
                   {{"semigroup_pairs", {{0.7, -1.3}, {-0.5, -0.5}, {1.5, 0.5}}},
                    {"bessel_orders", {{1.0, 2.0}, {-0.5, 0.75}}}}},
                  {"tolerances", tolerances_block({{"roundtrip", 1e-12},
                                                   {"parseval", 1e-12},
                                                   {"hilbert", 1e-12},
                                                   {"semigroup", 1e-11},
                                                   {"bessel", 1e-12},
                                                   {"hermitian", 1e-12},
                                                   {"wall_time_s", 10.0}})}},
                 run_multipliers});

    // Composed phases carry round-off of order eps t max|theta|, so the
    // band limit of the data sets the floor of the group-law residual.
    r.push_back({"group", "unitarity and group law of the linear propagator",
                 {{"grid", grid_block(256, 256, kTwoPi, kTwoPi)},
                  {"data", {{"kind", "noise"}, {"amplitude", 1.0}, {"kmax", 16.0}, {"decay", 0.0}, {"zero_x_mean", false}}},
                  {"params", {{"alphas", {1.0, 0.0, -1.0}}, {"t", 3.7}, {"s", 1.1}}},
                  {"tolerances", tolerances_block({{"unitarity", 1e-12}, {"group_law", 1e-11}, {"wall_time_s", 5.0}})}},
                 run_group});

    r.push_back({"conserve", "L2, mass and Hamiltonian conservation of the solver",
                 {{"grid", grid_block(256, 256, 40.0, 40.0)},
                  {"solver", solver_block(1e-3, 1.0, 100)},
                  {"data", gauss},
                  {"params", {{"alphas", {1.0, 0.0, -1.0}}, {"order_dts", {0.02, 0.01, 0.005}}}},
                  {"tolerances", tolerances_block({{"l2_drift", 1e-8},
                                                   {"mass_drift", 1e-12},
                                                   {"hamiltonian_drift", 1e-6},
                                                   {"order", 0.3}})}},
                 run_conserve});

    r.push_back({"decay", "sup-norm decay of the linear group against the dispersive exponent",
                 {{"grid", grid_block(512, 512, 640.0, 640.0)},
                  {"data", bump},
                  {"params",
                   {{"pairs", {{1.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}, {1.0, 0.2}}},
                    {"t_min", 1.0},
                    {"t_max", 16.0},
                    {"n_times", 9}}},
                  {"tolerances", tolerances_block({{"slope", 0.07}})}},
                 run_decay});

    r.push_back({"strichartz", "endpoints of the interpolated linear estimate",
                 {{"dispersion", {{"alpha", 1.0}}},
                  {"grid", grid_block(512, 512, 640.0, 640.0)},
                  {"data", bump},
                  {"params", {{"eps", 0.05}, {"t_min", 1.0}, {"t_max", 16.0}, {"n_times", 9}}},
                  {"tolerances", tolerances_block({{"slope", 0.07}, {"l2_constant", 1e-12}})}},
                 run_strichartz});

    r.push_back({"kernel", "oscillatory kernel quadrature against grid propagation",
                 {{"grid", grid_block(512, 512, 320.0, 320.0)},
                  {"params", {{"alphas", {1.0, 0.5, 0.0}}, {"times", {1.0, 4.0}}, {"sigma", 1.0}, {"beta", 0.0}, {"n_points", 10}}},
                  {"tolerances", tolerances_block({{"rel_err", 0.01}})}},
                 run_kernel});

    r.push_back({"scaling", "scaling covariance of the equation",
                 {{"dispersion", {{"alpha", 1.0}}},
                  {"grid", grid_block(128, 128, 40.0, 40.0)},
                  {"solver", solver_block(2e-3, 1.0, 500)},
                  {"data", gauss},
                  {"params", {{"lambda", 2.0}}},
                  {"tolerances", tolerances_block({{"rel_l2", 1e-6}})}},
                 run_scaling});

    r.push_back({"energy", "Gronwall constant of the energy estimate",
                 {{"dispersion", {{"alpha", 1.0}}},
                  {"grid", grid_block(128, 128, 40.0, 40.0)},
                  {"solver", solver_block(2e-3, 1.0, 5)},
                  {"params",
                   {{"s1", 1.0},
                    {"s2", 1.0},
                    {"n_train", 10},
                    {"n_test", 10},
                    {"amplitude_range", {-5.0, -2.5}},
                    {"width_range", {1.2, 1.8}}}},
                  {"tolerances", tolerances_block({{"spread", 3.0}})}},
                 run_energy});

    r.push_back({"bona-smith", "smoothing rates of the Bona-Smith approximation",
                 {{"grid", grid_block(256, 256, kTwoPi, kTwoPi)},
                  {"data", {{"kind", "noise"}, {"amplitude", 1.0}, {"kmax", 60.0}, {"decay", 0.0}, {"zero_x_mean", false}}},
                  {"params",
                   {{"s1", 1.0},
                    {"s2", 1.0},
                    {"slope_runs",
                     {{{"s1", 1.0}, {"tau_min", 0.01}, {"tau_max", 0.1}}, {{"s1", 2.0}, {"tau_min", 1e-4}, {"tau_max", 1e-2}}}},
                    {"difference_pairs", {{0.1, 0.05}, {0.01, 0.0}, {1e-3, 1e-4}, {1.0, 0.5}}}}},
                  {"tolerances", tolerances_block({{"slope_rel", 0.1}, {"difference_constant", 2.0}, {"wall_time_s", 30.0}})}},
                 run_bona_smith});

    r.push_back({"flow-continuity", "L2 Lipschitz bound of the flow on perturbed pairs",
                 {{"dispersion", {{"alpha", 1.0}}},
                  {"grid", grid_block(128, 128, 40.0, 40.0)},
                  {"solver", solver_block(2e-3, 1.0, 5)},
                  {"data", gauss},
                  {"params", {{"n_pairs", 5}, {"delta", 1e-3}, {"noise_kmax", 3.0}}},
                  {"tolerances", tolerances_block({{"c", 1.0}})}},
                 run_flow_continuity});

    r.push_back({"gn-inequality", "Gagliardo-Nirenberg type probe under grid refinement",
                 {{"grid", grid_block(128, 128, kTwoPi, kTwoPi)},
                  {"data", {{"kind", "noise"}, {"amplitude", 1.0}, {"kmax", 20.0}, {"decay", 1.0}, {"zero_x_mean", true}}},
                  {"params", {{"alphas", {1.0, 0.0, -1.0}}, {"sizes", {128, 256}}, {"n_inputs", 100}}},
                  {"tolerances", tolerances_block({{"spread", 3.0}})}},
                 run_gn_inequality});

    r.push_back({"illposed", "resonance bounds and growth of the second Picard iterate",
                 {{"params",
                   {{"symmetry_samples", 100000},
                    {"chi_samples", 10000},
                    {"log2_N_min", 6},
                    {"log2_N_max", 12},
                    {"cells", 16},
                    {"phi_norm_N", 64.0},
                    {"phi_norm_s", 1.0},
                    {"oracle", {{"alpha", -1.0}, {"N", 32.0}, {"eps", 0.01}, {"t", 1.0}, {"cells", 16}, {"quad_steps", 256}}},
                    {"growth_runs",
                     {{{"alpha", -1.0}, {"eps", 0.01}, {"s", 0.0}, {"rule", "product"}},
                      {{"alpha", -0.5}, {"eps", 0.02}, {"s", 0.0}, {"rule", "product"}},
                      {{"alpha", -1.0}, {"eps", 0.01}, {"s", 1.0}, {"rule", "balanced"}},
                      {{"alpha", -0.5}, {"eps", 0.02}, {"s", 1.0}, {"rule", "balanced"}}}}}},
                  {"tolerances", tolerances_block({{"symmetry", 1e-12},
                                                   {"roots", 1e-9},
                                                   {"kernel", 1e-10},
                                                   {"oracle", 0.01},
                                                   {"chi_ratio_spread", 2.0},
                                                   {"growth_slope", 0.05}})}},
                 run_illposed});
    return r;
}

} // namespace

const std::vector<ExperimentDef>& registry() {
    static const std::vector<ExperimentDef> r = make_registry();
    return r;
}

} // namespace fzk
