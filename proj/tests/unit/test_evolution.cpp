#include "helpers.hpp"

#include "frakzk/datagen.hpp"
#include "frakzk/errors.hpp"
#include "frakzk/evolution.hpp"
#include "frakzk/fft.hpp"

#include <doctest.h>

using namespace fzk;
using namespace fzk::test;

namespace {

// y-independent solitary wave of u_t = u_xxx + u u_x:
// u = 12 k^2 sech^2(k (x - x0 + 4 k^2 t)).
double soliton(double x, double t, double k, double x0, double l) {
    double s = std::fmod(x - x0 + 4 * k * k * t, l);
    if (s > 0.5 * l) s -= l;
    if (s < -0.5 * l) s += l;
    const double c = 1.0 / std::cosh(k * s);
    return 12 * k * k * c * c;
}

} // namespace

TEST_CASE("quadratic term of a single mode") {
    const GridPtr g = make_grid(32, 8, 2 * kPi, 2 * kPi);
    const Field u = sample(g, [](double x, double) { return std::sin(x); });
    const Field e = sample(g, [](double x, double) { return 0.5 * std::sin(2 * x); });
    CHECK(max_diff(nonlinear_term(u), e) < 1e-14);
}

TEST_CASE("Hamiltonian, mass and L2 norm of cos x") {
    const GridPtr g = make_grid(32, 16, 2 * kPi, 2 * kPi);
    const Field u = sample(g, [](double x, double) { return std::cos(x); });
    for (double alpha : {1.0, 0.0, -1.0}) {
        CHECK(hamiltonian(u, DispersionSpec{alpha}) == doctest::Approx(-kPi * kPi).epsilon(1e-13));
    }
    CHECK(std::abs(mass(u)) < 1e-13);
    CHECK(l2_norm(u) == doctest::Approx(std::sqrt(2.0) * kPi).epsilon(1e-14));
    // the transverse term: u = cos(x + y) with alpha = 1 gives -(1/2) int u_y^2 extra
    const Field v = sample(g, [](double x, double y) { return std::cos(x + y); });
    CHECK(hamiltonian(v, DispersionSpec{1.0}) == doctest::Approx(-2 * kPi * kPi).epsilon(1e-13));
}

TEST_CASE("a solitary wave is transported at speed 4 k^2") {
    const double k = 0.5, l = 40.0, x0 = 20.0, t_end = 1.0;
    const GridPtr g = make_grid(256, 4, l, 4.0);
    const Field psi = sample(g, [&](double x, double) { return soliton(x, 0.0, k, x0, l); });
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = t_end;
    cfg.snapshot_stride = 1000;
    for (double alpha : {1.0, -1.0}) {
        const Field u = evolve_to(psi, cfg, DispersionSpec{alpha});
        const Field e = sample(g, [&](double x, double) { return soliton(x, t_end, k, x0, l); });
        CHECK(max_diff(u, e) < 1e-6);
    }
}

TEST_CASE("the stepper converges at fourth order") {
    // k = 0.7 keeps the periodic tails near 1e-11, below the time error
    const double k = 0.7, l = 40.0, x0 = 20.0;
    const GridPtr g = make_grid(256, 4, l, 4.0);
    const Field psi = sample(g, [&](double x, double) { return soliton(x, 0.0, k, x0, l); });
    const Field e = sample(g, [&](double x, double) { return soliton(x, 0.5, k, x0, l); });
    std::vector<double> dts, errs;
    for (double dt : {0.005, 0.0025, 0.00125}) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.5;
        cfg.snapshot_stride = 1000;
        dts.push_back(dt);
        errs.push_back(max_diff(evolve_to(psi, cfg, DispersionSpec{1.0}), e));
    }
    CHECK(fit_loglog(dts, errs).slope == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("invariants of a two-dimensional run") {
    const GridPtr g = make_grid(64, 64, 30.0, 30.0);
    const Field psi = gen_data("gaussian", {{"amplitude", 1.0}, {"sx", 2.0}, {"sy", 2.0}}, g, 1);
    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 0.5;
    cfg.snapshot_stride = 50;
    for (double alpha : {1.0, 0.0, -1.0}) {
        const Trajectory tr = evolve(psi, cfg, DispersionSpec{alpha});
        CHECK(tr.states.size() == 6);
        CHECK(tr.times.back() == doctest::Approx(0.5));
        CHECK(tr.l2_drift() < 1e-12);
        CHECK(tr.mass_drift() < 1e-12);
        CHECK(tr.hamiltonian_drift() < 1e-8);
    }
}

TEST_CASE("reflection in y is a symmetry of the flow") {
    const GridPtr g = make_grid(64, 64, 30.0, 30.0);
    const Field psi = gen_data("gaussian", {{"amplitude", 1.0}, {"sx", 2.0}, {"sy", 1.5}, {"x0", 12.0}, {"y0", 11.0}}, g, 1);
    CHECK(max_diff(reflect(reflect(psi)), psi) == 0.0);
    auto flip_y = [&](const Field& f) {
        const auto s = physical_samples(f);
        std::vector<double> r(s.size());
        for (int m = 0; m < g->ny; ++m) {
            const int mm = (g->ny - m) % g->ny;
            for (int j = 0; j < g->nx; ++j) r[m * g->nx + j] = s[mm * g->nx + j];
        }
        return Field::physical(g, std::move(r));
    };
    SolverConfig cfg;
    cfg.dt = 5e-3;
    cfg.t_end = 0.3;
    const DispersionSpec spec{0.5};
    const Field a = evolve_to(flip_y(psi), cfg, spec);
    const Field b = flip_y(evolve_to(psi, cfg, spec));
    CHECK(max_diff(a, b) < 1e-12);
}

TEST_CASE("Picard iterates approach the solution") {
    const GridPtr g = make_grid(64, 64, 30.0, 30.0);
    const Field psi = gen_data("gaussian", {{"amplitude", 0.2}, {"sx", 2.0}, {"sy", 2.0}}, g, 1);
    const DispersionSpec spec{1.0};
    const double t = 0.5;
    CHECK(max_diff(picard_iterate(psi, 0, t, spec, 16), apply_group(psi, t, spec)) < 1e-14);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = t;
    const Field u = evolve_to(psi, cfg, spec);
    double prev = 1e300;
    for (int n = 0; n <= 3; ++n) {
        const double err = max_diff(picard_iterate(psi, n, t, spec, 64), u);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("Picard iterate n is accurate to order n + 2 in the data size") {
    const GridPtr g = make_grid(64, 64, 30.0, 30.0);
    const Field psi = gen_data("gaussian", {{"amplitude", 1.0}, {"sx", 2.0}, {"sy", 2.0}}, g, 1);
    const DispersionSpec spec{1.0};
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    for (int n : {1, 2}) {
        std::vector<double> amps, errs;
        for (double a : {0.4, 0.2, 0.1}) {
            const Field p = a * psi;
            amps.push_back(a);
            errs.push_back(l2_norm(picard_iterate(p, n, 0.5, spec, 64) - evolve_to(p, cfg, spec)));
        }
        CHECK(fit_loglog(amps, errs).slope == doctest::Approx(n + 2.0).epsilon(0.05));
    }
}

TEST_CASE("too large a step is refused") {
    const GridPtr g = make_grid(64, 64, 10.0, 10.0);
    const Field psi = gen_data("gaussian", {{"amplitude", 50.0}}, g, 1);
    CHECK_THROWS_AS(step_ifrk4(psi, 1.0, DispersionSpec{1.0}), StabilityBudgetExceeded);
    SolverConfig bad;
    bad.dt = -1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}
