#include "helpers.hpp"

#include "frakzk/datagen.hpp"
#include "frakzk/dispersion.hpp"
#include "frakzk/errors.hpp"
#include "frakzk/fft.hpp"
#include "frakzk/kernel.hpp"
#include "frakzk/quadrature.hpp"

#include <doctest.h>

using namespace fzk;
using namespace fzk::test;

TEST_CASE("dispersion relation at hand-computed points") {
    CHECK(phase(2, 3, DispersionSpec{1.0}) == doctest::Approx(26.0));
    CHECK(phase(-2, 3, DispersionSpec{1.0}) == doctest::Approx(-26.0));
    CHECK(phase(2, 3, DispersionSpec{0.0}) == doctest::Approx(17.0));
    CHECK(phase(4, 1, DispersionSpec{-1.0}) == doctest::Approx(64.25));
    CHECK(phase(0, 3, DispersionSpec{0.5}) == 0.0);
    CHECK_THROWS_AS(DispersionSpec{1.5}.validate(), InvalidArgument);
}

TEST_CASE("a plane wave travels with the phase velocity") {
    const GridPtr g = make_grid(32, 32, 2 * kPi, 4 * kPi);
    for (double alpha : {1.0, 0.0, -1.0, 0.5}) {
        const DispersionSpec spec{alpha};
        const double kx = 2.0, ky = 1.5, t = 0.37;
        const double th = phase(kx, ky, spec);
        const Field psi = sample(g, [&](double x, double y) { return std::cos(kx * x + ky * y); });
        const Field expect = sample(g, [&](double x, double y) { return std::cos(kx * x + ky * y - t * th); });
        CHECK(max_diff(apply_group(psi, t, spec), expect) < 1e-13);
    }
}

TEST_CASE("the group is unitary and satisfies the group law") {
    const GridPtr g = make_grid(64, 64, 2 * kPi, 2 * kPi);
    const Field psi = forward(gen_data("noise", {{"kmax", 12.0}}, g, 4));
    for (double alpha : {1.0, 0.0, -1.0}) {
        const DispersionSpec spec{alpha};
        const double l2 = std::sqrt(g->lx * g->ly * half_sum(*g, psi.coeffs().data(), [](int, int) { return 1.0; }));
        const Field w = apply_group(psi, 3.7, spec);
        const double l2w = std::sqrt(g->lx * g->ly * half_sum(*g, w.coeffs().data(), [](int, int) { return 1.0; }));
        CHECK(std::abs(l2w - l2) < 1e-12 * l2);
        CHECK(max_diff(apply_group(apply_group(psi, 0.4, spec), 0.9, spec), apply_group(psi, 1.3, spec)) < 1e-11);
        CHECK(apply_group(psi, 0.0, spec).coeffs() == psi.coeffs());
    }
}

TEST_CASE("log-log fit recovers a power law") {
    std::vector<double> x, y;
    for (int k = 0; k < 9; ++k) {
        x.push_back(std::pow(2.0, k * 0.5));
        y.push_back(3.0 * std::pow(x.back(), -2.0 / 3.0));
    }
    const LogFit f = fit_loglog(x, y);
    CHECK(f.slope == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.residual < 1e-12);
    CHECK_THROWS_AS(fit_loglog({1.0}, {1.0}), InvalidArgument);
    CHECK_THROWS_AS(fit_loglog({1.0, 2.0}, {1.0, -1.0}), InvalidArgument);
}

TEST_CASE("decay probe hypotheses") {
    const DispersionSpec spec{1.0};
    CHECK_NOTHROW(DecayProbe({0.2, {1.0, 2.0}}).validate(spec));
    CHECK_THROWS_AS(DecayProbe({0.5, {1.0, 2.0}}).validate(spec), InvalidArgument);
    CHECK_NOTHROW(DecayProbe({0.5, {1.0, 2.0}, false}).validate(spec));
    CHECK_THROWS_AS(DecayProbe({-0.6, {1.0, 2.0}, false}).validate(spec), InvalidArgument);
    CHECK_THROWS_AS(DecayProbe({0.0, {2.0, 1.0}}).validate(spec), InvalidArgument);
}

TEST_CASE("wrap-around guard") {
    const GridPtr g = make_grid(256, 256, 320.0, 320.0);
    const Field bump = gen_data("bump", {{"kmax", 2.0}, {"power", 6.0}}, g, 1);
    CHECK_NOTHROW(check_horizon(bump, 1.0));
    CHECK_THROWS_AS(check_horizon(bump, 100.0), WrapAroundRisk);
    const Field wide = gen_data("noise", {{"kmax", 1.0}}, g, 1);
    CHECK_THROWS_AS(check_horizon(wide, 1.0), WrapAroundRisk);
}

TEST_CASE("Gauss-Kronrod quadrature of smooth and oscillatory integrands") {
    const QuadResult a = integrate_gk([](double x) { return std::complex<double>(std::exp(x)); }, {0.0, 1.0}, 1e-13, 0.0, 1000);
    CHECK(a.converged);
    CHECK(std::abs(a.value - (std::exp(1.0) - 1.0)) < 1e-13);
    const QuadResult b = integrate_gk([](double x) { return std::polar(1.0, 40.0 * x); }, {0.0, 1.0, 2.0}, 1e-12, 0.0, 20000);
    const std::complex<double> exact = (std::polar(1.0, 80.0) - 1.0) / std::complex<double>(0.0, 40.0);
    CHECK(std::abs(b.value - exact) < 1e-11);
    std::vector<double> n, w;
    gauss_legendre(5, n, w);
    double s = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) s += w[i] * std::pow(n[i], 8);
    CHECK(s == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("kernel quadrature matches grid propagation of a Gaussian") {
    const GridPtr g = make_grid(256, 256, 160.0, 160.0);
    const Field gauss = sample(g, [&](double x, double y) {
        const double dx = x - 80.0, dy = y - 80.0;
        return std::exp(-(dx * dx + dy * dy) / 2.0);
    });
    KernelOptions opt;
    opt.sigma = 1.0;
    const DispersionSpec spec{1.0};
    const double t = 1.0;
    const Field u = apply_group(gauss, t, spec);
    const auto s = physical_samples(u);
    // kx = 0 plane: the symbol tends to 1 there for alpha > 0, as on the line
    double peak = 0.0;
    int jp = 0, mp = 0;
    for (int m = 0; m < g->ny; ++m) {
        for (int j = 0; j < g->nx; ++j) {
            if (std::abs(s[m * g->nx + j]) > peak) {
                peak = std::abs(s[m * g->nx + j]);
                jp = j;
                mp = m;
            }
        }
    }
    const KernelValue kv = kernel_reduced(t, g->x(jp) - 80.0, g->y(mp) - 80.0, 0.0, spec, opt);
    CHECK(std::abs(kv.value - s[mp * g->nx + jp]) < 1e-2 * peak);
}

TEST_CASE("spectral radius and localization of a bump") {
    const GridPtr g = make_grid(128, 128, 200.0, 200.0);
    const Field bump = gen_data("bump", {{"kmax", 2.0}, {"power", 3.0}}, g, 1);
    CHECK(spectral_radius(bump) <= 2.0);
    CHECK(spectral_radius(bump) > 1.5);
    CHECK(outer_fraction(bump) < 1e-6);
}
