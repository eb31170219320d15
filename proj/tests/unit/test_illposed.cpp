#include "helpers.hpp"

#include "frakzk/dispersion.hpp"
#include "frakzk/errors.hpp"
#include "frakzk/illposed.hpp"
#include "frakzk/sparse_duhamel.hpp"

#include <doctest.h>

#include <random>

using namespace fzk;
using namespace fzk::test;

TEST_CASE("resonance function at a hand-computed point") {
    // 3 xi xi1 xi2 with all eta zero
    CHECK(resonance_chi(2.0, 1.0, 0.0, 0.0, 0.5) == doctest::Approx(6.0).epsilon(1e-15));
    // xi = 2, xi1 = 1, eta = 2, eta1 = 1, theta = 1: 6 + 4/2 - 1 - 1
    CHECK(resonance_chi(2.0, 1.0, 2.0, 1.0, 1.0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK_THROWS_AS(resonance_chi(1.0, 2.0, 0.0, 0.0, 0.5), InvalidArgument);
}

TEST_CASE("resonance function: symmetry, branches and roots") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const double theta = 0.05 + 0.95 * u(rng), xi = 0.1 + 20.0 * u(rng);
        const double xi1 = xi * (0.01 + 0.98 * u(rng));
        const double eta = 40.0 * (u(rng) - 0.5), eta1 = 40.0 * (u(rng) - 0.5);
        const double scale = resonance_scale(xi, xi1, eta, eta1, theta);
        const double a = resonance_chi(xi, xi1, eta, eta1, theta);
        CHECK(std::abs(a - resonance_chi(xi, xi - xi1, eta, eta - eta1, theta)) < 1e-13 * scale);
        CHECK(std::abs(a - resonance_chi_general(xi, xi1, eta, eta1, theta)) < 1e-13 * scale);
        double lo = 0.0, hi = 0.0;
        if (resonance_eta_roots(xi, xi1, eta1, theta, lo, hi)) {
            for (double e : {lo, hi}) {
                CHECK(std::abs(resonance_chi(xi, xi1, e, eta1, theta)) < 1e-12 * resonance_scale(xi, xi1, e, eta1, theta));
            }
        }
    }
}

TEST_CASE("Duhamel kernel") {
    CHECK(duhamel_kernel(0.0, 3.0) == cplx(0.0));
    // small chi: t + i t^2 chi / 2
    CHECK(std::abs(duhamel_kernel(2.0, 1e-12) - cplx(2.0, 2e-12)) < 1e-15);
    CHECK(std::abs(duhamel_kernel(2.0, 0.0) - cplx(2.0)) == 0.0);
    // t = 1, chi = pi: (e^{i pi} - 1)/(i pi) = 2i/pi
    CHECK(std::abs(duhamel_kernel(1.0, kPi) - cplx(0.0, 2.0 / kPi)) < 1e-15);
    for (double x : {1e-3, 0.1, 1.0, 7.0, 300.0}) {
        const cplx a = duhamel_kernel(1.0, x), b = duhamel_kernel_naive(1.0, x);
        CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
        CHECK(std::abs(a) <= 1.0 + 1e-15);
    }
}

TEST_CASE("counterexample parameters") {
    const CounterexampleParams p = make_counterexample(-0.5, 100.0, 0.02, 1.0, 1.0);
    CHECK(p.theta == 0.5);
    CHECK(p.gamma == doctest::Approx(std::pow(100.0, -0.51)).epsilon(1e-14));
    CHECK(p.d1.xi_lo == doctest::Approx(p.gamma / 2.0));
    CHECK(p.d1.eta_hi == doctest::Approx(p.gamma * p.gamma / 6.0));
    CHECK(p.d2.xi_lo == 100.0);
    CHECK(p.eta0() == doctest::Approx(std::sqrt(6.0) * std::pow(100.0, 1.75)).epsilon(1e-14));
    CHECK(p.amp2() == doctest::Approx(std::pow(p.gamma, -1.5) * std::pow(100.0, -1.0 - 1.75)).epsilon(1e-13));
    CHECK_THROWS_AS(make_counterexample(0.5, 100.0, 0.02, 0.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(make_counterexample(-0.5, 1.0, 0.02, 0.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(make_counterexample(-0.5, 100.0, 0.0, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("lattice resolution of the boxes") {
    const CounterexampleParams p = make_counterexample(-1.0, 64.0, 0.01, 1.0, 1.0);
    CHECK_THROWS_AS(box_lattice(p, 2), InvalidArgument);
    const BoxLattice coarse = box_lattice(p, 4);
    const BoxLattice fine = box_lattice(p, 8);
    CHECK_NOTHROW(build_phi_hat(snap_to_lattice(p, fine), fine));
    // a lattice coarser than the D1 cells leaves fewer than four cells per side
    const BoxLattice too_coarse{4.0 * coarse.dxi, 4.0 * coarse.deta};
    CHECK_THROWS_AS(build_phi_hat(snap_to_lattice(p, too_coarse), too_coarse), BoxUnresolvable);
}

TEST_CASE("the data norm is of order one for both weight rules") {
    for (WeightRule rule : {WeightRule::product, WeightRule::balanced}) {
        const CounterexampleParams p = make_counterexample(-1.0, 64.0, 0.01, 1.0, 1.0, rule);
        const BoxLattice lat = box_lattice(p, 8);
        const SparseSpectrum phi = build_phi_hat(snap_to_lattice(p, lat), lat);
        CHECK(phi.size() == 8 * 8 * 7);   // D1 is m x m cells, D2 is 2m x 3m
        const double n = sparse_norm(phi, 1.0, 1.0);
        CHECK(n >= 0.25);
        CHECK(n <= 4.0);
    }
}

TEST_CASE("f3 vanishes at t = 0 and matches the time-domain oracle") {
    const CounterexampleParams cp = make_counterexample(-1.0, 32.0, 0.01, 0.0, 0.0);
    CHECK(eval_f3_hat(0.0, cp.d1.xi_hi + cp.d2.xi_lo, cp.d2.eta_lo, cp) == cplx(0.0));
    const int cells = 16;
    const BoxLattice lat = box_lattice(cp, cells);
    const CounterexampleParams q = snap_to_lattice(cp, lat);
    const SparseSpectrum phi = build_phi_hat(q, lat);
    const std::int64_t i0 = std::llround((q.d1.xi_lo + q.d2.xi_lo) / lat.dxi);
    const std::int64_t m0 = std::llround((q.d1.eta_lo + q.d2.eta_lo) / lat.deta);
    const std::vector<std::pair<std::int64_t, std::int64_t>> outs = {{2 * (i0 + cells / 2), 2 * (m0 + cells / 2)},
                                                                     {2 * (i0 + cells / 4), 2 * (m0 + cells)}};
    const auto oracle = sparse_duhamel_quadratic(phi, 1.0, DispersionSpec{cp.alpha}, outs, 256);
    for (std::size_t k = 0; k < outs.size(); ++k) {
        const cplx f = eval_f3_hat(1.0, outs[k].first * phi.dxi, outs[k].second * phi.deta, q);
        CHECK(std::abs(oracle[k] - f) <= 0.01 * std::abs(f));
    }
}

TEST_CASE("resonance is small only on the mixed pairing") {
    const CounterexampleParams p = make_counterexample(-1.0, 64.0, 0.01, 0.0, 0.0);
    const ChiScan mixed = chi_bound_scan(p, 4000);
    const ChiScan same = chi_scan(p, p.d1, p.d1, 4000);
    CHECK(mixed.samples == 8000);
    // |chi| scales like gamma^2 N
    const ChiScan big = chi_bound_scan(make_counterexample(-1.0, 1024.0, 0.01, 0.0, 0.0), 4000);
    CHECK(std::max(mixed.ratio_to_gamma2N, big.ratio_to_gamma2N) <=
          2.0 * std::min(mixed.ratio_to_gamma2N, big.ratio_to_gamma2N));
    CHECK(same.max_abs_chi < 0.1 * mixed.max_abs_chi);
    // D2 with itself resonates at the scale of N^3
    CHECK(chi_scan(p, p.d2, p.d2, 100, false).max_abs_chi > 1e3 * mixed.max_abs_chi);
}
