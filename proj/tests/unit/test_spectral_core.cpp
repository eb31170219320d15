#include "helpers.hpp"

#include "frakzk/errors.hpp"
#include "frakzk/fft.hpp"
#include "frakzk/multipliers.hpp"
#include "frakzk/snapshot.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace fzk;
using namespace fzk::test;

TEST_CASE("lattice of an 8-point box of side 2 pi") {
    const GridPtr g = make_grid(8, 8, 2 * kPi, 2 * kPi);
    const std::vector<double> expect = {0, 1, 2, 3, 4, -3, -2, -1};
    for (int j = 0; j < 8; ++j) CHECK(g->kx[j] == doctest::Approx(expect[j]).epsilon(1e-15));
}

TEST_CASE("lattice spacing is 2 pi / L") {
    const GridPtr g = make_grid(4, 4, kPi, kPi);
    const std::vector<double> expect = {0, 2, 4, -2};
    for (int j = 0; j < 4; ++j) CHECK(g->ky[j] == doctest::Approx(expect[j]).epsilon(1e-15));
}

TEST_CASE("odd, tiny or degenerate grids are rejected") {
    CHECK_THROWS_AS(make_grid(7, 8, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(make_grid(2, 8, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(make_grid(8, 8, 0, 1), InvalidArgument);
}

TEST_CASE("sin x has a single coefficient -i/2 at kx = 1") {
    const GridPtr g = make_grid(16, 8, 2 * kPi, 2 * kPi);
    const Field f = forward(sample(g, [](double x, double) { return std::sin(x); }));
    const int nk = g->nkx();
    for (int m = 0; m < g->ny; ++m) {
        for (int j = 0; j < nk; ++j) {
            const cplx expect = (j == 1 && m == 0) ? cplx(0.0, -0.5) : cplx(0.0);
            CHECK(std::abs(f.coeffs()[m * nk + j] - expect) < 1e-15);
        }
    }
}

TEST_CASE("round trip and Parseval on random fields") {
    const GridPtr g = make_grid(64, 32, 3.0, 5.0);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Field f = random_field(g, seed);
        const Field c = forward(f);
        CHECK(max_diff(inverse(c), f) < 1e-12 * max_abs(f));
        double phys = 0.0;
        for (double v : f.samples()) phys += v * v;
        phys *= g->cell();
        const double spec = g->lx * g->ly * half_sum(*g, c.coeffs().data(), [](int, int) { return 1.0; });
        CHECK(std::abs(phys - spec) < 1e-12 * phys);
    }
}

TEST_CASE("representation mismatch is reported") {
    const GridPtr g = make_grid(8, 8, 1, 1);
    CHECK_THROWS_AS(inverse(Field::zeros(g)), RepresentationMismatch);
    CHECK_THROWS_AS(forward(Field::zeros(g, Representation::spectral)), RepresentationMismatch);
}

TEST_CASE("derivatives and the Hilbert transform on trigonometric data") {
    const GridPtr g = make_grid(32, 32, 2 * kPi, 2 * kPi);
    const Field c3 = sample(g, [](double x, double y) { return std::cos(3 * x) * std::cos(y); });
    SUBCASE("dx") {
        const Field e = sample(g, [](double x, double y) { return -3 * std::sin(3 * x) * std::cos(y); });
        CHECK(max_diff(dx(c3), e) < 1e-13);
    }
    SUBCASE("dy") {
        const Field e = sample(g, [](double x, double y) { return -std::cos(3 * x) * std::sin(y); });
        CHECK(max_diff(dy(c3), e) < 1e-13);
    }
    SUBCASE("H cos = sin") {
        const Field e = sample(g, [](double x, double y) { return std::sin(3 * x) * std::cos(y); });
        CHECK(max_diff(hilbert_x(c3), e) < 1e-14);
    }
    SUBCASE("D_x^a multiplies by |kx|^a") {
        CHECK(max_diff(frac_deriv_x(c3, 0.5), std::sqrt(3.0) * c3) < 1e-13);
        CHECK(max_diff(frac_deriv_x(c3, -1.5), std::pow(3.0, -1.5) * c3) < 1e-14);
    }
    SUBCASE("Bessel potentials") {
        CHECK(max_diff(bessel(c3, 1.0, 2.0), std::sqrt(10.0) * 2.0 * c3) < 1e-13 * std::sqrt(10.0) * 2.0);
        CHECK(max_diff(bessel_iso(c3, 2.0), 11.0 * c3) < 1e-12);
    }
    SUBCASE("antiderivative") {
        const Field e = sample(g, [](double x, double y) { return std::sin(3 * x) * std::cos(y) / 3.0; });
        CHECK(max_diff(inv_dx(c3), e) < 1e-14);
        CHECK(max_diff(dx(inv_dx(c3)), c3) < 1e-13);
        const Field e2 = sample(g, [](double x, double y) { return -std::sin(3 * x) * std::sin(y) / 3.0; });
        CHECK(max_diff(inv_dx_dy(c3), e2) < 1e-14);
    }
}

TEST_CASE("the kx = 0 plane is annihilated by odd and negative-order symbols") {
    const GridPtr g = make_grid(16, 16, 2 * kPi, 2 * kPi);
    const Field f = sample(g, [](double, double y) { return 1.0 + std::cos(2 * y); });
    CHECK(max_abs(hilbert_x(f)) < 1e-15);
    CHECK(max_abs(frac_deriv_x(f, -0.7)) < 1e-15);
    CHECK(max_abs(frac_deriv_x(f, 0.0)) < 1e-15);
}

TEST_CASE("inverse x-derivatives need a zero x-mean") {
    const GridPtr g = make_grid(16, 16, 2 * kPi, 2 * kPi);
    CHECK_THROWS_AS(inv_dx(sample(g, [](double, double) { return 1.0; })), NonzeroXMean);
    CHECK_THROWS_AS(inv_dx(sample(g, [](double x, double y) { return std::cos(x) + 1e-6 * std::cos(y); })),
                    NonzeroXMean);
}

TEST_CASE("Nyquist modes are zeroed by every multiplier") {
    const GridPtr g = make_grid(8, 8, 2 * kPi, 2 * kPi);
    const Field f = sample(g, [](double x, double) { return std::cos(4 * x); });
    CHECK(max_abs(dx(f)) < 1e-15);
    CHECK(max_abs(bessel(f, 1.0, 1.0)) < 1e-15);
    const Field h = sample(g, [](double, double y) { return std::cos(4 * y); });
    CHECK(max_abs(dy(h)) < 1e-15);
}

TEST_CASE("composition laws on random fields") {
    const GridPtr g = make_grid(64, 64, 2 * kPi, 7.0);
    const Field f = random_field(g, 3);
    const Field hh = hilbert_x(hilbert_x(f));
    // H H = -(identity minus the kx = 0 plane), Nyquist excluded
    auto c = spectral_coeffs(f);
    const int nk = g->nkx();
    for (int m = 0; m < g->ny; ++m) {
        for (int j = 0; j < nk; ++j) {
            if (j == 0 || g->nyquist(j, m)) c[m * nk + j] = 0.0;
        }
    }
    const Field p = inverse(Field::spectral(g, c));
    CHECK(max_diff((-1.0) * hh, p) < 1e-12 * max_abs(p));
    auto q = spectral_coeffs(f);
    for (int m = 0; m < g->ny; ++m) {
        for (int j = 0; j < nk; ++j) {
            if (g->nyquist(j, m)) q[m * nk + j] = 0.0;
        }
    }
    const Field no_nyquist = inverse(Field::spectral(g, q));
    CHECK(max_diff(frac_deriv_x(frac_deriv_x(f, 0.7), -1.3), frac_deriv_x(f, -0.6)) < 1e-11 * max_abs(f));
    CHECK(max_diff(bessel(bessel(f, 1.5, -0.5), -1.5, 0.5), no_nyquist) < 1e-12 * max_abs(f));
}

TEST_CASE("every shipped symbol is Hermitian") {
    const GridPtr g = make_grid(32, 32, 2 * kPi, 3.0);
    for (const auto& m : {hilbert_symbol(), dx_symbol(), dy_symbol(), frac_deriv_symbol(1.3), frac_deriv_symbol(-0.4),
                          bessel_symbol(0.5, -1.0), bessel_iso_symbol(2.0)}) {
        CHECK(hermitian_defect(*g, m) < 1e-12);
    }
}

TEST_CASE("Bona-Smith smoothing") {
    const GridPtr g = make_grid(32, 32, 2 * kPi, 2 * kPi);
    const Field f = random_field(g, 11);
    CHECK(max_diff(bona_smith_smooth(f, 0.0, 1.0, 1.0), f) == 0.0);
    const Field c = sample(g, [](double x, double) { return std::cos(2 * x); });
    const double factor = std::exp(-0.3 * (std::sqrt(5.0) + 1.0));
    CHECK(max_diff(bona_smith_smooth(c, 0.3, 1.0, 1.0), factor * c) < 1e-15);
    CHECK_THROWS_AS((SmoothingParams{0.1, 0.2, 1.0, 1.0}.validate()), InvalidArgument);
}

TEST_CASE("snapshot files") {
    const auto dir = std::filesystem::temp_directory_path() / "frakzk_unit_snapshot";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "f.fzk").string();
    const GridPtr g = make_grid(16, 8, 2.5, 4.0);
    const Field f = random_field(g, 5);
    write_snapshot(path, f);
    CHECK(std::filesystem::file_size(path) == 32 + 8 * 16 * 8);

    std::ifstream in(path, std::ios::binary);
    char magic[4];
    in.read(magic, 4);
    CHECK(std::string(magic, 4) == "FZK1");
    std::uint32_t nx = 0, ny = 0, pad = 1;
    double lx = 0, ly = 0, first = 0;
    in.read(reinterpret_cast<char*>(&nx), 4);
    in.read(reinterpret_cast<char*>(&ny), 4);
    in.read(reinterpret_cast<char*>(&pad), 4);
    in.read(reinterpret_cast<char*>(&lx), 8);
    in.read(reinterpret_cast<char*>(&ly), 8);
    in.read(reinterpret_cast<char*>(&first), 8);
    CHECK(nx == 16);
    CHECK(ny == 8);
    CHECK(pad == 0);
    CHECK(lx == 2.5);
    CHECK(ly == 4.0);
    CHECK(first == f.samples()[0]);

    const Field back = read_snapshot(path);
    CHECK(back.grid()->same_as(*g));
    CHECK(back.samples() == f.samples());
    const SnapshotInfo info = snapshot_info(path);
    CHECK(info.nx == 16);

    std::filesystem::resize_file(path, 100);
    CHECK_THROWS_AS(read_snapshot(path), SnapshotError);
    std::ofstream(path, std::ios::binary) << "ZZZZ0000000000000000000000000000";
    CHECK_THROWS_AS(read_snapshot(path), SnapshotError);
}
