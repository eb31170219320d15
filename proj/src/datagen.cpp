#include "frakzk/datagen.hpp"

#include "frakzk/errors.hpp"
#include "frakzk/fft.hpp"
#include "frakzk/illposed.hpp"
#include "frakzk/snapshot.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <map>
#include <set>

namespace fzk {

namespace {

using nlohmann::json;

void check_keys(const json& params, const std::string& kind) {
    if (!params.is_object()) throw InvalidArgument("data parameters must be a JSON object");
    const auto& allowed = data_kind_keys(kind);
    for (const auto& [key, value] : params.items()) {
        if (key == "kind") continue;
        if (!allowed.count(key)) throw InvalidArgument("unknown key '" + key + "' for data kind '" + kind + "'");
    }
}

template <class T>
T get_or(const json& params, const char* key, T fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    return it->get<T>();
}

// Distance to x0 through the nearest periodic image.
double periodic_offset(double x, double x0, double l) {
    double d = std::fmod(x - x0, l);
    if (d > 0.5 * l) d -= l;
    if (d < -0.5 * l) d += l;
    return d;
}

Field finish(Field f, bool zero_x_mean) {
    if (zero_x_mean) f = project_zero_x_mean(f);
    return f.is_physical() ? f : inverse(f);
}

Field scale_to_peak(Field f, double amplitude) {
    auto u = physical_samples(f);
    double peak = 0.0;
    for (double v : u) peak = std::max(peak, std::abs(v));
    if (peak > 0.0) {
        for (double& v : u) v *= amplitude / peak;
    }
    return Field::physical(f.grid(), std::move(u));
}

Field gaussian(const json& p, const GridPtr& grid) {
    check_keys(p, "gaussian");
    const SpectralGrid& g = *grid;
    const double a = get_or(p, "amplitude", 1.0);
    const double x0 = get_or(p, "x0", 0.5 * g.lx), y0 = get_or(p, "y0", 0.5 * g.ly);
    const double sx = get_or(p, "sx", 1.0), sy = get_or(p, "sy", 1.0);
    if (!(sx > 0.0) || !(sy > 0.0)) throw InvalidArgument("gaussian widths must be positive");
    std::vector<double> u(g.n_phys());
    for (int m = 0; m < g.ny; ++m) {
        const double dy = periodic_offset(g.y(m), y0, g.ly);
        for (int j = 0; j < g.nx; ++j) {
            const double dx = periodic_offset(g.x(j), x0, g.lx);
            u[static_cast<std::size_t>(m) * g.nx + j] = a * std::exp(-0.5 * (dx * dx / (sx * sx) + dy * dy / (sy * sy)));
        }
    }
    return finish(Field::physical(grid, std::move(u)), get_or(p, "zero_x_mean", false));
}

Field noise(const json& p, const GridPtr& grid, std::uint64_t seed) {
    check_keys(p, "noise");
    const SpectralGrid& g = *grid;
    const double l2 = get_or(p, "amplitude", 1.0);
    const double kmax = get_or(p, "kmax", 8.0);
    const double decay = get_or(p, "decay", 0.0);
    const bool zxm = get_or(p, "zero_x_mean", false);
    const double dkx = 2.0 * std::numbers::pi / g.lx, dky = 2.0 * std::numbers::pi / g.ly;
    const int jmax = static_cast<int>(std::floor(kmax / dkx));
    const int mmax = static_cast<int>(std::floor(kmax / dky));
    if (jmax >= g.nx / 2 || mmax >= g.ny / 2) throw InvalidArgument("noise kmax is not resolved by the grid");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int nk = g.nkx();
    std::vector<cplx> c(g.n_spec(), 0.0);
    for (int j = 0; j <= jmax; ++j) {
        for (int m = -mmax; m <= mmax; ++m) {
            const double re = normal(rng), im = normal(rng);
            if (j == 0 && m <= 0) continue;
            const double kx = j * dkx, ky = m * dky;
            const double k2 = kx * kx + ky * ky;
            if (k2 > kmax * kmax) continue;
            if (j == 0 && zxm) continue;
            const cplx v = cplx(re, im) * std::pow(1.0 + k2, -0.5 * decay);
            const int row = (m + g.ny) % g.ny;
            c[static_cast<std::size_t>(row) * nk + j] = v;
            if (j == 0) c[static_cast<std::size_t>((g.ny - m) % g.ny) * nk] = std::conj(v);
        }
    }
    const double norm2 = g.lx * g.ly * half_sum(g, c.data(), [](int, int) { return 1.0; });
    if (norm2 > 0.0) {
        for (auto& v : c) v *= l2 / std::sqrt(norm2);
    }
    return inverse(Field::spectral(grid, std::move(c)));
}

Field bump(const json& p, const GridPtr& grid) {
    check_keys(p, "bump");
    const SpectralGrid& g = *grid;
    const double a = get_or(p, "amplitude", 1.0);
    const double x0 = get_or(p, "x0", 0.5 * g.lx), y0 = get_or(p, "y0", 0.5 * g.ly);
    const double kmax = get_or(p, "kmax", 2.5);
    const double power = get_or(p, "power", 2.0);
    if (!(kmax > 0.0) || !(power >= 0.0)) throw InvalidArgument("bump needs kmax > 0 and power >= 0");
    const int nk = g.nkx();
    std::vector<cplx> c(g.n_spec(), 0.0);
    for (int m = 0; m < g.ny; ++m) {
        for (int j = 0; j < nk; ++j) {
            if (g.nyquist(j, m)) continue;
            const double kx = g.kx[j], ky = g.ky[m];
            const double r = 1.0 - (kx * kx + ky * ky) / (kmax * kmax);
            if (r <= 0.0) continue;
            c[static_cast<std::size_t>(m) * nk + j] = std::pow(r, power) * std::polar(1.0, -(kx * x0 + ky * y0));
        }
    }
    Field f = finish(Field::spectral(grid, std::move(c)), get_or(p, "zero_x_mean", false));
    return scale_to_peak(f, a);
}

Field boxes(const json& p, const GridPtr& grid) {
    check_keys(p, "boxes");
    const SpectralGrid& g = *grid;
    const std::string rule = get_or(p, "rule", std::string("product"));
    if (rule != "product" && rule != "balanced") throw InvalidArgument("rule must be 'product' or 'balanced'");
    const CounterexampleParams cp =
        make_counterexample(get_or(p, "alpha", -1.0), get_or(p, "N", 2.0), get_or(p, "eps", 0.01),
                            get_or(p, "s1", 0.0), get_or(p, "s2", 0.0),
                            rule == "product" ? WeightRule::product : WeightRule::balanced);
    const double dkx = 2.0 * std::numbers::pi / g.lx, dky = 2.0 * std::numbers::pi / g.ly;
    const double to_coeff = 2.0 * std::numbers::pi / (g.lx * g.ly);
    const int nk = g.nkx();
    std::vector<cplx> c(g.n_spec(), 0.0);
    auto fill = [&](const FrequencyBox& b, double amp) {
        const int j0 = static_cast<int>(std::ceil(b.xi_lo / dkx)), j1 = static_cast<int>(std::ceil(b.xi_hi / dkx));
        const int m0 = static_cast<int>(std::ceil(b.eta_lo / dky)), m1 = static_cast<int>(std::ceil(b.eta_hi / dky));
        if (j1 - j0 < 4 || m1 - m0 < 4) throw BoxUnresolvable("grid places fewer than 4 modes on a box side");
        if (j0 < 1 || j1 > g.nx / 2 || m0 <= -g.ny / 2 || m1 > g.ny / 2) {
            throw BoxUnresolvable("box lies outside the resolved band of the grid");
        }
        for (int m = m0; m < m1; ++m) {
            for (int j = j0; j < j1; ++j) c[static_cast<std::size_t>((m + g.ny) % g.ny) * nk + j] = amp * to_coeff;
        }
    };
    fill(cp.d1, cp.amp1());
    fill(cp.d2, cp.amp2());
    return inverse(Field::spectral(grid, std::move(c)));
}

} // namespace

const std::set<std::string>& data_kind_keys(const std::string& kind) {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"gaussian", {"amplitude", "x0", "y0", "sx", "sy", "zero_x_mean"}},
        {"noise", {"amplitude", "kmax", "decay", "zero_x_mean"}},
        {"bump", {"amplitude", "x0", "y0", "kmax", "power", "zero_x_mean"}},
        {"boxes", {"alpha", "N", "eps", "s1", "s2", "rule"}},
        {"file", {"path"}},
    };
    auto it = keys.find(kind);
    if (it == keys.end()) throw InvalidArgument("unknown data kind '" + kind + "'");
    return it->second;
}

Field project_zero_x_mean(const Field& f) {
    const SpectralGrid& g = *f.grid();
    auto c = spectral_coeffs(f);
    const int nk = g.nkx();
    for (int m = 0; m < g.ny; ++m) c[static_cast<std::size_t>(m) * nk] = 0.0;
    Field out = Field::spectral(f.grid(), std::move(c));
    return f.is_physical() ? inverse(out) : out;
}

Field gen_data(const std::string& kind, const nlohmann::json& params, GridPtr grid, std::uint64_t seed) {
    if (!grid) throw InvalidArgument("gen_data needs a grid");
    if (kind == "gaussian") return gaussian(params, grid);
    if (kind == "noise") return noise(params, grid, seed);
    if (kind == "bump") return bump(params, grid);
    if (kind == "boxes") return boxes(params, grid);
    if (kind == "file") {
        check_keys(params, "file");
        if (!params.contains("path")) throw InvalidArgument("file data needs a path");
        Field f = read_snapshot(params.at("path").get<std::string>());
        if (!f.grid()->same_as(*grid)) throw SnapshotError("snapshot grid does not match the configured grid");
        return Field::physical(grid, f.samples());
    }
    throw InvalidArgument("unknown data kind '" + kind + "'");
}

Field gen_data(const nlohmann::json& params_with_kind, GridPtr grid, std::uint64_t seed) {
    if (!params_with_kind.is_object() || !params_with_kind.contains("kind")) {
        throw InvalidArgument("data block needs a 'kind'");
    }
    return gen_data(params_with_kind.at("kind").get<std::string>(), params_with_kind, std::move(grid), seed);
}

} // namespace fzk
