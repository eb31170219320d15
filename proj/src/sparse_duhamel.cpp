#include "frakzk/sparse_duhamel.hpp"

#include "frakzk/errors.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

namespace fzk {

void SparseSpectrum::push(std::int64_t ii, std::int64_t mm, cplx v) {
    i.push_back(ii);
    m.push_back(mm);
    value.push_back(v);
}

SparseSpectrum SparseSpectrum::with_mirrors() const {
    SparseSpectrum out;
    out.dxi = dxi;
    out.deta = deta;
    out.cell_area = cell_area;
    for (std::size_t k = 0; k < size(); ++k) {
        out.push(i[k], m[k], value[k]);
        if (i[k] != 0 || m[k] != 0) out.push(-i[k], -m[k], std::conj(value[k]));
    }
    return out;
}

std::vector<cplx> sparse_duhamel_quadratic(const SparseSpectrum& phi, double t, const DispersionSpec& spec,
                                           const std::vector<std::pair<std::int64_t, std::int64_t>>& outputs,
                                           int quad_steps) {
    spec.validate();
    if (quad_steps < 2 || quad_steps % 2 != 0) throw InvalidArgument("Simpson rule needs an even step count");
    const SparseSpectrum full = phi.with_mirrors();
    const std::size_t ns = full.size();
    std::unordered_map<LatticePoint, std::size_t, LatticeHash> where;
    where.reserve(2 * ns);
    for (std::size_t k = 0; k < ns; ++k) where[{full.i[k], full.m[k]}] = k;

    std::vector<double> theta(ns);
    for (std::size_t k = 0; k < ns; ++k) theta[k] = phase(full.xi(k), full.eta(k), spec);

    // Pairs (k1, k2) of support points summing to each output position.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pairs(outputs.size());
    for (std::size_t o = 0; o < outputs.size(); ++o) {
        for (std::size_t k = 0; k < ns; ++k) {
            auto it = where.find({outputs[o].first - full.i[k], outputs[o].second - full.m[k]});
            if (it != where.end()) pairs[o].emplace_back(static_cast<std::uint32_t>(k),
                                                         static_cast<std::uint32_t>(it->second));
        }
    }

    const double cell = full.cell() / (2.0 * std::numbers::pi);
    const double h = t / quad_steps;
    std::vector<cplx> v(ns);
    std::vector<cplx> out(outputs.size(), cplx{});
    std::vector<double> out_theta(outputs.size());
    for (std::size_t o = 0; o < outputs.size(); ++o) {
        out_theta[o] = phase(outputs[o].first * full.dxi, outputs[o].second * full.deta, spec);
    }
    for (int q = 0; q <= quad_steps; ++q) {
        const double s = q * h;
        const double w = (q == 0 || q == quad_steps) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
        for (std::size_t k = 0; k < ns; ++k) v[k] = full.value[k] * std::polar(1.0, -s * theta[k]);
        for (std::size_t o = 0; o < outputs.size(); ++o) {
            cplx conv = 0.0;
            for (const auto& [a, b] : pairs[o]) conv += v[a] * v[b];
            const double xi = outputs[o].first * full.dxi;
            const cplx nl = cplx(0.0, 0.5 * xi) * conv * cell;
            out[o] += w * std::polar(1.0, -(t - s) * out_theta[o]) * nl;
        }
    }
    for (auto& x : out) x *= h / 3.0;
    return out;
}

} // namespace fzk
