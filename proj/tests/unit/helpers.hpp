#pragma once

#include "frakzk/field.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace fzk::test {

inline constexpr double kPi = std::numbers::pi;

/// Samples f(x, y) on the grid.
inline Field sample(const GridPtr& g, const std::function<double(double, double)>& f) {
    std::vector<double> s(g->n_phys());
    for (int m = 0; m < g->ny; ++m) {
        for (int j = 0; j < g->nx; ++j) s[static_cast<std::size_t>(m) * g->nx + j] = f(g->x(j), g->y(m));
    }
    return Field::physical(g, std::move(s));
}

/// Largest absolute sample difference.
inline double max_diff(const Field& a, const Field& b) {
    const auto u = physical_samples(a), v = physical_samples(b);
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) d = std::max(d, std::abs(u[i] - v[i]));
    return d;
}

inline double max_abs(const Field& a) {
    double d = 0.0;
    for (double v : physical_samples(a)) d = std::max(d, std::abs(v));
    return d;
}

/// Uniform random samples, a white field.
inline Field random_field(const GridPtr& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> s(g->n_phys());
    for (double& v : s) v = u(rng);
    return Field::physical(g, std::move(s));
}

} // namespace fzk::test
