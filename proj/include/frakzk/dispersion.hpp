#pragma once

#include "frakzk/field.hpp"
#include "frakzk/multipliers.hpp"

#include <utility>
#include <vector>

namespace fzk {

struct DispersionSpec {
    double alpha = 1.0;

    void validate() const;
};

/// theta(kx, ky) = kx^3 + sgn(kx) |kx|^alpha ky^2.
double phase(double kx, double ky, const DispersionSpec& spec);

/// Symbol e^{-i t theta} of the linear group.
MultiplierSpec group_symbol(double t, const DispersionSpec& spec);

/// W(t) psi; the result keeps the representation of psi.
Field apply_group(const Field& psi, double t, const DispersionSpec& spec);

struct DecayProbe {
    double beta = 0.0;
    std::vector<double> times;
    /// When false, beta only needs beta > alpha/2 - 1 so that the decay
    /// exponent can be probed at the upper edge and beyond.
    bool strict_beta = true;

    void validate(const DispersionSpec& spec) const;
};

/// Largest |k| whose coefficient exceeds rel_floor times the peak coefficient.
double spectral_radius(const Field& f, double rel_floor = 1e-12);

/// Sup of |psi| outside the central quarter of the box, relative to the peak.
double outer_fraction(const Field& f);

/// Front position bound: the data is localized and 3 kmax^2 t stays below
/// half the shorter side minus ten cells. Throws WrapAroundRisk otherwise.
void check_horizon(const Field& psi, double t_max, double* kmax_out = nullptr);

/// Sup norms of D_x^beta W(t) psi over the grid at each probe time.
std::vector<std::pair<double, double>> decay_sup_norm(const Field& psi, const DecayProbe& probe,
                                                      const DispersionSpec& spec);

/// Least-squares fit of log y = a + b log x; returns slope, intercept and the
/// root-mean-square residual in log space.
struct LogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};
LogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

} // namespace fzk
