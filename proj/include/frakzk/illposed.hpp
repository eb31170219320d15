#pragma once

#include "frakzk/sparse_spectrum.hpp"

#include <string>
#include <vector>

namespace fzk {

struct FrequencyBox {
    double xi_lo = 0.0, xi_hi = 0.0, eta_lo = 0.0, eta_hi = 0.0;

    double area() const { return (xi_hi - xi_lo) * (eta_hi - eta_lo); }
    bool contains(double xi, double eta) const {
        return xi >= xi_lo && xi <= xi_hi && eta >= eta_lo && eta <= eta_hi;
    }
    void validate() const;
};

/// Minkowski sum of two boxes.
FrequencyBox operator+(const FrequencyBox& a, const FrequencyBox& b);

enum class WeightRule {
    product,   ///< N^{-s1 - (3 - alpha) s2 / 2}
    balanced,  ///< (<N>^{2 s1} + <eta0>^{2 s2})^{-1/2}, the inverse norm weight at the D2 corner
};

struct CounterexampleParams {
    double alpha = -1.0;
    double theta = 1.0;
    double gamma = 0.0;
    double bigN = 0.0;
    double eps = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double weight2 = 1.0;
    WeightRule rule = WeightRule::product;
    FrequencyBox d1, d2;

    void validate() const;
    double amp1() const;   ///< gamma^{-3/2}
    double amp2() const;   ///< gamma^{-3/2} weight2
    double eta0() const { return d2.eta_lo; }
};

/// Parameters with gamma = N^{-(1+eps)/2} and the continuum boxes.
CounterexampleParams make_counterexample(double alpha, double bigN, double eps, double s1, double s2,
                                         WeightRule rule = WeightRule::product);

/// Lattice on which the boxes tile exactly into cells of size dxi x deta:
/// D1 gets m x m cells, D2 gets 2m x 3m cells.
struct BoxLattice {
    double dxi = 0.0;
    double deta = 0.0;
};
BoxLattice box_lattice(const CounterexampleParams& p, int cells_per_side);

/// Moves the box edges onto the lattice lines (D2's lower corner is rounded).
CounterexampleParams snap_to_lattice(const CounterexampleParams& p, const BoxLattice& lat);

/// Resonance function on the positive branch xi, xi1, xi - xi1 > 0, in a form
/// that avoids cancellation between the large eta^2 terms.
double resonance_chi(double xi, double xi1, double eta, double eta1, double theta);
/// Same function for arbitrary signs, from the dispersion relation directly.
double resonance_chi_general(double xi, double xi1, double eta, double eta1, double theta);
/// Sum of magnitudes of the terms of chi, a natural scale for round-off.
double resonance_scale(double xi, double xi1, double eta, double eta1, double theta);

/// Both eta roots of chi = 0 at fixed (xi, xi1, eta1) from the closed form;
/// returns false when they are not real.
bool resonance_eta_roots(double xi, double xi1, double eta1, double theta, double& lo, double& hi);

/// (e^{i t chi} - 1)/(i chi) in the stable form t e^{i t chi/2} sinc(t chi/2).
cplx duhamel_kernel(double t, double chi);
/// The same quantity evaluated literally.
cplx duhamel_kernel_naive(double t, double chi);

struct ChiScan {
    double max_abs_chi = 0.0;
    double ratio_to_gamma2N = 0.0;
    std::size_t samples = 0;
};

/// Quasi-random scan of |chi| over pairs (k1, k - k1) in boxes a x b and,
/// when swapped is true, also b x a.
ChiScan chi_scan(const CounterexampleParams& p, const FrequencyBox& a, const FrequencyBox& b,
                 std::size_t n_samples, bool swapped = true);
/// Mixed pairing D1 x D2 and D2 x D1.
ChiScan chi_bound_scan(const CounterexampleParams& p, std::size_t n_samples);

/// phi^ on the lattice: amplitude gamma^{-3/2} on D1 and gamma^{-3/2} w2 on
/// D2, one point per cell centre. Throws BoxUnresolvable when a box side has
/// fewer than four cells.
SparseSpectrum build_phi_hat(const CounterexampleParams& p, const BoxLattice& lat);

/// H^{s1,s2} norm of a sparse spectrum, mirrors included.
double sparse_norm(const SparseSpectrum& f, double s1, double s2);

struct F3Options {
    int inner_order = 12;      ///< starting Gauss-Legendre order per axis
    int max_inner_order = 96;
    double rel_tol = 1e-6;     ///< chi carries round-off of order N^3 ulp(N) at large N
};

/// f3^(t, xi, eta): the mixed-pairing part of the quadratic Duhamel term at
/// a point of D1 + D2, both orderings summed, unitary normalization.
cplx eval_f3_hat(double t, double xi, double eta, const CounterexampleParams& p, const F3Options& opt = {});

/// Same-box parts f1 (D1 x D1) and f2 (D2 x D2) at a point of 2 D1 or 2 D2.
cplx eval_same_box_hat(double t, double xi, double eta, const CounterexampleParams& p, int box,
                       const F3Options& opt = {});

/// H^{s1,s2} norm of f3 over D1 + D2, with out_order Gauss points per axis
/// on each of the nine smooth cells of the region.
double f3_norm(double t, const CounterexampleParams& p, int out_order = 10, const F3Options& opt = {});

struct SweepRow {
    double bigN = 0.0, gamma = 0.0, eps = 0.0;
    double max_abs_chi = 0.0, chi_ratio = 0.0, f3_norm = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    double expected_slope = 0.0;   ///< (1 - 3 eps)/4
};

/// Fitted exponent of ||f3(t)|| against N over a geometric list.
SweepResult growth_sweep(double alpha, double eps, double s1, double s2, WeightRule rule,
                         const std::vector<double>& n_list, double t = 1.0, std::size_t chi_samples = 10000,
                         int out_order = 10);

} // namespace fzk
