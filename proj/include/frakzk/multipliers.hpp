#pragma once

#include "frakzk/field.hpp"

#include <functional>
#include <optional>
#include <string>

namespace fzk {

/// Fourier multiplier m(kx, ky) with explicit values on the axes where the
/// formula is singular or ambiguous.
struct MultiplierSpec {
    std::function<cplx(double kx, double ky)> symbol;
    std::optional<cplx> at_kx0;   ///< value used on the kx = 0 plane
    std::optional<cplx> at_ky0;   ///< value used on the ky = 0 line (kx != 0)
    std::string name = "multiplier";

    cplx at(double kx, double ky) const;
};

/// Multiply every coefficient by the symbol. Nyquist lines are zeroed.
/// The result keeps the representation of the input.
Field apply_multiplier(const Field& f, const MultiplierSpec& m);

/// Checks m(-k) = conj(m(k)) on the lattice; returns the worst mismatch.
double hermitian_defect(const SpectralGrid& g, const MultiplierSpec& m);

double sgn(double v);
/// |v|^a with the convention |0|^a = 0 for every a.
double abs_pow(double v, double a);
/// <v>^s = (1 + v^2)^{s/2}.
double japanese(double v, double s);

MultiplierSpec hilbert_symbol();
MultiplierSpec dx_symbol();
MultiplierSpec dy_symbol();
MultiplierSpec frac_deriv_symbol(double a);
MultiplierSpec bessel_symbol(double sx, double sy);
MultiplierSpec bessel_iso_symbol(double s);

Field hilbert_x(const Field& f);
Field dx(const Field& f);
Field dy(const Field& f);
/// D_x^a, symbol |kx|^a, a in [-2, 2].
Field frac_deriv_x(const Field& f, double a);
/// J_x^{sx} J_y^{sy}.
Field bessel(const Field& f, double sx, double sy);
/// Isotropic J^s, symbol (1 + kx^2 + ky^2)^{s/2}.
Field bessel_iso(const Field& f, double s);

/// Relative tolerance for the kx = 0 content in inverse x-derivatives.
inline constexpr double kXMeanTol = 1e-10;

/// L2 norm of the kx = 0 plane relative to the full L2 norm.
double x_mean_fraction(const Field& f, bool skip_ky0 = false);
/// Throws NonzeroXMean if the kx = 0 plane carries content.
void require_zero_x_mean(const Field& f, bool skip_ky0, const char* who);

/// Antiderivative in x, symbol 1/(i kx).
Field inv_dx(const Field& f);
/// d_x^{-1} d_y, symbol ky/kx.
Field inv_dx_dy(const Field& f);

struct SmoothingParams {
    double tau = 0.0;
    double theta_smooth = 0.0;
    double s1 = 1.0;
    double s2 = 1.0;

    void validate() const;
};

/// Multiplier exp(-tau (<kx>^{s1} + <ky>^{s2})).
Field bona_smith_smooth(const Field& f, const SmoothingParams& p);
/// Same smoothing with an explicit tau, ignoring p.tau.
Field bona_smith_smooth(const Field& f, double tau, double s1, double s2);

} // namespace fzk
