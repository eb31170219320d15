#pragma once

#include "frakzk/dispersion.hpp"
#include "frakzk/field.hpp"

#include <functional>
#include <string>
#include <vector>

namespace fzk {

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    int snapshot_stride = 100;
    double dealias = 2.0 / 3.0;
    long max_steps = 100000000;

    void validate() const;
    long steps() const;
};

struct Diagnostics {
    long step = 0;
    double t = 0.0;
    double l2 = 0.0;
    double mass = 0.0;
    double hamiltonian = 0.0;
    double sup_u = 0.0;
    double sup_ux = 0.0;
    double sup_uy = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Field> states;
    std::vector<Diagnostics> diagnostics;

    double l2_drift() const;
    double mass_drift() const;
    double hamiltonian_drift() const;
};

/// Diagnostics of a single state.
Diagnostics diagnose(const Field& u, const DispersionSpec& spec);

/// H(u) = integral of -u_x^2/2 - (D_x^{(alpha-1)/2} u_y)^2/2 + u^3/6.
double hamiltonian(const Field& u, const DispersionSpec& spec);
/// Integral of u over the box.
double mass(const Field& u);
/// L2 norm of u from Parseval.
double l2_norm(const Field& u);

/// Pseudospectral u u_x = d_x(u^2/2) with the square formed from the
/// dealiased spectrum and the output truncated identically.
Field nonlinear_term(const Field& u, double dealias = 2.0 / 3.0);

/// Integrating-factor RK4 stepper with reusable scratch buffers.
class Stepper {
public:
    Stepper(GridPtr grid, DispersionSpec spec, double dealias = 2.0 / 3.0);

    /// Advances the half spectrum c by dt in place.
    void step(std::vector<cplx>& c, double dt);
    /// Largest |kx| kept by the dealiasing mask.
    double kx_max() const { return kx_max_; }
    /// dt bound c_stab/(max|u| kx_max) for the given spectrum.
    double stable_dt(const std::vector<cplx>& c);
    /// d_x(u^2/2) of the dealiased spectrum c, written to out.
    void nonlinear(const std::vector<cplx>& c, std::vector<cplx>& out);
    /// Applies the dealiasing mask in place.
    void truncate(std::vector<cplx>& c) const;
    const std::vector<double>& theta() const { return theta_; }

    static constexpr double kStabilityConstant = 2.8;

private:
    GridPtr g_;
    DispersionSpec spec_;
    double kx_max_ = 0.0;
    std::vector<double> theta_;
    std::vector<unsigned char> keep_;
    std::vector<double> phys_;
    std::vector<cplx> spec_buf_;
    std::vector<cplx> a_, b_, cc_, d_, tmp_;
    std::vector<cplx> e_full_, e_half_;
    double cached_dt_ = 0.0;
};

/// One IF-RK4 step; throws StabilityBudgetExceeded when dt is too large.
Field step_ifrk4(const Field& u, double dt, const DispersionSpec& spec, double dealias = 2.0 / 3.0);

/// Called after each recorded snapshot; may stream it to disk.
using SnapshotSink = std::function<void(std::size_t index, const Field& state, const Diagnostics& d)>;

Trajectory evolve(const Field& psi, const SolverConfig& cfg, const DispersionSpec& spec,
                  const SnapshotSink& sink = {});

/// Final state only, without storing intermediate snapshots.
Field evolve_to(const Field& psi, const SolverConfig& cfg, const DispersionSpec& spec);

/// u^{(n)}(t) of the Duhamel iteration u = W(t)psi + int_0^t W(t-s)(u u_x)(s) ds,
/// the time integral taken on quad_steps uniform panels.
Field picard_iterate(const Field& psi, int n, double t, const DispersionSpec& spec, int quad_steps,
                     double dealias = 2.0 / 3.0);

/// Space reflection (x, y) -> (-x, -y) on the lattice.
Field reflect(const Field& f);

} // namespace fzk
