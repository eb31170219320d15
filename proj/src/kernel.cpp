#include "frakzk/kernel.hpp"

#include "frakzk/errors.hpp"
#include "frakzk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fzk {

namespace {

using std::numbers::pi;

// Integrand of the reduced theta-integral on the positive half line,
// continued analytically to theta = r e^{-i phi}. Negative theta contributes
// the complex conjugate, so the kernel is twice the real part.
struct Reduced {
    double alpha, beta, sigma;
    double X, Y;      // scaled x and y^2 terms (bare kernel)
    double s;         // t^{-1/3}
    double t, y;
    double lead;      // exponent of the algebraic factor at theta -> 0

    cplx eval(cplx th) const {
        const cplx cubic = cplx(0.0, 1.0) * (-th * th * th + X * th);
        if (sigma == 0.0) {
            const cplx w = std::pow(th, beta - 0.5 * alpha);
            const cplx ph = alpha == 0.0 ? cplx(0.0, Y) : cplx(0.0, Y) * std::pow(th, -alpha);
            return w * std::exp(cubic + ph - cplx(0.0, 0.25 * pi));
        }
        const double b = 0.5 * sigma * sigma;
        const cplx d = b + cplx(0.0, t * std::pow(s, alpha)) * (alpha == 0.0 ? cplx(1.0) : std::pow(th, alpha));
        const cplx w = std::pow(th, beta) * std::sqrt(pi / d);
        const cplx g = -b * s * s * th * th - y * y / (4.0 * d);
        return w * std::exp(cubic + g);
    }

    // log of |integrand| with the algebraic factor r^lead removed.
    double log_envelope(double r, double phi) const {
        const cplx th = std::polar(r, -phi);
        return std::log(std::abs(eval(th))) - lead * std::log(r);
    }
};

} // namespace

KernelValue kernel_reduced(double t, double x, double y, double beta, const DispersionSpec& spec,
                           const KernelOptions& opt) {
    spec.validate();
    if (t == 0.0) throw InvalidArgument("kernel is singular at t = 0");
    if (!(opt.sigma >= 0.0)) throw InvalidArgument("sigma must be nonnegative");
    if (!(beta > spec.alpha / 2.0 - 1.0)) throw InvalidArgument("beta below the integrability bound");
    if (t < 0.0) {
        // K_{-t}(x, y) = K_t(-x, -y) because the symbol is odd in (kx, ky).
        t = -t;
        x = -x;
        y = -y;
    }
    const double alpha = spec.alpha;
    Reduced f;
    f.alpha = alpha;
    f.beta = beta;
    f.sigma = opt.sigma;
    f.s = std::cbrt(1.0 / t);
    f.X = x * f.s;
    f.Y = y * y * std::pow(t, alpha / 3.0 - 1.0) / 4.0;
    f.t = t;
    f.y = y;
    if (opt.sigma == 0.0 || alpha < 0.0) {
        f.lead = beta - 0.5 * alpha;
    } else {
        f.lead = beta;
    }

    // Pick the steepest ray angle whose envelope never exceeds the real-axis
    // envelope by more than a factor e^{1.5}; the cubic term then forces
    // super-exponential decay along the ray.
    const double phi0 = pi / 6.0;
    double phi = 0.0;
    std::vector<double> probe_r;
    for (double r = 0.02; r < 12.0; r *= 1.08) probe_r.push_back(r);
    double env0 = -1e300;
    for (double r : probe_r) env0 = std::max(env0, f.log_envelope(r, 0.0));
    for (int k = 0; k <= 10; ++k) {
        const double cand = phi0 / std::pow(2.0, k);
        double worst = -1e300;
        for (double r : probe_r) worst = std::max(worst, f.log_envelope(r, cand));
        if (worst <= env0 + 1.5) {
            phi = cand;
            break;
        }
    }
    if (phi == 0.0) throw QuadratureError("no admissible integration ray");

    // Upper limit: beyond every interior maximum and far into the decay.
    double r_hi = 1.0;
    {
        double peak = -1e300;
        for (double r : probe_r) peak = std::max(peak, f.log_envelope(r, phi));
        const double cut = peak + std::log(1e-17);
        double r = 1.0;
        while (r < 1e4) {
            if (f.log_envelope(r, phi) + f.lead * std::log(r) < cut && 3.0 * r * r > std::abs(f.X) + 1.0) break;
            r *= 1.05;
        }
        r_hi = r;
    }

    const cplx rot = std::polar(1.0, -phi);
    const double r1 = std::min(1.0, r_hi);
    const double q1 = f.lead + 1.0;   // in (0, 2)
    // On [0, r1] substitute r = r1 u^{1/q1} so the algebraic factor becomes flat.
    auto near = [&](double u) -> cplx {
        if (u <= 0.0) return 0.0;
        const double r = r1 * std::pow(u, 1.0 / q1);
        const cplx th = r * rot;
        // d r = r1 / q1 u^{1/q1 - 1} du and the integrand carries r^lead.
        const double jac = r1 / q1 * std::pow(u, 1.0 / q1 - 1.0);
        return f.eval(th) * rot * jac;
    };
    auto far = [&](double r) -> cplx { return f.eval(r * rot) * rot; };

    std::vector<double> bp_near;
    for (int i = 0; i <= 8; ++i) bp_near.push_back(i / 8.0);
    std::vector<double> bp_far{r1};
    for (double r = r1; r < r_hi;) {
        const double step = std::min(0.5, pi / (3.0 * r * r + std::abs(f.X) + 1.0));
        r = std::min(r_hi, r + step);
        bp_far.push_back(r);
    }

    const int budget = opt.max_evaluations;
    QuadResult a = integrate_gk(near, bp_near, opt.rel_tol, 0.5 * opt.abs_tol, budget / 2);
    QuadResult b = integrate_gk(far, bp_far, opt.rel_tol, 0.5 * opt.abs_tol, budget - a.evaluations);
    const int evals = a.evaluations + b.evaluations;
    const cplx integral = a.value + b.value;
    const double err = a.abs_err + b.abs_err;
    if (!(a.converged && b.converged) && err > 1e3 * std::max(opt.abs_tol, opt.rel_tol * std::abs(integral))) {
        throw QuadratureError("kernel quadrature did not converge within " + std::to_string(budget) +
                              " evaluations (error estimate " + std::to_string(err) + ")");
    }

    double pref;
    if (opt.sigma == 0.0) {
        pref = std::sqrt(pi) * std::pow(t, -(5.0 + 2.0 * beta - alpha) / 6.0);
    } else {
        pref = 2.0 * pi * opt.sigma * opt.sigma * std::pow(f.s, beta + 1.0);
    }
    pref /= 4.0 * pi * pi;
    KernelValue kv;
    kv.value = pref * 2.0 * integral.real();
    kv.abs_err = pref * 2.0 * err;
    kv.evaluations = evals;
    return kv;
}

} // namespace fzk
