#include "frakzk/illposed.hpp"

#include "frakzk/dispersion.hpp"
#include "frakzk/errors.hpp"
#include "frakzk/multipliers.hpp"
#include "frakzk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace fzk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GaussRule {
    std::vector<double> x, w;
};

const GaussRule& gauss_rule(int n) {
    thread_local std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        GaussRule r;
        gauss_legendre(n, r.x, r.w);
        it = cache.emplace(n, std::move(r)).first;
    }
    return it->second;
}

double radical_inverse(std::uint64_t index, std::uint64_t base) {
    double inv = 1.0 / static_cast<double>(base);
    double f = inv, r = 0.0;
    while (index > 0) {
        r += f * static_cast<double>(index % base);
        index /= base;
        f *= inv;
    }
    return r;
}

// Tensor Gauss-Legendre rule of order n on a rectangle.
template <class F>
cplx rect_gauss(const F& f, double x0, double x1, double y0, double y1, int n) {
    const GaussRule& g = gauss_rule(n);
    const double hx = 0.5 * (x1 - x0), cx = 0.5 * (x1 + x0);
    const double hy = 0.5 * (y1 - y0), cy = 0.5 * (y1 + y0);
    cplx sum = 0.0;
    for (int a = 0; a < n; ++a) {
        const double x = cx + hx * g.x[a];
        cplx row = 0.0;
        for (int b = 0; b < n; ++b) row += g.w[b] * f(x, cy + hy * g.x[b]);
        sum += g.w[a] * row;
    }
    return sum * hx * hy;
}

// Integral of the Duhamel kernel over the k1 in a with k - k1 in b; the
// order doubles until two successive estimates agree.
cplx pairing_integral(double t, double xi, double eta, const FrequencyBox& a, const FrequencyBox& b,
                      double theta, const F3Options& opt) {
    const double x0 = std::max(a.xi_lo, xi - b.xi_hi), x1 = std::min(a.xi_hi, xi - b.xi_lo);
    const double y0 = std::max(a.eta_lo, eta - b.eta_hi), y1 = std::min(a.eta_hi, eta - b.eta_lo);
    if (!(x1 > x0) || !(y1 > y0)) return 0.0;
    auto f = [&](double xi1, double eta1) { return duhamel_kernel(t, resonance_chi(xi, xi1, eta, eta1, theta)); };
    // |kernel| <= t bounds the integral by t * area. The kernel also moves by
    // up to t^2/2 per unit of chi, and chi itself is only known to a few ulp
    // of its largest term, which sets a round-off floor at large N.
    const double area = (x1 - x0) * (y1 - y0);
    const double chi_noise = 64.0 * std::numeric_limits<double>::epsilon() *
                             resonance_scale(xi, 0.5 * (x0 + x1), eta, 0.5 * (y0 + y1), theta);
    const double floor = opt.rel_tol * std::abs(t) * area + 0.5 * t * t * chi_noise * area;
    int n = opt.inner_order;
    cplx prev = rect_gauss(f, x0, x1, y0, y1, n);
    while (2 * n <= opt.max_inner_order) {
        n *= 2;
        const cplx next = rect_gauss(f, x0, x1, y0, y1, n);
        if (std::abs(next - prev) <= opt.rel_tol * std::abs(next) + floor) return next;
        prev = next;
    }
    throw QuadratureError("inner f3 quadrature did not converge within the order budget at xi = " +
                          std::to_string(xi) + ", eta = " + std::to_string(eta));
}

double weight_at(double xi, double eta, double s1, double s2) {
    return japanese(xi, 2.0 * s1) + japanese(eta, 2.0 * s2);
}

void check_positive_branch(double xi, double xi1) {
    if (!(xi1 > 0.0) || !(xi - xi1 > 0.0)) {
        throw InvalidArgument("resonance_chi needs xi1 > 0 and xi - xi1 > 0");
    }
}

} // namespace

void FrequencyBox::validate() const {
    if (!(xi_lo < xi_hi) || !(eta_lo < eta_hi)) throw InvalidArgument("frequency box must be nonempty");
}

FrequencyBox operator+(const FrequencyBox& a, const FrequencyBox& b) {
    return {a.xi_lo + b.xi_lo, a.xi_hi + b.xi_hi, a.eta_lo + b.eta_lo, a.eta_hi + b.eta_hi};
}

void CounterexampleParams::validate() const {
    if (!(alpha >= -1.0 && alpha < 0.0)) throw InvalidArgument("counterexample needs alpha in [-1, 0)");
    if (theta != -alpha) throw InvalidArgument("theta must equal -alpha");
    if (!(bigN > 1.0) || !(eps > 0.0)) throw InvalidArgument("counterexample needs N > 1 and eps > 0");
    const double g = std::pow(bigN, -(1.0 + eps) / 2.0);
    if (!(std::abs(gamma - g) <= 1e-12 * g)) throw InvalidArgument("gamma must equal N^{-(1+eps)/2}");
    d1.validate();
    d2.validate();
}

double CounterexampleParams::amp1() const { return std::pow(gamma, -1.5); }
double CounterexampleParams::amp2() const { return std::pow(gamma, -1.5) * weight2; }

CounterexampleParams make_counterexample(double alpha, double bigN, double eps, double s1, double s2,
                                         WeightRule rule) {
    CounterexampleParams p;
    p.alpha = alpha;
    p.theta = -alpha;
    p.bigN = bigN;
    p.eps = eps;
    p.s1 = s1;
    p.s2 = s2;
    p.rule = rule;
    if (!(alpha >= -1.0 && alpha < 0.0)) throw InvalidArgument("counterexample needs alpha in [-1, 0)");
    if (!(bigN > 1.0) || !(eps > 0.0)) throw InvalidArgument("counterexample needs N > 1 and eps > 0");
    const double g = std::pow(bigN, -(1.0 + eps) / 2.0);
    p.gamma = g;
    const double eta0 = std::sqrt(3.0 / p.theta) * std::pow(bigN, (3.0 + p.theta) / 2.0);
    p.d1 = {g / 2.0, g, -g * g / 6.0, g * g / 6.0};
    p.d2 = {bigN, bigN + g, eta0, eta0 + g * g};
    if (rule == WeightRule::product) {
        p.weight2 = std::pow(bigN, -s1 - (3.0 - alpha) / 2.0 * s2);
    } else {
        p.weight2 = 1.0 / std::sqrt(japanese(bigN, 2.0 * s1) + japanese(eta0, 2.0 * s2));
    }
    p.validate();
    return p;
}

BoxLattice box_lattice(const CounterexampleParams& p, int cells_per_side) {
    if (cells_per_side < 4 || cells_per_side % 2 != 0) {
        throw InvalidArgument("cells_per_side must be even and at least 4");
    }
    return {(p.d1.xi_hi - p.d1.xi_lo) / cells_per_side, (p.d1.eta_hi - p.d1.eta_lo) / cells_per_side};
}

CounterexampleParams snap_to_lattice(const CounterexampleParams& p, const BoxLattice& lat) {
    if (!(lat.dxi > 0.0) || !(lat.deta > 0.0)) throw InvalidArgument("lattice spacings must be positive");
    auto snap = [](const FrequencyBox& b, const BoxLattice& l) {
        FrequencyBox s;
        s.xi_lo = std::round(b.xi_lo / l.dxi) * l.dxi;
        s.xi_hi = s.xi_lo + std::round((b.xi_hi - b.xi_lo) / l.dxi) * l.dxi;
        s.eta_lo = std::round(b.eta_lo / l.deta) * l.deta;
        s.eta_hi = s.eta_lo + std::round((b.eta_hi - b.eta_lo) / l.deta) * l.deta;
        return s;
    };
    CounterexampleParams q = p;
    q.d1 = snap(p.d1, lat);
    q.d2 = snap(p.d2, lat);
    return q;
}

double resonance_chi(double xi, double xi1, double eta, double eta1, double theta) {
    check_positive_branch(xi, xi1);
    const double xi2 = xi - xi1, eta2 = eta - eta1;
    // a is the partner with the larger xi; the eta_a^2 terms are combined so
    // that only their small difference is formed.
    double a = xi1, b = xi2, ea = eta1, eb = eta2;
    if (b > a) {
        std::swap(a, b);
        std::swap(ea, eb);
    }
    return 3.0 * xi * xi1 * xi2 + ea * ea * std::pow(a, -theta) * std::expm1(-theta * std::log1p(b / a)) +
           (2.0 * ea * eb + eb * eb) * std::pow(xi, -theta) - eb * eb * std::pow(b, -theta);
}

double resonance_chi_general(double xi, double xi1, double eta, double eta1, double theta) {
    const DispersionSpec spec{-theta};
    return phase(xi, eta, spec) - phase(xi1, eta1, spec) - phase(xi - xi1, eta - eta1, spec);
}

double resonance_scale(double xi, double xi1, double eta, double eta1, double theta) {
    const double xi2 = xi - xi1, eta2 = eta - eta1;
    return std::abs(3.0 * xi * xi1 * xi2) + eta * eta * abs_pow(xi, -theta) + eta1 * eta1 * abs_pow(xi1, -theta) +
           eta2 * eta2 * abs_pow(xi2, -theta);
}

bool resonance_eta_roots(double xi, double xi1, double eta1, double theta, double& lo, double& hi) {
    check_positive_branch(xi, xi1);
    // chi = 0 multiplied by xi^t xi1^t xi2^t is A eta^2 + B eta + C = 0.
    const double xi2 = xi - xi1;
    const double pa = std::pow(xi, theta), p1 = std::pow(xi1, theta), p2 = std::pow(xi2, theta);
    const double A = p1 * (p2 - pa);
    const double B = 2.0 * eta1 * pa * p1;
    const double C = 3.0 * xi * xi1 * xi2 * pa * p1 * p2 - eta1 * eta1 * pa * p2 - eta1 * eta1 * pa * p1;
    if (A == 0.0) return false;
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return false;
    // Citardauq form for the root that would otherwise cancel.
    const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
    double r1 = q / A, r2 = (q != 0.0) ? C / q : r1;
    lo = std::min(r1, r2);
    hi = std::max(r1, r2);
    return true;
}

cplx duhamel_kernel(double t, double chi) {
    const double h = 0.5 * t * chi;
    const double sinc = (std::abs(h) < 1e-8) ? 1.0 - h * h / 6.0 : std::sin(h) / h;
    return t * std::polar(1.0, h) * sinc;
}

cplx duhamel_kernel_naive(double t, double chi) {
    return (std::exp(cplx(0.0, t * chi)) - 1.0) / cplx(0.0, chi);
}

ChiScan chi_scan(const CounterexampleParams& p, const FrequencyBox& a, const FrequencyBox& b, std::size_t n_samples,
                 bool swapped) {
    a.validate();
    b.validate();
    ChiScan out;
    auto sample = [&](const FrequencyBox& first, const FrequencyBox& second, std::uint64_t k) {
        const double xi1 = first.xi_lo + radical_inverse(k, 2) * (first.xi_hi - first.xi_lo);
        const double eta1 = first.eta_lo + radical_inverse(k, 3) * (first.eta_hi - first.eta_lo);
        const double xi2 = second.xi_lo + radical_inverse(k, 5) * (second.xi_hi - second.xi_lo);
        const double eta2 = second.eta_lo + radical_inverse(k, 7) * (second.eta_hi - second.eta_lo);
        const double chi = resonance_chi(xi1 + xi2, xi1, eta1 + eta2, eta1, p.theta);
        out.max_abs_chi = std::max(out.max_abs_chi, std::abs(chi));
        ++out.samples;
    };
    // Index 0 of the Halton sequence is the lower corner of both boxes.
    for (std::uint64_t k = 0; k < n_samples; ++k) {
        sample(a, b, k);
        if (swapped) sample(b, a, k);
    }
    out.ratio_to_gamma2N = out.max_abs_chi / (p.gamma * p.gamma * p.bigN);
    return out;
}

ChiScan chi_bound_scan(const CounterexampleParams& p, std::size_t n_samples) {
    p.validate();
    return chi_scan(p, p.d1, p.d2, n_samples, true);
}

SparseSpectrum build_phi_hat(const CounterexampleParams& p, const BoxLattice& lat) {
    if (!(lat.dxi > 0.0) || !(lat.deta > 0.0)) throw InvalidArgument("lattice spacings must be positive");
    // Indices count half cells: box edges sit on even indices and cell centres
    // on odd ones, so sums of two centres land back on the edge lattice.
    SparseSpectrum s;
    s.dxi = 0.5 * lat.dxi;
    s.deta = 0.5 * lat.deta;
    s.cell_area = lat.dxi * lat.deta;
    auto fill = [&](const FrequencyBox& box, double amp) {
        const auto i0 = static_cast<std::int64_t>(std::llround(box.xi_lo / lat.dxi));
        const auto i1 = static_cast<std::int64_t>(std::llround(box.xi_hi / lat.dxi));
        const auto m0 = static_cast<std::int64_t>(std::llround(box.eta_lo / lat.deta));
        const auto m1 = static_cast<std::int64_t>(std::llround(box.eta_hi / lat.deta));
        if (i1 - i0 < 4 || m1 - m0 < 4) throw BoxUnresolvable("lattice places fewer than 4 cells on a box side");
        if (i0 < 0) throw BoxUnresolvable("box reaches kx <= 0; mirrors would overlap");
        for (std::int64_t i = i0; i < i1; ++i)
            for (std::int64_t m = m0; m < m1; ++m) s.push(2 * i + 1, 2 * m + 1, amp);
    };
    fill(p.d1, p.amp1());
    fill(p.d2, p.amp2());
    return s;
}

double sparse_norm(const SparseSpectrum& f, double s1, double s2) {
    double sum = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double w = weight_at(f.xi(k), f.eta(k), s1, s2) * std::norm(f.value[k]);
        sum += (f.i[k] == 0 && f.m[k] == 0) ? w : 2.0 * w;
    }
    return std::sqrt(sum * f.cell());
}

cplx eval_f3_hat(double t, double xi, double eta, const CounterexampleParams& p, const F3Options& opt) {
    if (t == 0.0) return 0.0;
    const cplx inner = pairing_integral(t, xi, eta, p.d1, p.d2, p.theta, opt) +
                       pairing_integral(t, xi, eta, p.d2, p.d1, p.theta, opt);
    const cplx pre = cplx(0.0, xi / 2.0) / kTwoPi * std::polar(1.0, -t * phase(xi, eta, DispersionSpec{p.alpha}));
    return pre * p.amp1() * p.amp2() * inner;
}

cplx eval_same_box_hat(double t, double xi, double eta, const CounterexampleParams& p, int box, const F3Options& opt) {
    if (box != 1 && box != 2) throw InvalidArgument("box must be 1 or 2");
    if (t == 0.0) return 0.0;
    const FrequencyBox& b = (box == 1) ? p.d1 : p.d2;
    const double amp = (box == 1) ? p.amp1() : p.amp2();
    const cplx inner = pairing_integral(t, xi, eta, b, b, p.theta, opt);
    const cplx pre = cplx(0.0, xi / 2.0) / kTwoPi * std::polar(1.0, -t * phase(xi, eta, DispersionSpec{p.alpha}));
    return pre * amp * amp * inner;
}

double f3_norm(double t, const CounterexampleParams& p, int out_order, const F3Options& opt) {
    p.validate();
    if (out_order < 2) throw InvalidArgument("out_order must be at least 2");
    // f3 is piecewise smooth on D1 + D2 with kinks where the overlap
    // rectangle changes shape, i.e. at lo + min width and lo + max width.
    const double wx1 = p.d1.xi_hi - p.d1.xi_lo, wx2 = p.d2.xi_hi - p.d2.xi_lo;
    const double wy1 = p.d1.eta_hi - p.d1.eta_lo, wy2 = p.d2.eta_hi - p.d2.eta_lo;
    const FrequencyBox s = p.d1 + p.d2;
    const double xs[4] = {s.xi_lo, s.xi_lo + std::min(wx1, wx2), s.xi_lo + std::max(wx1, wx2), s.xi_hi};
    const double ys[4] = {s.eta_lo, s.eta_lo + std::min(wy1, wy2), s.eta_lo + std::max(wy1, wy2), s.eta_hi};
    const GaussRule& g = gauss_rule(out_order);
    double sum = 0.0;
    for (int cx = 0; cx < 3; ++cx) {
        for (int cy = 0; cy < 3; ++cy) {
            const double hx = 0.5 * (xs[cx + 1] - xs[cx]), mx = 0.5 * (xs[cx + 1] + xs[cx]);
            const double hy = 0.5 * (ys[cy + 1] - ys[cy]), my = 0.5 * (ys[cy + 1] + ys[cy]);
            if (hx <= 0.0 || hy <= 0.0) continue;
            for (int a = 0; a < out_order; ++a) {
                for (int b = 0; b < out_order; ++b) {
                    const double xi = mx + hx * g.x[a], eta = my + hy * g.x[b];
                    const double w = weight_at(xi, eta, p.s1, p.s2);
                    sum += g.w[a] * g.w[b] * hx * hy * w * std::norm(eval_f3_hat(t, xi, eta, p, opt));
                }
            }
        }
    }
    // The conjugate mirror region carries the same mass.
    return std::sqrt(2.0 * sum);
}

SweepResult growth_sweep(double alpha, double eps, double s1, double s2, WeightRule rule,
                         const std::vector<double>& n_list, double t, std::size_t chi_samples, int out_order) {
    if (n_list.size() < 5) throw InvalidArgument("growth sweep needs at least five N values");
    SweepResult res;
    res.expected_slope = (1.0 - 3.0 * eps) / 4.0;
    std::vector<double> xs, ys;
    for (double bigN : n_list) {
        const CounterexampleParams p = make_counterexample(alpha, bigN, eps, s1, s2, rule);
        const ChiScan scan = chi_bound_scan(p, chi_samples);
        SweepRow row;
        row.bigN = bigN;
        row.gamma = p.gamma;
        row.eps = eps;
        row.max_abs_chi = scan.max_abs_chi;
        row.chi_ratio = scan.ratio_to_gamma2N;
        row.f3_norm = f3_norm(t, p, out_order);
        res.rows.push_back(row);
        xs.push_back(bigN);
        ys.push_back(row.f3_norm);
    }
    const LogFit fit = fit_loglog(xs, ys);
    res.slope = fit.slope;
    res.intercept = fit.intercept;
    res.residual = fit.residual;
    return res;
}

} // namespace fzk
