#include "frakzk/quadrature.hpp"

#include "frakzk/errors.hpp"

#include <cmath>
#include <numbers>
#include <queue>

namespace fzk {

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    std::complex<double> value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const std::function<std::complex<double>(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const std::complex<double> fc = f(c);
    std::complex<double> rk = fc * kWgk[7];
    std::complex<double> rg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dxj = h * kXgk[j];
        const std::complex<double> s = f(c - dxj) + f(c + dxj);
        rk += kWgk[j] * s;
        if (j % 2 == 1) rg += kWg[j / 2] * s;
    }
    Panel p{a, b, rk * h, std::abs((rk - rg) * h)};
    return p;
}

} // namespace

QuadResult integrate_gk(const std::function<std::complex<double>(double)>& f,
                        const std::vector<double>& breakpoints, double rel_tol, double abs_tol,
                        int max_evaluations) {
    QuadResult res;
    if (breakpoints.size() < 2) {
        res.converged = true;
        return res;
    }
    std::priority_queue<Panel> heap;
    std::complex<double> total = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] == breakpoints[i]) continue;
        Panel p = gk15(f, breakpoints[i], breakpoints[i + 1]);
        res.evaluations += 15;
        total += p.value;
        err += p.err;
        heap.push(p);
    }
    while (!heap.empty()) {
        if (err <= std::max(abs_tol, rel_tol * std::abs(total))) {
            res.converged = true;
            break;
        }
        if (res.evaluations + 30 > max_evaluations) break;
        Panel p = heap.top();
        heap.pop();
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) {
            // Panel cannot be split further in floating point.
            heap.push(Panel{p.a, p.b, p.value, 0.0});
            err -= p.err;
            continue;
        }
        Panel l = gk15(f, p.a, mid);
        Panel r = gk15(f, mid, p.b);
        res.evaluations += 30;
        total += l.value + r.value - p.value;
        err += l.err + r.err - p.err;
        heap.push(l);
        heap.push(r);
    }
    if (heap.empty()) res.converged = true;
    // Recompute the totals from the panels to shed accumulated rounding.
    std::complex<double> sum = 0.0;
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().err;
        heap.pop();
    }
    res.value = sum;
    res.abs_err = esum;
    return res;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw InvalidArgument("Gauss-Legendre order must be positive");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

} // namespace fzk
