#include "frakzk/datagen.hpp"
#include "frakzk/dispersion.hpp"
#include "frakzk/errors.hpp"
#include "frakzk/evolution.hpp"
#include "frakzk/fft.hpp"
#include "frakzk/harness.hpp"
#include "frakzk/illposed.hpp"
#include "frakzk/kernel.hpp"
#include "frakzk/multipliers.hpp"
#include "frakzk/norms.hpp"
#include "frakzk/snapshot.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

namespace py = pybind11;
using namespace fzk;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

GridPtr grid_of(double lx, double ly, const Array& a) {
    if (a.ndim() != 2) throw InvalidArgument("expected a 2-D array of shape (ny, nx)");
    return make_grid(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), lx, ly);
}

Field to_field(const GridPtr& g, const Array& a) {
    std::vector<double> s(a.data(), a.data() + a.size());
    return Field::physical(g, std::move(s));
}

Array to_array(const Field& f) {
    const auto s = physical_samples(f);
    Array out({f.grid()->ny, f.grid()->nx});
    std::copy(s.begin(), s.end(), out.mutable_data());
    return out;
}

} // namespace

PYBIND11_MODULE(_frakzk, m) {
    m.doc() = "Spectral tools for a fractional ZK-KP type equation; arrays are (ny, nx), y-major.";

    // Translators run newest first, so the base class goes in first.
    const auto& base = py::register_exception<Error>(m, "FrakzkError", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<NonzeroXMean>(m, "NonzeroXMean", base.ptr());
    py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
    py::register_exception<SnapshotError>(m, "SnapshotError", base.ptr());

    m.def("wavenumbers", [](int nx, int ny, double lx, double ly) {
        const GridPtr g = make_grid(nx, ny, lx, ly);
        return py::make_tuple(g->kx, g->ky);
    }, py::arg("nx"), py::arg("ny"), py::arg("lx"), py::arg("ly"));

    m.def("hilbert_x", [](const Array& u, double lx, double ly) { return to_array(hilbert_x(to_field(grid_of(lx, ly, u), u))); },
          py::arg("u"), py::arg("lx"), py::arg("ly"));
    m.def("dx", [](const Array& u, double lx, double ly) { return to_array(dx(to_field(grid_of(lx, ly, u), u))); },
          py::arg("u"), py::arg("lx"), py::arg("ly"));
    m.def("dy", [](const Array& u, double lx, double ly) { return to_array(dy(to_field(grid_of(lx, ly, u), u))); },
          py::arg("u"), py::arg("lx"), py::arg("ly"));
    m.def("frac_deriv_x", [](const Array& u, double lx, double ly, double a) {
        return to_array(frac_deriv_x(to_field(grid_of(lx, ly, u), u), a));
    }, py::arg("u"), py::arg("lx"), py::arg("ly"), py::arg("a"));
    m.def("inv_dx", [](const Array& u, double lx, double ly) { return to_array(inv_dx(to_field(grid_of(lx, ly, u), u))); },
          py::arg("u"), py::arg("lx"), py::arg("ly"));
    m.def("bessel", [](const Array& u, double lx, double ly, double sx, double sy) {
        return to_array(bessel(to_field(grid_of(lx, ly, u), u), sx, sy));
    }, py::arg("u"), py::arg("lx"), py::arg("ly"), py::arg("sx"), py::arg("sy"));
    m.def("bona_smith_smooth", [](const Array& u, double lx, double ly, double tau, double s1, double s2) {
        return to_array(bona_smith_smooth(to_field(grid_of(lx, ly, u), u), tau, s1, s2));
    }, py::arg("u"), py::arg("lx"), py::arg("ly"), py::arg("tau"), py::arg("s1"), py::arg("s2"));

    m.def("phase", [](double kx, double ky, double alpha) { return phase(kx, ky, DispersionSpec{alpha}); },
          py::arg("kx"), py::arg("ky"), py::arg("alpha"));
    m.def("apply_group", [](const Array& u, double lx, double ly, double t, double alpha) {
        return to_array(apply_group(to_field(grid_of(lx, ly, u), u), t, DispersionSpec{alpha}));
    }, py::arg("u"), py::arg("lx"), py::arg("ly"), py::arg("t"), py::arg("alpha"));
    m.def("kernel_reduced", [](double t, double x, double y, double beta, double alpha, double sigma) {
        KernelOptions opt;
        opt.sigma = sigma;
        const KernelValue v = kernel_reduced(t, x, y, beta, DispersionSpec{alpha}, opt);
        return py::make_tuple(v.value, v.abs_err);
    }, py::arg("t"), py::arg("x"), py::arg("y"), py::arg("beta"), py::arg("alpha"), py::arg("sigma") = 0.0);

    m.def("evolve", [](const Array& u, double lx, double ly, double alpha, double dt, double t_end, int stride) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = t_end;
        cfg.snapshot_stride = stride;
        Trajectory traj;
        {
            py::gil_scoped_release release;
            traj = evolve(to_field(grid_of(lx, ly, u), u), cfg, DispersionSpec{alpha});
        }
        py::list states;
        for (const auto& s : traj.states) states.append(to_array(s));
        py::dict diag;
        auto column = [&](auto member) {
            std::vector<double> v;
            for (const auto& d : traj.diagnostics) v.push_back(static_cast<double>(d.*member));
            return v;
        };
        diag["t"] = column(&Diagnostics::t);
        diag["l2"] = column(&Diagnostics::l2);
        diag["mass"] = column(&Diagnostics::mass);
        diag["hamiltonian"] = column(&Diagnostics::hamiltonian);
        diag["sup_u"] = column(&Diagnostics::sup_u);
        diag["sup_ux"] = column(&Diagnostics::sup_ux);
        diag["sup_uy"] = column(&Diagnostics::sup_uy);
        return py::make_tuple(traj.times, states, diag);
    }, py::arg("u"), py::arg("lx"), py::arg("ly"), py::arg("alpha"), py::arg("dt"), py::arg("t_end"),
          py::arg("snapshot_stride") = 100);

    m.def("norm", [](const Array& u, double lx, double ly, double s1, double s2, const std::string& family, double alpha) {
        return norm(to_field(grid_of(lx, ly, u), u), SobolevIndex{s1, s2, parse_norm_family(family), alpha});
    }, py::arg("u"), py::arg("lx"), py::arg("ly"), py::arg("s1") = 0.0, py::arg("s2") = 0.0, py::arg("family") = "H",
          py::arg("alpha") = 1.0);
    m.def("lp_norm", [](const Array& u, double lx, double ly, double p) { return lp_norm(to_field(grid_of(lx, ly, u), u), p); },
          py::arg("u"), py::arg("lx"), py::arg("ly"), py::arg("p"));

    m.def("gen_data", [](const std::string& config_json, int nx, int ny, double lx, double ly, std::uint64_t seed) {
        return to_array(gen_data(nlohmann::json::parse(config_json), make_grid(nx, ny, lx, ly), seed));
    }, py::arg("data_json"), py::arg("nx"), py::arg("ny"), py::arg("lx"), py::arg("ly"), py::arg("seed") = 1);
    m.def("read_snapshot", [](const std::string& path) {
        const Field f = read_snapshot(path);
        return py::make_tuple(to_array(f), f.grid()->lx, f.grid()->ly);
    }, py::arg("path"));
    m.def("write_snapshot", [](const std::string& path, const Array& u, double lx, double ly) {
        write_snapshot(path, to_field(grid_of(lx, ly, u), u));
    }, py::arg("path"), py::arg("u"), py::arg("lx"), py::arg("ly"));

    m.def("resonance_chi", &resonance_chi, py::arg("xi"), py::arg("xi1"), py::arg("eta"), py::arg("eta1"), py::arg("theta"));
    m.def("duhamel_kernel", &duhamel_kernel, py::arg("t"), py::arg("chi"));
    m.def("eval_f3_hat", [](double t, double xi, double eta, double alpha, double bigN, double eps) {
        return eval_f3_hat(t, xi, eta, make_counterexample(alpha, bigN, eps, 0.0, 0.0));
    }, py::arg("t"), py::arg("xi"), py::arg("eta"), py::arg("alpha"), py::arg("N"), py::arg("eps"));
    m.def("growth_sweep", [](double alpha, double eps, double s1, double s2, const std::string& rule,
                             const std::vector<double>& n_list) {
        SweepResult r;
        {
            py::gil_scoped_release release;
            r = growth_sweep(alpha, eps, s1, s2, rule == "balanced" ? WeightRule::balanced : WeightRule::product, n_list);
        }
        py::list rows;
        for (const auto& w : r.rows) {
            py::dict d;
            d["N"] = w.bigN;
            d["gamma"] = w.gamma;
            d["eps"] = w.eps;
            d["max_abs_chi"] = w.max_abs_chi;
            d["chi_ratio"] = w.chi_ratio;
            d["f3_norm"] = w.f3_norm;
            rows.append(d);
        }
        py::dict out;
        out["rows"] = rows;
        out["slope"] = r.slope;
        out["residual"] = r.residual;
        out["expected_slope"] = r.expected_slope;
        return out;
    }, py::arg("alpha"), py::arg("eps"), py::arg("s1"), py::arg("s2"), py::arg("rule"), py::arg("n_list"));

    m.def("experiments", [] {
        std::vector<std::string> names;
        for (const auto& e : registry()) names.push_back(e.name);
        return names;
    });
    m.def("validate_config", [](const std::string& config_json) {
        return validate_config(nlohmann::json::parse(config_json)).dump();
    }, py::arg("config_json"));
    m.def("run_experiment", [](const std::string& config_json, const std::string& out_dir, int jobs) {
        RunOptions opt;
        opt.out_dir = out_dir;
        opt.jobs = jobs;
        const nlohmann::json cfg = nlohmann::json::parse(config_json);
        ExperimentReport rep;
        {
            py::gil_scoped_release release;
            rep = run_experiment(cfg, opt);
        }
        return report_to_json(rep).dump();
    }, py::arg("config_json"), py::arg("out_dir") = "", py::arg("jobs") = 1);
}
