// Runs every acceptance criterion once, with the shipped default configs and
// the tolerances pinned below, and prints one PASS/FAIL line per criterion.
//
//   acceptance [--only <n>] [--jobs <n>] [--out <dir>]

#include "frakzk/errors.hpp"
#include "frakzk/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

using namespace fzk;
using nlohmann::json;

namespace {

struct Criterion {
    int id;
    std::string experiment;
    std::string summary;
    json tolerances;   ///< overrides the config block; every key is pinned
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> c = {
        {1, "multipliers", "transform and multiplier identities at 256^2",
         {{"roundtrip", 1e-12}, {"parseval", 1e-12}, {"hilbert", 1e-12}, {"semigroup", 1e-11},
          {"bessel", 1e-12}, {"hermitian", 1e-12}, {"wall_time_s", 10.0}}},
        {2, "group", "unitarity, group law and exact identity at t = 0",
         {{"unitarity", 1e-12}, {"group_law", 1e-11}, {"wall_time_s", 5.0}}},
        {3, "conserve", "L2, mass and Hamiltonian drift, fourth-order Hamiltonian error",
         {{"l2_drift", 1e-8}, {"mass_drift", 1e-12}, {"hamiltonian_drift", 1e-6}, {"order", 0.3}}},
        {4, "decay", "sup-norm decay slopes over t in [1, 16] at 512^2", {{"slope", 0.07}}},
        {5, "strichartz", "endpoint sup-norm slope and constant L2 norm", {{"slope", 0.07}, {"l2_constant", 1e-12}}},
        {6, "kernel", "oscillatory kernel against grid propagation", {{"rel_err", 0.01}}},
        {7, "scaling", "rescale-versus-evolve discrepancy for lambda = 2", {{"rel_l2", 1e-6}}},
        {8, "energy", "energy constant spread and held-out bound", {{"spread", 3.0}}},
        {9, "bona-smith", "smoothing slopes, difference constant and monotone convergence",
         {{"slope_rel", 0.1}, {"difference_constant", 2.0}, {"wall_time_s", 30.0}}},
        {10, "flow-continuity", "exponential L2 Lipschitz bound on five pairs", {{"c", 1.0}}},
        {11, "gn-inequality", "Gagliardo-Nirenberg sup ratio stable under refinement", {{"spread", 3.0}}},
        {12, "illposed", "resonance symmetry, chi ratio, f3 oracle and growth slopes",
         {{"symmetry", 1e-12}, {"roots", 1e-9}, {"kernel", 1e-10}, {"oracle", 0.01},
          {"chi_ratio_spread", 2.0}, {"growth_slope", 0.05}}},
    };
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance runner"};
    int only = 0, jobs = 1;
    std::string out;
    app.add_option("--only", only, "run a single criterion");
    app.add_option("--jobs", jobs, "worker threads per experiment");
    app.add_option("--out", out, "write each experiment's outputs under this directory");
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    for (const Criterion& c : criteria()) {
        if (only != 0 && c.id != only) continue;
        RunOptions opt;
        opt.jobs = jobs;
        if (!out.empty()) opt.out_dir = out + "/" + c.experiment;
        std::string detail;
        bool pass = false;
        double wall = 0.0;
        try {
            const json cfg = {{"name", c.experiment}, {"tolerances", c.tolerances}};
            const ExperimentReport rep = run_experiment(cfg, opt);
            pass = rep.passed;
            wall = rep.wall_time;
            if (!rep.error.empty()) detail = rep.error;
            for (const auto& r : rep.results) {
                if (r.pass) continue;
                char buf[256];
                std::snprintf(buf, sizeof buf, "%s%s=%.4g (%s %.4g)", detail.empty() ? "" : "; ", r.name.c_str(),
                              r.value, r.comparison.c_str(), r.target);
                detail += buf;
            }
        } catch (const std::exception& e) {
            detail = e.what();
        }
        failed += pass ? 0 : 1;
        std::printf("criterion %2d %-16s %s  %.1fs  %s%s%s\n", c.id, c.experiment.c_str(), pass ? "PASS" : "FAIL",
                    wall, c.summary.c_str(), detail.empty() ? "" : "  | ", detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
