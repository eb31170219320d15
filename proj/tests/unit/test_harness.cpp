#include "helpers.hpp"

#include "frakzk/datagen.hpp"
#include "frakzk/errors.hpp"
#include "frakzk/harness.hpp"
#include "frakzk/multipliers.hpp"
#include "frakzk/norms.hpp"
#include "frakzk/snapshot.hpp"

#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fzk;
using namespace fzk::test;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json small_simulate() {
    return {{"name", "simulate"},
            {"grid", {{"nx", 32}, {"ny", 32}, {"lx", 20.0}, {"ly", 20.0}}},
            {"solver", {{"dt", 5e-3}, {"t_end", 0.1}, {"snapshot_stride", 10}}},
            {"data", {{"x0", 10.0}, {"y0", 10.0}}}};
}

} // namespace

TEST_CASE("config defaults are filled in") {
    const json c = validate_config({{"name", "simulate"}});
    CHECK(c.at("seed") == 1);
    CHECK(c.at("grid").at("nx") == 128);
    CHECK(c.at("solver").contains("dealias"));
    CHECK(c.at("data").at("kind") == "gaussian");
    const json d = validate_config(small_simulate());
    CHECK(d.at("grid").at("nx") == 32);
    CHECK(d.at("data").at("sx") == 1.5);
    CHECK(d.at("data").at("x0") == 10.0);
}

TEST_CASE("config schema violations are rejected") {
    CHECK_THROWS_AS(validate_config(json::array()), SchemaError);
    CHECK_THROWS_AS(validate_config({{"seed", 1}}), SchemaError);
    CHECK_THROWS_AS(validate_config({{"name", "nonesuch"}}), SchemaError);
    CHECK_THROWS_AS(validate_config({{"name", "simulate"}, {"extra", 1}}), SchemaError);
    CHECK_THROWS_AS(validate_config({{"name", "simulate"}, {"grid", {{"nz", 4}}}}), SchemaError);
    CHECK_THROWS_AS(validate_config({{"name", "simulate"}, {"grid", {{"nx", "64"}}}}), SchemaError);
    CHECK_THROWS_AS(validate_config({{"name", "simulate"}, {"seed", -3}}), SchemaError);
    CHECK_THROWS_AS(validate_config({{"name", "simulate"}, {"seed", 1.5}}), SchemaError);
    CHECK_THROWS_AS(validate_config({{"name", "simulate"}, {"params", json::object()}}), SchemaError);
    CHECK_THROWS_AS(validate_config({{"name", "simulate"}, {"data", {{"kmax", 3.0}}}}), SchemaError);
    CHECK_THROWS_AS(validate_config({{"name", "simulate"}, {"data", {{"kind", "sawtooth"}}}}), SchemaError);
    CHECK_THROWS_AS(validate_config({{"name", "illposed"}, {"params", {{"log2_N_min", "six"}}}}), SchemaError);
    // switching the data kind replaces the block
    const json n = validate_config({{"name", "simulate"}, {"data", {{"kind", "noise"}, {"kmax", 3.0}}}});
    CHECK(n.at("data").size() == 2);
    // an integer where a float is expected is fine
    CHECK_NOTHROW(validate_config({{"name", "simulate"}, {"grid", {{"lx", 30}}}}));
}

TEST_CASE("every shipped experiment validates its own defaults") {
    for (const auto& e : registry()) {
        const json c = validate_config({{"name", e.name}});
        CHECK(validate_config(c) == c);
    }
}

TEST_CASE("initial data generation") {
    const GridPtr g = make_grid(64, 64, 2 * kPi, 2 * kPi);
    const json p = {{"kmax", 10.0}, {"amplitude", 2.0}, {"zero_x_mean", true}};
    const Field a = gen_data("noise", p, g, 9), b = gen_data("noise", p, g, 9), c = gen_data("noise", p, g, 10);
    CHECK(a.samples() == b.samples());
    CHECK(max_diff(a, c) > 0.1);
    CHECK(lp_norm(a, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_NOTHROW(inv_dx(a));
    CHECK(max_abs(gen_data("gaussian", {{"amplitude", 0.0}}, g, 1)) == 0.0);
    CHECK_THROWS_AS(gen_data("noise", {{"kmx", 3.0}}, g, 1), InvalidArgument);
    CHECK_THROWS_AS(gen_data("file", json::object(), g, 1), InvalidArgument);
    CHECK(data_kind_keys("gaussian").count("sx") == 1);
}

TEST_CASE("noise is the same function on every grid that resolves it") {
    const json p = {{"kmax", 12.0}, {"decay", 1.0}};
    const Field coarse = gen_data("noise", p, make_grid(64, 64, 2 * kPi, 2 * kPi), 3);
    const Field fine = gen_data("noise", p, make_grid(128, 128, 2 * kPi, 2 * kPi), 3);
    const auto cs = physical_samples(coarse), fs_ = physical_samples(fine);
    double d = 0.0;
    for (int m = 0; m < 64; ++m) {
        for (int j = 0; j < 64; ++j) d = std::max(d, std::abs(cs[m * 64 + j] - fs_[(2 * m) * 128 + 2 * j]));
    }
    CHECK(d < 1e-13 * max_abs(coarse));
}

TEST_CASE("digest, report JSON and results CSV") {
    CHECK(digest_hex("") == "cbf29ce484222325");
    CHECK(digest_hex("a") == "af63dc4c8601ec8c");
    ExperimentReport rep;
    rep.name = "x";
    rep.digest = "0";
    rep.results.push_back({"a,b", 1.5, "within", 1.0, 0.5, "derived", true, ""});
    rep.results.push_back({"c", NAN, "le", 1.0, 0.0, "measured", false, "n"});
    rep.passed = false;
    const json j = report_to_json(rep);
    CHECK(j.at("schema_version") == kReportSchemaVersion);
    CHECK(j.at("passed") == false);
    CHECK(j.at("results").at(1).at("value").is_null());
    CHECK(j.at("results").at(0).at("tolerance") == 0.5);
    const std::string csv = results_csv(rep);
    CHECK(csv.rfind("name,value,comparison,target,tolerance,provenance,pass\n", 0) == 0);
    CHECK(csv.find("\"a,b\",1.5,within,1,0.5,derived,true\n") != std::string::npos);
}

TEST_CASE("parallel_for visits every index once and forwards errors") {
    for (int jobs : {1, 3}) {
        std::vector<std::atomic<int>> hits(50);
        parallel_for(hits.size(), jobs, [&](std::size_t i) { ++hits[i]; });
        for (auto& h : hits) CHECK(h.load() == 1);
        CHECK_THROWS_AS(parallel_for(10, jobs, [](std::size_t i) {
                            if (i == 7) throw NumericalBlowup("seven");
                        }),
                        NumericalBlowup);
    }
}

TEST_CASE("a small simulation writes a reproducible report and trajectory") {
    const fs::path dir = fs::temp_directory_path() / "frakzk_unit_simulate";
    fs::remove_all(dir);
    RunOptions opt;
    opt.out_dir = (dir / "a").string();
    const ExperimentReport a = run_experiment(small_simulate(), opt);
    CHECK(a.error.empty());
    CHECK(a.passed);
    for (const char* f : {"report.json", "results.csv", "config.json", "trajectory/diagnostics.csv",
                          "trajectory/snapshot_0000.fzk", "trajectory/snapshot_0002.fzk"}) {
        CHECK(fs::exists(dir / "a" / f));
    }
    const std::string diag = slurp(dir / "a" / "trajectory/diagnostics.csv");
    CHECK(diag.rfind("step,t,l2,mass,hamiltonian,sup_u,sup_ux,sup_uy\n", 0) == 0);
    CHECK(read_snapshot((dir / "a" / "trajectory/snapshot_0002.fzk").string()).grid()->nx == 32);

    opt.out_dir = (dir / "b").string();
    const ExperimentReport b = run_experiment(small_simulate(), opt);
    CHECK(b.digest == a.digest);
    CHECK(slurp(dir / "a" / "results.csv") == slurp(dir / "b" / "results.csv"));
    CHECK(slurp(dir / "a" / "trajectory/snapshot_0002.fzk") == slurp(dir / "b" / "trajectory/snapshot_0002.fzk"));

    opt.seed = 5;
    CHECK(run_experiment(small_simulate(), opt).digest != a.digest);
}

TEST_CASE("errors inside an experiment are recorded, not thrown") {
    json c = small_simulate();
    c["solver"]["dt"] = -1.0;
    const ExperimentReport r = run_experiment(c, RunOptions{});
    CHECK_FALSE(r.passed);
    CHECK(r.error.find("InvalidArgument") != std::string::npos);
}
