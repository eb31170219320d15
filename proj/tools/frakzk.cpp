#include "frakzk/errors.hpp"
#include "frakzk/harness.hpp"
#include "frakzk/snapshot.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fzk::SchemaError("cannot open config '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw fzk::SchemaError(std::string("config is not valid JSON: ") + e.what());
    }
}

void print_report(const fzk::ExperimentReport& rep) {
    for (const auto& r : rep.results) {
        std::printf("%-4s %-48s %.6g", r.comparison == "info" ? "" : (r.pass ? "ok" : "FAIL"), r.name.c_str(), r.value);
        if (r.comparison == "le") std::printf("  <= %.3g", r.target);
        if (r.comparison == "ge") std::printf("  >= %.3g", r.target);
        if (r.comparison == "within") std::printf("  target %.4g +- %.3g", r.target, r.tol);
        std::printf("\n");
    }
    if (!rep.error.empty()) std::printf("error: %s\n", rep.error.c_str());
    std::printf("%s: %s in %.1f s (digest %s)\n", rep.name.c_str(), rep.passed ? "PASS" : "FAIL", rep.wall_time,
                rep.digest.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frakzk: numerical experiments for a fractional ZK-KP type equation"};
    app.require_subcommand(1);

    std::string config_path, out_dir, field_file;
    std::uint64_t seed = 0;
    int jobs = 1;

    auto* validate = app.add_subcommand("validate", "check a config against the experiment schema");
    validate->add_option("--config", config_path, "config JSON")->required();

    auto* field = app.add_subcommand("field", "snapshot utilities");
    field->require_subcommand(1);
    auto* info = field->add_subcommand("info", "print the header and basic statistics of a snapshot");
    info->add_option("file", field_file, "snapshot file")->required();

    std::vector<CLI::App*> experiments;
    for (const auto& def : fzk::registry()) {
        auto* sub = app.add_subcommand(def.name, def.summary);
        sub->add_option("--config", config_path, "config JSON")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
        experiments.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            const json cfg = fzk::validate_config(load_config(config_path));
            std::cout << cfg.dump(2) << "\n";
            return 0;
        }
        if (info->parsed()) {
            const fzk::SnapshotInfo s = fzk::snapshot_info(field_file);
            const json j = {{"nx", s.nx}, {"ny", s.ny}, {"lx", s.lx}, {"ly", s.ly},
                            {"min", s.min}, {"max", s.max}, {"l2", s.l2}, {"mean", s.mean}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        for (auto* sub : experiments) {
            if (!sub->parsed()) continue;
            json cfg = load_config(config_path);
            if (cfg.value("name", "") != sub->get_name()) {
                throw fzk::SchemaError("config name '" + cfg.value("name", "") + "' does not match experiment '" +
                                       sub->get_name() + "'");
            }
            fzk::RunOptions opt;
            opt.out_dir = out_dir;
            opt.jobs = jobs;
            if (sub->count("--seed")) opt.seed = seed;
            const fzk::ExperimentReport rep = fzk::run_experiment(cfg, opt);
            print_report(rep);
            return rep.passed ? 0 : 1;
        }
    } catch (const fzk::SchemaError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    return 0;
}
