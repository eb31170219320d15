#include "frakzk/harness.hpp"

#include "frakzk/datagen.hpp"
#include "frakzk/errors.hpp"
#include "frakzk/snapshot.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace fzk {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kBlocks[] = {"dispersion", "grid", "solver", "data", "params", "tolerances"};

bool same_kind(const json& a, const json& b) {
    if (a.is_number() && b.is_number()) return true;
    return a.type() == b.type();
}

void merge_block(const std::string& block, json& target, const json& user) {
    if (!user.is_object()) throw SchemaError("'" + block + "' must be an object");
    for (const auto& [key, value] : user.items()) {
        if (!target.contains(key)) throw SchemaError("unknown key '" + block + "." + key + "'");
        if (!same_kind(target[key], value)) {
            throw SchemaError("'" + block + "." + key + "' should be " + std::string(target[key].type_name()) +
                              ", got " + value.type_name());
        }
        if (value.is_array() && !target[key].empty() && !value.empty() &&
            !same_kind(target[key].front(), value.front())) {
            throw SchemaError("'" + block + "." + key + "' has elements of the wrong type");
        }
        target[key] = value;
    }
}

void check_data_block(const json& data) {
    if (!data.contains("kind") || !data["kind"].is_string()) throw SchemaError("'data.kind' must be a string");
    const std::string kind = data["kind"];
    try {
        const auto& keys = data_kind_keys(kind);
        for (const auto& [key, value] : data.items()) {
            if (key != "kind" && !keys.count(key)) throw SchemaError("unknown key 'data." + key + "' for kind " + kind);
        }
    } catch (const InvalidArgument& e) {
        throw SchemaError(e.what());
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

} // namespace

ExperimentContext::ExperimentContext(const json& cfg, const RunOptions& opt, ExperimentReport& rep)
    : cfg_(cfg), rep_(rep), out_dir_(opt.out_dir), jobs_(std::max(1, opt.jobs)) {}

GridPtr ExperimentContext::grid() const {
    const json& g = cfg_.at("grid");
    return make_grid(g.at("nx").get<int>(), g.at("ny").get<int>(), g.at("lx").get<double>(), g.at("ly").get<double>());
}

DispersionSpec ExperimentContext::dispersion() const {
    DispersionSpec s{cfg_.at("dispersion").at("alpha").get<double>()};
    s.validate();
    return s;
}

SolverConfig ExperimentContext::solver() const {
    const json& s = cfg_.at("solver");
    SolverConfig c;
    c.dt = s.at("dt").get<double>();
    c.t_end = s.at("t_end").get<double>();
    c.snapshot_stride = s.at("snapshot_stride").get<int>();
    c.dealias = s.at("dealias").get<double>();
    c.validate();
    return c;
}

double ExperimentContext::tol(const std::string& key) const {
    return cfg_.at("tolerances").at(key).get<double>();
}

void ExperimentContext::info(const std::string& name, double value, const std::string& provenance,
                             const std::string& note) {
    rep_.results.push_back({name, value, "info", 0.0, 0.0, provenance, true, note});
}

void ExperimentContext::check_le(const std::string& name, double value, double bound, const std::string& provenance,
                                 const std::string& note) {
    const bool ok = value <= bound;
    rep_.results.push_back({name, value, "le", bound, 0.0, provenance, ok, note});
    rep_.passed = rep_.passed && ok;
}

void ExperimentContext::check_ge(const std::string& name, double value, double bound, const std::string& provenance,
                                 const std::string& note) {
    const bool ok = value >= bound;
    rep_.results.push_back({name, value, "ge", bound, 0.0, provenance, ok, note});
    rep_.passed = rep_.passed && ok;
}

void ExperimentContext::check_within(const std::string& name, double value, double target, double tol,
                                     const std::string& provenance, const std::string& note) {
    const bool ok = std::abs(value - target) <= tol;
    rep_.results.push_back({name, value, "within", target, tol, provenance, ok, note});
    rep_.passed = rep_.passed && ok;
}

void ExperimentContext::check_fit(const std::string& name, const LogFit& fit, double target, double tol,
                                  const std::string& provenance, const std::string& note) {
    check_within(name + ".slope", fit.slope, target, tol, provenance, note);
    check_le(name + ".residual", fit.residual, kFitResidualLimit, "derived", "log-space rms residual of the fit");
}

std::string ExperimentContext::path(const std::string& relative) const {
    if (out_dir_.empty()) throw InvalidArgument("experiment has no output directory");
    fs::path p = fs::path(out_dir_) / relative;
    fs::create_directories(p.parent_path());
    return p.string();
}

void ExperimentContext::add_file(const std::string& relative) {
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    rep_.files.push_back(relative);
}

const ExperimentDef& find_experiment(const std::string& name) {
    for (const auto& e : registry()) {
        if (e.name == name) return e;
    }
    std::string known;
    for (const auto& e : registry()) known += (known.empty() ? "" : ", ") + e.name;
    throw SchemaError("unknown experiment '" + name + "' (known: " + known + ")");
}

json validate_config(const json& cfg) {
    if (!cfg.is_object()) throw SchemaError("config must be a JSON object");
    if (!cfg.contains("name") || !cfg["name"].is_string()) throw SchemaError("config needs a string 'name'");
    const ExperimentDef& def = find_experiment(cfg["name"].get<std::string>());
    json out = def.defaults;
    out["name"] = def.name;
    if (!out.contains("seed")) out["seed"] = 1;
    for (const auto& [key, value] : cfg.items()) {
        if (key == "name") continue;
        if (key == "seed") {
            if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
                throw SchemaError("'seed' must be a nonnegative integer");
            }
            out["seed"] = value;
            continue;
        }
        bool known = false;
        for (const char* b : kBlocks) known = known || key == b;
        if (!known) throw SchemaError("unknown top-level key '" + key + "'");
        if (!def.defaults.contains(key)) throw SchemaError("experiment '" + def.name + "' takes no '" + key + "' block");
        if (key == "data" && value.is_object() && value.contains("kind") && value["kind"] != out["data"]["kind"]) {
            out["data"] = value;   // a different kind brings its own keys
        } else {
            merge_block(key, out[key], value);
        }
    }
    if (out.contains("data")) check_data_block(out["data"]);
    return out;
}

ExperimentReport run_experiment(const json& cfg_in, const RunOptions& opt) {
    json cfg = validate_config(cfg_in);
    if (opt.seed) cfg["seed"] = *opt.seed;
    const ExperimentDef& def = find_experiment(cfg["name"].get<std::string>());
    ExperimentReport rep;
    rep.name = def.name;
    rep.seed = cfg["seed"].get<std::uint64_t>();
    rep.digest = digest_hex(cfg.dump());
    if (!opt.out_dir.empty()) fs::create_directories(opt.out_dir);
    ExperimentContext ctx(cfg, opt, rep);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        def.run(ctx);
    } catch (const std::exception& e) {
        rep.error = def.name + ": " + e.what();
        rep.passed = false;
    }
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!opt.out_dir.empty()) {
        std::ofstream(fs::path(opt.out_dir) / "report.json") << report_to_json(rep).dump(2) << "\n";
        std::ofstream(fs::path(opt.out_dir) / "results.csv") << results_csv(rep);
        std::ofstream(fs::path(opt.out_dir) / "config.json") << cfg.dump(2) << "\n";
    }
    return rep;
}

json report_to_json(const ExperimentReport& rep) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["name"] = rep.name;
    j["inputs_digest"] = rep.digest;
    j["seed"] = rep.seed;
    j["passed"] = rep.passed;
    j["wall_time_s"] = rep.wall_time;
    if (!rep.error.empty()) j["error"] = rep.error;
    j["results"] = json::array();
    for (const auto& r : rep.results) {
        json e;
        e["name"] = r.name;
        e["value"] = number_or_null(r.value);
        e["comparison"] = r.comparison;
        if (r.comparison != "info") e["target"] = number_or_null(r.target);
        if (r.comparison == "within") e["tolerance"] = r.tol;
        e["provenance"] = r.provenance;
        e["pass"] = r.pass;
        if (!r.note.empty()) e["note"] = r.note;
        j["results"].push_back(e);
    }
    j["files"] = rep.files;
    return j;
}

std::string results_csv(const ExperimentReport& rep) {
    std::ostringstream os;
    os << "name,value,comparison,target,tolerance,provenance,pass\n";
    for (const auto& r : rep.results) {
        os << csv_escape(r.name) << ',' << fmt(r.value) << ',' << r.comparison << ','
           << (r.comparison == "info" ? "" : fmt(r.target)) << ',' << (r.comparison == "within" ? fmt(r.tol) : "")
           << ',' << csv_escape(r.provenance) << ',' << (r.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex m;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (!first) first = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

std::string digest_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_trajectory(const std::string& dir, const Trajectory& traj) {
    fs::create_directories(dir);
    std::ofstream csv(fs::path(dir) / "diagnostics.csv");
    csv << "step,t,l2,mass,hamiltonian,sup_u,sup_ux,sup_uy\n";
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%04zu.fzk", k);
        write_snapshot((fs::path(dir) / name).string(), traj.states[k]);
        const Diagnostics& d = traj.diagnostics[k];
        csv << d.step << ',' << fmt(d.t) << ',' << fmt(d.l2) << ',' << fmt(d.mass) << ',' << fmt(d.hamiltonian) << ','
            << fmt(d.sup_u) << ',' << fmt(d.sup_ux) << ',' << fmt(d.sup_uy) << '\n';
    }
}

} // namespace fzk
