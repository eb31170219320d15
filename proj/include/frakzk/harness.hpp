#pragma once

#include "frakzk/evolution.hpp"
#include "frakzk/grid.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fzk {

inline constexpr int kReportSchemaVersion = 1;
/// A log-log fit whose rms residual exceeds this fails whatever its slope.
inline constexpr double kFitResidualLimit = 0.1;

/// One scalar of a report together with the rule it is judged by.
struct ResultEntry {
    std::string name;
    double value = 0.0;
    /// "le": value <= bound, "ge": value >= bound, "within": |value - target| <= tol,
    /// "info": reported only.
    std::string comparison = "info";
    double target = 0.0;
    double tol = 0.0;
    /// "closed form", "derived", "fitted constant" or "measured".
    std::string provenance = "measured";
    bool pass = true;
    std::string note;
};

struct ExperimentReport {
    std::string name;
    std::string digest;
    std::uint64_t seed = 0;
    std::vector<ResultEntry> results;
    std::vector<std::string> files;
    bool passed = true;
    double wall_time = 0.0;
    std::string error;   ///< set when the experiment aborted
};

struct RunOptions {
    std::string out_dir;             ///< empty: nothing is written
    std::optional<std::uint64_t> seed;
    int jobs = 1;
};

/// Everything an experiment body sees.
class ExperimentContext {
public:
    ExperimentContext(const nlohmann::json& cfg, const RunOptions& opt, ExperimentReport& rep);

    const nlohmann::json& config() const { return cfg_; }
    const nlohmann::json& params() const { return cfg_.at("params"); }
    std::uint64_t seed() const { return rep_.seed; }
    int jobs() const { return jobs_; }
    bool writes() const { return !out_dir_.empty(); }
    const std::string& out_dir() const { return out_dir_; }

    GridPtr grid() const;
    DispersionSpec dispersion() const;
    SolverConfig solver() const;
    double tol(const std::string& key) const;

    void info(const std::string& name, double value, const std::string& provenance = "measured",
              const std::string& note = "");
    void check_le(const std::string& name, double value, double bound, const std::string& provenance,
                  const std::string& note = "");
    void check_ge(const std::string& name, double value, double bound, const std::string& provenance,
                  const std::string& note = "");
    void check_within(const std::string& name, double value, double target, double tol,
                      const std::string& provenance, const std::string& note = "");
    /// A slope check plus the residual guard.
    void check_fit(const std::string& name, const LogFit& fit, double target, double tol,
                   const std::string& provenance, const std::string& note = "");

    /// Path inside the output directory; parent directories are created.
    std::string path(const std::string& relative) const;
    /// Records a file written by the experiment.
    void add_file(const std::string& relative);

private:
    const nlohmann::json& cfg_;
    ExperimentReport& rep_;
    std::string out_dir_;
    int jobs_ = 1;
};

using ExperimentFn = std::function<void(ExperimentContext&)>;

struct ExperimentDef {
    std::string name;
    std::string summary;
    /// Default values of every allowed key; user values override them and
    /// keys absent here are rejected.
    nlohmann::json defaults;
    ExperimentFn run;
};

const std::vector<ExperimentDef>& registry();
const ExperimentDef& find_experiment(const std::string& name);

/// Merges the config with the experiment defaults and checks every key and
/// type; throws SchemaError. The result carries all blocks explicitly.
nlohmann::json validate_config(const nlohmann::json& cfg);

/// Runs one experiment. Errors inside the body are recorded in the report
/// (passed = false) rather than thrown; schema errors are thrown.
ExperimentReport run_experiment(const nlohmann::json& cfg, const RunOptions& opt);

nlohmann::json report_to_json(const ExperimentReport& rep);
std::string results_csv(const ExperimentReport& rep);

/// Runs body(i) for i in [0, n) on up to jobs threads; rethrows the first error.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body);

/// FNV-1a hash of a string, as 16 hex digits.
std::string digest_hex(const std::string& text);

/// Writes a trajectory directory: snapshot_NNNN.fzk files and diagnostics.csv.
void write_trajectory(const std::string& dir, const Trajectory& traj);

} // namespace fzk
