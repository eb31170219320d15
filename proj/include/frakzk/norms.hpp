#pragma once

#include "frakzk/evolution.hpp"
#include "frakzk/field.hpp"

#include <functional>
#include <string>
#include <vector>

namespace fzk {

enum class NormFamily {
    H,
    X,              ///< H + d_x^{-1} f measured in H
    Xhat,           ///< H + d_x^{-1} f measured in L2
    Xalpha,         ///< H + D_x^{(alpha-1)/2} f measured in L2
    XalphaLiteral,  ///< the displayed X_alpha formula, identical to X
    Y,              ///< H + d_x^{-1} d_y f measured in H
    Yhat,           ///< H + d_x^{-1} d_y f measured in L2
};

NormFamily parse_norm_family(const std::string& name);
std::string to_string(NormFamily family);

struct SobolevIndex {
    double s1 = 0.0;
    double s2 = 0.0;
    NormFamily family = NormFamily::H;
    double alpha = 1.0;

    void validate() const;
};

/// ||f||^2 = \int (<kx>^{2 s1} + <ky>^{2 s2}) |f^|^2 plus the family's extra
/// term, as a lattice sum with the Parseval weight lx ly. Families other than
/// H need a zero x-mean and throw NonzeroXMean otherwise.
double norm(const Field& f, const SobolevIndex& idx);

/// Grid quadrature of (\int |f|^p)^{1/p}; p = infinity gives the max sample.
double lp_norm(const Field& f, double p);

struct MixedNormSpec {
    double q = 2.0;   ///< time exponent in [1, inf]
    double p = 2.0;   ///< space exponent in [1, inf]

    void validate() const;
};

/// L_T^q L_xy^p over the stored snapshots, composite trapezoid in time.
double mixed_norm(const Trajectory& traj, const MixedNormSpec& spec);
/// Same quantity from precomputed spatial norms at the given times.
double mixed_norm(const std::vector<double>& times, const std::vector<double>& spatial, double q);

using Functional = std::function<double(const Field&)>;

struct ProbeReport {
    std::string name;
    double sup_ratio = 0.0;
    std::size_t argmax = 0;
    std::size_t n_inputs = 0;
    std::vector<double> ratios;
    bool violation = false;            ///< some input had rhs = 0 < lhs
    std::size_t violation_index = 0;
    int nx = 0, ny = 0;
};

/// Sup over the inputs of lhs/rhs. Never asserts; an input with rhs = 0 and
/// lhs > 0 is flagged as a violation witness.
ProbeReport probe_inequality(const std::string& name, const Functional& lhs, const Functional& rhs,
                             const std::vector<Field>& inputs);

/// JSON text {name, sup_ratio, n_inputs, grid, witness_file}.
std::string probe_report_json(const ProbeReport& r, const std::string& witness_file);

} // namespace fzk
