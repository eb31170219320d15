#include "frakzk/norms.hpp"

#include "frakzk/errors.hpp"
#include "frakzk/fft.hpp"
#include "frakzk/multipliers.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fzk {

NormFamily parse_norm_family(const std::string& name) {
    if (name == "H") return NormFamily::H;
    if (name == "X") return NormFamily::X;
    if (name == "Xhat") return NormFamily::Xhat;
    if (name == "Xalpha") return NormFamily::Xalpha;
    if (name == "XalphaLiteral") return NormFamily::XalphaLiteral;
    if (name == "Y") return NormFamily::Y;
    if (name == "Yhat") return NormFamily::Yhat;
    throw InvalidArgument("unknown norm family '" + name + "'");
}

std::string to_string(NormFamily family) {
    switch (family) {
    case NormFamily::H: return "H";
    case NormFamily::X: return "X";
    case NormFamily::Xhat: return "Xhat";
    case NormFamily::Xalpha: return "Xalpha";
    case NormFamily::XalphaLiteral: return "XalphaLiteral";
    case NormFamily::Y: return "Y";
    case NormFamily::Yhat: return "Yhat";
    }
    return "?";
}

void SobolevIndex::validate() const {
    if (!std::isfinite(s1) || !std::isfinite(s2)) throw InvalidArgument("Sobolev exponents must be finite");
    if (family != NormFamily::H && (s1 < 0.0 || s2 < 0.0)) {
        throw InvalidArgument("X and Y families need s1, s2 >= 0");
    }
    if (family == NormFamily::Xalpha && !(alpha >= -1.0 && alpha <= 1.0)) {
        throw InvalidArgument("Xalpha needs alpha in [-1, 1]");
    }
}

double norm(const Field& f, const SobolevIndex& idx) {
    idx.validate();
    const SpectralGrid& g = *f.grid();
    const auto c = spectral_coeffs(f);
    const double area = g.lx * g.ly;
    auto weight = [&](int j, int m) {
        return japanese(g.kx[j], 2.0 * idx.s1) + japanese(g.ky[m], 2.0 * idx.s2);
    };
    double sum = half_sum(g, c.data(), weight);
    if (idx.family == NormFamily::H) return std::sqrt(area * sum);

    const bool with_dy = idx.family == NormFamily::Y || idx.family == NormFamily::Yhat;
    require_zero_x_mean(f, with_dy, "norm");
    // |symbol|^2 of the extra operator; zero on kx = 0 and on Nyquist lines
    // like every multiplier.
    auto extra = [&](int j, int m) -> double {
        if (j == 0 || g.nyquist(j, m)) return 0.0;
        const double kx = g.kx[j], ky = g.ky[m];
        switch (idx.family) {
        case NormFamily::X:
        case NormFamily::XalphaLiteral: return weight(j, m) / (kx * kx);
        case NormFamily::Xhat: return 1.0 / (kx * kx);
        case NormFamily::Xalpha: return std::pow(std::abs(kx), idx.alpha - 1.0);
        case NormFamily::Y: return weight(j, m) * ky * ky / (kx * kx);
        case NormFamily::Yhat: return ky * ky / (kx * kx);
        default: return 0.0;
        }
    };
    sum += half_sum(g, c.data(), extra);
    return std::sqrt(area * sum);
}

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw InvalidArgument("lp_norm needs p >= 1");
    const auto u = physical_samples(f);
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : u) m = std::max(m, std::abs(v));
        return m;
    }
    double sum = 0.0;
    if (p == 2.0) {
        for (double v : u) sum += v * v;
    } else {
        for (double v : u) sum += std::pow(std::abs(v), p);
    }
    return std::pow(sum * f.grid()->cell(), 1.0 / p);
}

void MixedNormSpec::validate() const {
    if (!(q >= 1.0) || !(p >= 1.0)) throw InvalidArgument("mixed norm exponents must be >= 1");
}

double mixed_norm(const std::vector<double>& times, const std::vector<double>& spatial, double q) {
    if (times.size() != spatial.size() || times.empty()) {
        throw InvalidArgument("mixed_norm needs one spatial norm per time");
    }
    if (!(q >= 1.0)) throw InvalidArgument("mixed norm exponents must be >= 1");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) throw InvalidArgument("mixed_norm times must increase");
    }
    if (std::isinf(q)) return *std::max_element(spatial.begin(), spatial.end());
    double sum = 0.0;
    for (std::size_t k = 1; k < times.size(); ++k) {
        sum += 0.5 * (times[k] - times[k - 1]) * (std::pow(spatial[k], q) + std::pow(spatial[k - 1], q));
    }
    return std::pow(sum, 1.0 / q);
}

double mixed_norm(const Trajectory& traj, const MixedNormSpec& spec) {
    spec.validate();
    std::vector<double> spatial;
    spatial.reserve(traj.states.size());
    for (const auto& s : traj.states) spatial.push_back(lp_norm(s, spec.p));
    return mixed_norm(traj.times, spatial, spec.q);
}

ProbeReport probe_inequality(const std::string& name, const Functional& lhs, const Functional& rhs,
                             const std::vector<Field>& inputs) {
    ProbeReport r;
    r.name = name;
    r.n_inputs = inputs.size();
    if (!inputs.empty()) {
        r.nx = inputs.front().grid()->nx;
        r.ny = inputs.front().grid()->ny;
    }
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const double a = lhs(inputs[k]), b = rhs(inputs[k]);
        if (!std::isfinite(a) || !std::isfinite(b)) {
            throw NumericalBlowup("probe '" + name + "': functional not finite on input " + std::to_string(k));
        }
        double ratio = 0.0;
        if (b == 0.0) {
            if (a > 0.0) {
                ratio = std::numeric_limits<double>::infinity();
                if (!r.violation) r.violation_index = k;
                r.violation = true;
            }
        } else {
            ratio = a / b;
        }
        r.ratios.push_back(ratio);
        if (k == 0 || ratio > r.sup_ratio) {
            r.sup_ratio = ratio;
            r.argmax = k;
        }
    }
    return r;
}

std::string probe_report_json(const ProbeReport& r, const std::string& witness_file) {
    nlohmann::json j;
    j["name"] = r.name;
    if (std::isfinite(r.sup_ratio)) {
        j["sup_ratio"] = r.sup_ratio;
    } else {
        j["sup_ratio"] = nullptr;
    }
    j["n_inputs"] = r.n_inputs;
    j["grid"] = {r.nx, r.ny};
    j["witness_file"] = witness_file;
    if (r.violation) j["violation_index"] = r.violation_index;
    return j.dump(2);
}

} // namespace fzk
