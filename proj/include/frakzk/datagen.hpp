#pragma once

#include "frakzk/field.hpp"

#include <json.hpp>

#include <cstdint>
#include <set>
#include <string>

namespace fzk {

/// Deterministic initial data on a grid.
///
/// kinds and their parameters (all optional unless noted):
///   gaussian  amplitude, x0, y0, sx, sy, zero_x_mean
///   noise     amplitude, kmax, decay, zero_x_mean   (band-limited, |k| <= kmax;
///             amplitude is the L2 norm)
///   bump      amplitude, x0, y0, kmax, power, zero_x_mean   (spectrum (1 - |k|^2/kmax^2)^power)
///   boxes     alpha, N, eps, s1, s2, rule   (the two-box spectrum of the counterexample)
///   file      path (required)
/// Noise coefficients are drawn mode by mode in an order that does not
/// depend on the grid size, so the same seed gives the same function on any
/// grid that resolves kmax. Throws InvalidArgument on unknown kinds or keys.
Field gen_data(const std::string& kind, const nlohmann::json& params, GridPtr grid, std::uint64_t seed);

/// Same, with the kind read from params["kind"].
Field gen_data(const nlohmann::json& params_with_kind, GridPtr grid, std::uint64_t seed);

/// Keys accepted by a data kind (besides "kind"); throws on unknown kinds.
const std::set<std::string>& data_kind_keys(const std::string& kind);

/// Removes the kx = 0 plane, keeping the representation.
Field project_zero_x_mean(const Field& f);

} // namespace fzk
