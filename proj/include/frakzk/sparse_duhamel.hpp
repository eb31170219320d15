#pragma once

#include "frakzk/dispersion.hpp"
#include "frakzk/sparse_spectrum.hpp"

#include <utility>
#include <vector>

namespace fzk {

/// Quadratic Duhamel term int_0^t W(t-s) (u u_x)(s) ds with u(s) = W(s) phi,
/// for phi given by a sparse spectrum. The product is formed at every time
/// node by direct convolution over the support (mirrors included), and the
/// time integral uses the composite Simpson rule on quad_steps panels.
/// Returns unitary-transform values at the requested lattice positions.
std::vector<cplx> sparse_duhamel_quadratic(const SparseSpectrum& phi, double t, const DispersionSpec& spec,
                                           const std::vector<std::pair<std::int64_t, std::int64_t>>& outputs,
                                           int quad_steps);

} // namespace fzk
