#pragma once

#include "frakzk/grid.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace fzk {

/// A real function whose Fourier transform is supported on a few points of
/// the lattice (i dxi, m deta). Only modes with kx > 0, or kx = 0 and ky >= 0,
/// are stored; their conjugate mirrors are implied. Values are samples of
/// the unitary transform  f^(k) = (1/2pi) \int f e^{-i k.x}.
struct SparseSpectrum {
    double dxi = 1.0;
    double deta = 1.0;
    double cell_area = 0.0;        ///< quadrature weight per mode; 0 means dxi * deta
    std::vector<std::int64_t> i;   ///< kx index
    std::vector<std::int64_t> m;   ///< ky index
    std::vector<cplx> value;

    std::size_t size() const { return value.size(); }
    double xi(std::size_t k) const { return i[k] * dxi; }
    double eta(std::size_t k) const { return m[k] * deta; }
    double cell() const { return cell_area > 0.0 ? cell_area : dxi * deta; }
    void push(std::int64_t ii, std::int64_t mm, cplx v);
    /// Both the stored modes and their mirrors, as one list.
    SparseSpectrum with_mirrors() const;
};

using LatticePoint = std::pair<std::int64_t, std::int64_t>;

struct LatticeHash {
    std::size_t operator()(const LatticePoint& p) const {
        std::uint64_t h = static_cast<std::uint64_t>(p.first) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<std::uint64_t>(p.second) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
        h ^= h >> 31;
        return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ULL);
    }
};

} // namespace fzk
