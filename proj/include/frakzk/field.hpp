#pragma once

#include "frakzk/grid.hpp"

#include <vector>

namespace fzk {

enum class Representation { physical, spectral };

/// Samples of a real function on a grid, held either as real samples or
/// as the half spectrum of coefficients c_k = DFT(f)_k / (nx*ny).
class Field {
public:
    Field() = default;

    static Field physical(GridPtr grid, std::vector<double> samples);
    static Field spectral(GridPtr grid, std::vector<cplx> coeffs);
    static Field zeros(GridPtr grid, Representation rep = Representation::physical);

    const GridPtr& grid() const { return grid_; }
    Representation representation() const { return rep_; }
    bool is_physical() const { return rep_ == Representation::physical; }
    bool is_spectral() const { return rep_ == Representation::spectral; }

    const std::vector<double>& samples() const;
    const std::vector<cplx>& coeffs() const;
    std::vector<double>& samples_mut();
    std::vector<cplx>& coeffs_mut();

private:
    GridPtr grid_;
    Representation rep_ = Representation::physical;
    std::vector<double> phys_;
    std::vector<cplx> spec_;
};

/// Physical-space view regardless of the stored representation.
std::vector<double> physical_samples(const Field& f);
/// Spectral view regardless of the stored representation.
std::vector<cplx> spectral_coeffs(const Field& f);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);

} // namespace fzk
