#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fblab/region.hpp"

namespace fblab {

/// Rasterized measurable set: chi_E at cell centers. Frozen cells (exterior
/// data) may not change under any minimizer step.
struct IndicatorSet {
    const Grid* grid = nullptr;
    std::vector<std::uint8_t> inside;
    std::vector<std::uint8_t> frozen;

    bool is_inside(int ix, int iy) const { return inside[grid->index(ix, iy)] != 0; }
    std::size_t count_inside() const;
    IndicatorSet complement() const;
};

IndicatorSet make_indicator(const Grid& grid, const std::function<bool(Vec2)>& membership,
                            const Region* active = nullptr);

/// Grid function with frozen Dirichlet data outside the active region.
struct ScalarField {
    const Grid* grid = nullptr;
    std::vector<double> values;
    std::vector<std::uint8_t> frozen;

    double at(int ix, int iy) const { return values[grid->index(ix, iy)]; }
    /// Bilinear interpolation on the cell-center lattice (clamped at the box).
    double interpolate(Vec2 p) const;
};

ScalarField make_field(const Grid& grid, const std::function<double(Vec2)>& f,
                       const Region* active = nullptr);

enum class AdmissiblePolicy { reject, clamp_u, flip_e };

/// Sign-compatible pair: u >= 0 on E, u <= 0 on E^c, violation_count == 0
/// after construction through make_admissible.
struct AdmissiblePair {
    ScalarField u;
    IndicatorSet e;
    std::size_t violation_count = 0;
};

std::size_t count_violations(const ScalarField& u, const IndicatorSet& e);

/// Repairs or rejects sign incompatibilities between u and E.
///   reject:  throws if any cell violates the sign condition,
///   clamp_u: zeroes u at violating cells (throws on frozen u-cells),
///   flip_e:  sets membership to (u > 0) at violating cells (throws on frozen e-cells).
AdmissiblePair make_admissible(const ScalarField& u, const IndicatorSet& e, AdmissiblePolicy policy);

}  // namespace fblab
