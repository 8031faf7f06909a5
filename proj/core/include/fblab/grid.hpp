#pragma once

#include <cstddef>

#include "fblab/geometry.hpp"

namespace fblab {

/// Uniform square lattice over a centered computational box. Cell (ix, iy)
/// has center origin + (ix + 1/2, iy + 1/2) * h.
struct Grid {
    int nx = 0;
    int ny = 0;
    double h = 0.0;
    Vec2 origin;
    double upsilon = 0.0;  // enlargement width for the sigma = 1 perimeter

    std::size_t cell_count() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx + ix; }
    Vec2 center(int ix, int iy) const {
        return {origin.x + (ix + 0.5) * h, origin.y + (iy + 0.5) * h};
    }
    double half_width() const { return 0.5 * nx * h; }
    bool in_range(int ix, int iy) const { return ix >= 0 && ix < nx && iy >= 0 && iy < ny; }

    /// Cell containing a point (clamped to the box).
    void locate(Vec2 p, int& ix, int& iy) const;
};

/// Centered square grid; h = 2 * box_half_width / nx. nx must be even and >= 16,
/// upsilon in (0, 1/100] of the box width.
Grid build_grid(int nx, double box_half_width, double upsilon);

}  // namespace fblab
