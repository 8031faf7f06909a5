#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fblab/grid.hpp"

namespace fblab {

/// Cell-rasterized subdomain. `mask` is the region itself; `mask_upsilon` is
/// its dilation by the grid's upsilon (cells whose center lies within upsilon
/// of some mask cell center), used by the sigma = 1 perimeter.
struct Region {
    const Grid* grid = nullptr;
    std::vector<std::uint8_t> mask;
    std::vector<std::uint8_t> mask_upsilon;
    std::string label;

    bool contains(int ix, int iy) const { return mask[grid->index(ix, iy)] != 0; }
    std::size_t cell_count() const;
    /// True when some mask cell touches the outermost cell ring of the box.
    bool touches_box_edge() const;
    /// Shortest distance from a mask cell center to the box boundary.
    double distance_to_box_edge() const;
    double area() const;  // cell count * h^2
};

Region make_region(const Grid& grid, std::vector<std::uint8_t> mask, std::string label);

/// Cells with |center - c| < radius. Throws if no cell qualifies.
Region rasterize_ball(const Grid& grid, Vec2 center, double radius);

/// Whole box.
Region make_box_region(const Grid& grid);

/// Distance-based dilation with an explicit width (defaults to grid.upsilon
/// when width <= 0).
std::vector<std::uint8_t> dilate_mask(const Grid& grid, const std::vector<std::uint8_t>& mask,
                                      double width);

}  // namespace fblab
