#include "fblab/region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fblab {

std::size_t Region::cell_count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

bool Region::touches_box_edge() const {
    const int nx = grid->nx, ny = grid->ny;
    for (int ix = 0; ix < nx; ++ix)
        if (mask[grid->index(ix, 0)] || mask[grid->index(ix, ny - 1)]) return true;
    for (int iy = 0; iy < ny; ++iy)
        if (mask[grid->index(0, iy)] || mask[grid->index(nx - 1, iy)]) return true;
    return false;
}

double Region::distance_to_box_edge() const {
    const double half = grid->half_width();
    double best = 2.0 * half;
    for (int iy = 0; iy < grid->ny; ++iy)
        for (int ix = 0; ix < grid->nx; ++ix) {
            if (!mask[grid->index(ix, iy)]) continue;
            const Vec2 c = grid->center(ix, iy);
            best = std::min({best, half - std::abs(c.x), half - std::abs(c.y)});
        }
    return best;
}

double Region::area() const { return static_cast<double>(cell_count()) * grid->h * grid->h; }

std::vector<std::uint8_t> dilate_mask(const Grid& grid, const std::vector<std::uint8_t>& mask,
                                      double width) {
    if (width <= 0.0) width = grid.upsilon;
    const int reach = static_cast<int>(std::floor(width / grid.h));
    // offsets with |delta| <= width (cell-center distance)
    std::vector<std::pair<int, int>> offsets;
    for (int dy = -reach; dy <= reach; ++dy)
        for (int dx = -reach; dx <= reach; ++dx)
            if (grid.h * std::hypot(double(dx), double(dy)) <= width) offsets.emplace_back(dx, dy);

    std::vector<std::uint8_t> out(grid.cell_count(), 0);
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix) {
            if (!mask[grid.index(ix, iy)]) continue;
            for (auto [dx, dy] : offsets) {
                const int jx = ix + dx, jy = iy + dy;
                if (grid.in_range(jx, jy)) out[grid.index(jx, jy)] = 1;
            }
        }
    return out;
}

Region make_region(const Grid& grid, std::vector<std::uint8_t> mask, std::string label) {
    if (mask.size() != grid.cell_count()) throw std::invalid_argument("mask size mismatch");
    Region r;
    r.grid = &grid;
    r.mask = std::move(mask);
    r.mask_upsilon = dilate_mask(grid, r.mask, grid.upsilon);
    r.label = std::move(label);
    return r;
}

Region rasterize_ball(const Grid& grid, Vec2 center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
    std::vector<std::uint8_t> mask(grid.cell_count(), 0);
    bool any = false;
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix) {
            if (norm(grid.center(ix, iy) - center) < radius) {
                mask[grid.index(ix, iy)] = 1;
                any = true;
            }
        }
    if (!any) throw std::invalid_argument("ball does not intersect grid");
    return make_region(grid, std::move(mask), "ball");
}

Region make_box_region(const Grid& grid) {
    return make_region(grid, std::vector<std::uint8_t>(grid.cell_count(), 1), "custom");
}

}  // namespace fblab
