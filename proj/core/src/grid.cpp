#include "fblab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fblab {

void Grid::locate(Vec2 p, int& ix, int& iy) const {
    ix = static_cast<int>(std::floor((p.x - origin.x) / h));
    iy = static_cast<int>(std::floor((p.y - origin.y) / h));
    ix = std::clamp(ix, 0, nx - 1);
    iy = std::clamp(iy, 0, ny - 1);
}

Grid build_grid(int nx, double box_half_width, double upsilon) {
    if (nx < 16 || nx % 2 != 0) throw std::invalid_argument("nx must be even and >= 16");
    if (!(box_half_width > 0.0)) throw std::invalid_argument("box_half_width must be positive");
    const double box_width = 2.0 * box_half_width;
    if (!(upsilon > 0.0) || upsilon > box_width / 100.0)
        throw std::invalid_argument("upsilon must lie in (0, 1/100] of the box width");
    Grid g;
    g.nx = nx;
    g.ny = nx;
    g.h = box_width / nx;
    g.origin = {-box_half_width, -box_half_width};
    g.upsilon = upsilon;
    return g;
}

}  // namespace fblab
