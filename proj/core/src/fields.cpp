#include "fblab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fblab {

std::size_t IndicatorSet::count_inside() const {
    return static_cast<std::size_t>(std::count(inside.begin(), inside.end(), std::uint8_t{1}));
}

IndicatorSet IndicatorSet::complement() const {
    IndicatorSet out = *this;
    for (auto& v : out.inside) v = v ? 0 : 1;
    return out;
}

IndicatorSet make_indicator(const Grid& grid, const std::function<bool(Vec2)>& membership,
                            const Region* active) {
    IndicatorSet e;
    e.grid = &grid;
    e.inside.resize(grid.cell_count());
    e.frozen.resize(grid.cell_count());
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix) {
            const std::size_t i = grid.index(ix, iy);
            e.inside[i] = membership(grid.center(ix, iy)) ? 1 : 0;
            e.frozen[i] = (active && active->mask[i]) ? 0 : 1;
        }
    if (!active) std::fill(e.frozen.begin(), e.frozen.end(), std::uint8_t{0});
    return e;
}

double ScalarField::interpolate(Vec2 p) const {
    const Grid& g = *grid;
    const double fx = (p.x - g.origin.x) / g.h - 0.5;
    const double fy = (p.y - g.origin.y) / g.h - 0.5;
    int ix = static_cast<int>(std::floor(fx));
    int iy = static_cast<int>(std::floor(fy));
    ix = std::clamp(ix, 0, g.nx - 2);
    iy = std::clamp(iy, 0, g.ny - 2);
    const double tx = std::clamp(fx - ix, 0.0, 1.0);
    const double ty = std::clamp(fy - iy, 0.0, 1.0);
    const double v00 = values[g.index(ix, iy)], v10 = values[g.index(ix + 1, iy)];
    const double v01 = values[g.index(ix, iy + 1)], v11 = values[g.index(ix + 1, iy + 1)];
    return v00 * (1 - tx) * (1 - ty) + v10 * tx * (1 - ty) + v01 * (1 - tx) * ty + v11 * tx * ty;
}

ScalarField make_field(const Grid& grid, const std::function<double(Vec2)>& f,
                       const Region* active) {
    ScalarField u;
    u.grid = &grid;
    u.values.resize(grid.cell_count());
    u.frozen.resize(grid.cell_count());
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix) {
            const std::size_t i = grid.index(ix, iy);
            const double v = f(grid.center(ix, iy));
            if (!std::isfinite(v)) throw std::invalid_argument("field values must be finite");
            u.values[i] = v;
            u.frozen[i] = (active && active->mask[i]) ? 0 : 1;
        }
    if (!active) std::fill(u.frozen.begin(), u.frozen.end(), std::uint8_t{0});
    return u;
}

namespace {

bool violates(double v, bool inside) { return inside ? (v < 0.0) : (v > 0.0); }

}  // namespace

std::size_t count_violations(const ScalarField& u, const IndicatorSet& e) {
    if (u.grid != e.grid) throw std::invalid_argument("u and E must share a grid");
    std::size_t n = 0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
        if (violates(u.values[i], e.inside[i] != 0)) ++n;
    return n;
}

AdmissiblePair make_admissible(const ScalarField& u, const IndicatorSet& e,
                               AdmissiblePolicy policy) {
    if (u.grid != e.grid) throw std::invalid_argument("u and E must share a grid");
    AdmissiblePair pair{u, e, 0};
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        if (!violates(pair.u.values[i], pair.e.inside[i] != 0)) continue;
        switch (policy) {
            case AdmissiblePolicy::reject:
                throw std::invalid_argument("pair violates the sign condition");
            case AdmissiblePolicy::clamp_u:
                if (pair.u.frozen[i])
                    throw std::invalid_argument("sign violation at a frozen u-cell");
                pair.u.values[i] = 0.0;
                break;
            case AdmissiblePolicy::flip_e:
                if (pair.e.frozen[i])
                    throw std::invalid_argument("sign violation at a frozen set cell");
                pair.e.inside[i] = pair.u.values[i] > 0.0 ? 1 : 0;
                break;
        }
    }
    pair.violation_count = count_violations(pair.u, pair.e);
    return pair;
}

}  // namespace fblab
