#include "fblab/interface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace fblab {

namespace {

// 5x5 binomial weights: twice the [1 2 1]/4 stencil per axis.
constexpr int kBinom[5] = {1, 4, 6, 4, 1};

double psi_at(const IndicatorSet& e, int ix, int iy) {
    const Grid& g = *e.grid;
    int acc = 0;
    for (int dy = -2; dy <= 2; ++dy)
        for (int dx = -2; dx <= 2; ++dx) {
            const int jx = std::clamp(ix + dx, 0, g.nx - 1);
            const int jy = std::clamp(iy + dy, 0, g.ny - 1);
            acc += kBinom[dx + 2] * kBinom[dy + 2] * (e.inside[g.index(jx, jy)] ? 1 : 0);
        }
    return acc / 256.0;
}

struct Segment {
    Vec2 a, b;
    // lattice-edge ids of the two crossing endpoints (node_index*2 + axis)
    std::size_t edge_a, edge_b;
};

constexpr double kLevel = 0.5;

// Emits the marching-squares segments of one block whose corner values are
// v00, v10, v11, v01 (nodes (bx,by), (bx+1,by), (bx+1,by+1), (bx,by+1)).
template <typename Emit>
void block_segments(const Grid& g, int bx, int by, double v00, double v10, double v11, double v01,
                    const Emit& emit) {
    const int code = (v00 > kLevel ? 1 : 0) | (v10 > kLevel ? 2 : 0) | (v11 > kLevel ? 4 : 0) |
                     (v01 > kLevel ? 8 : 0);
    if (code == 0 || code == 15) return;

    const Vec2 p00 = g.center(bx, by);
    const double h = g.h;
    const auto cross = [&](double va, double vb) { return (kLevel - va) / (vb - va); };

    // crossing points and their lattice-edge ids
    const std::size_t nb = g.index(bx, by), nr = g.index(bx + 1, by), nt = g.index(bx, by + 1);
    const auto bottom = [&] { return std::pair{Vec2{p00.x + cross(v00, v10) * h, p00.y}, nb * 2}; };
    const auto top = [&] { return std::pair{Vec2{p00.x + cross(v01, v11) * h, p00.y + h}, nt * 2}; };
    const auto left = [&] { return std::pair{Vec2{p00.x, p00.y + cross(v00, v01) * h}, nb * 2 + 1}; };
    const auto right = [&] {
        return std::pair{Vec2{p00.x + h, p00.y + cross(v10, v11) * h}, nr * 2 + 1};
    };

    const auto join = [&](const std::pair<Vec2, std::size_t>& a,
                          const std::pair<Vec2, std::size_t>& b) {
        emit(Segment{a.first, b.first, a.second, b.second});
    };

    switch (code) {
        case 1: case 14: join(left(), bottom()); break;
        case 2: case 13: join(bottom(), right()); break;
        case 4: case 11: join(right(), top()); break;
        case 8: case 7: join(top(), left()); break;
        case 3: case 12: join(left(), right()); break;
        case 6: case 9: join(bottom(), top()); break;
        case 5: {  // corners 00 and 11 inside
            const bool center = 0.25 * (v00 + v10 + v11 + v01) > kLevel;
            if (center) {
                join(bottom(), right());
                join(top(), left());
            } else {
                join(left(), bottom());
                join(right(), top());
            }
            break;
        }
        case 10: {  // corners 10 and 01 inside
            const bool center = 0.25 * (v00 + v10 + v11 + v01) > kLevel;
            if (center) {
                join(left(), bottom());
                join(right(), top());
            } else {
                join(bottom(), right());
                join(top(), left());
            }
            break;
        }
        default: break;
    }
}

bool midpoint_in(const Grid& g, const std::vector<std::uint8_t>& mask, Vec2 a, Vec2 b) {
    int ix, iy;
    g.locate({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}, ix, iy);
    return mask[g.index(ix, iy)] != 0;
}

}  // namespace

std::vector<double> smoothed_indicator(const IndicatorSet& e) {
    const Grid& g = *e.grid;
    std::vector<double> psi(g.cell_count());
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) psi[g.index(ix, iy)] = psi_at(e, ix, iy);
    return psi;
}

double interface_length(const IndicatorSet& e, const std::vector<std::uint8_t>& clip_mask) {
    const Grid& g = *e.grid;
    const std::vector<double> psi = smoothed_indicator(e);
    double total = 0.0, comp = 0.0;  // Kahan
    for (int by = 0; by + 1 < g.ny; ++by)
        for (int bx = 0; bx + 1 < g.nx; ++bx)
            block_segments(g, bx, by, psi[g.index(bx, by)], psi[g.index(bx + 1, by)],
                           psi[g.index(bx + 1, by + 1)], psi[g.index(bx, by + 1)],
                           [&](const Segment& s) {
                               if (!midpoint_in(g, clip_mask, s.a, s.b)) return;
                               const double y = norm(s.b - s.a) - comp;
                               const double t = total + y;
                               comp = (t - total) - y;
                               total = t;
                           });
    return total;
}

double interface_length_window(const IndicatorSet& e, const std::vector<std::uint8_t>& clip_mask,
                               int x0, int x1, int y0, int y1) {
    const Grid& g = *e.grid;
    x0 = std::max(x0, 0);
    y0 = std::max(y0, 0);
    x1 = std::min(x1, g.nx - 2);
    y1 = std::min(y1, g.ny - 2);
    double total = 0.0;
    for (int by = y0; by <= y1; ++by)
        for (int bx = x0; bx <= x1; ++bx)
            block_segments(g, bx, by, psi_at(e, bx, by), psi_at(e, bx + 1, by),
                           psi_at(e, bx + 1, by + 1), psi_at(e, bx, by + 1),
                           [&](const Segment& s) {
                               if (midpoint_in(g, clip_mask, s.a, s.b)) total += norm(s.b - s.a);
                           });
    return total;
}

std::vector<InterfacePoint> interface_points(const IndicatorSet& e, const Region& clip) {
    const Grid& g = *e.grid;
    const std::vector<double> psi = smoothed_indicator(e);

    struct Crossing {
        Vec2 pos;
        double length = 0.0;
    };
    std::map<std::size_t, Crossing> crossings;  // ordered: deterministic output

    for (int by = 0; by + 1 < g.ny; ++by)
        for (int bx = 0; bx + 1 < g.nx; ++bx)
            block_segments(g, bx, by, psi[g.index(bx, by)], psi[g.index(bx + 1, by)],
                           psi[g.index(bx + 1, by + 1)], psi[g.index(bx, by + 1)],
                           [&](const Segment& s) {
                               if (!midpoint_in(g, clip.mask, s.a, s.b)) return;
                               const double half = 0.5 * norm(s.b - s.a);
                               auto& ca = crossings[s.edge_a];
                               ca.pos = s.a;
                               ca.length += half;
                               auto& cb = crossings[s.edge_b];
                               cb.pos = s.b;
                               cb.length += half;
                           });

    // gradient of psi on the node lattice, for normals
    const auto grad = [&](Vec2 p) -> Vec2 {
        const double fx = (p.x - g.origin.x) / g.h - 0.5;
        const double fy = (p.y - g.origin.y) / g.h - 0.5;
        const int ix = std::clamp(static_cast<int>(std::floor(fx)), 0, g.nx - 2);
        const int iy = std::clamp(static_cast<int>(std::floor(fy)), 0, g.ny - 2);
        const double tx = std::clamp(fx - ix, 0.0, 1.0);
        const double ty = std::clamp(fy - iy, 0.0, 1.0);
        const auto node_grad = [&](int nxi, int nyi) -> Vec2 {
            const int xp = std::min(nxi + 1, g.nx - 1), xm = std::max(nxi - 1, 0);
            const int yp = std::min(nyi + 1, g.ny - 1), ym = std::max(nyi - 1, 0);
            return {(psi[g.index(xp, nyi)] - psi[g.index(xm, nyi)]) / ((xp - xm) * g.h),
                    (psi[g.index(nxi, yp)] - psi[g.index(nxi, ym)]) / ((yp - ym) * g.h)};
        };
        const Vec2 g00 = node_grad(ix, iy), g10 = node_grad(ix + 1, iy);
        const Vec2 g01 = node_grad(ix, iy + 1), g11 = node_grad(ix + 1, iy + 1);
        return {g00.x * (1 - tx) * (1 - ty) + g10.x * tx * (1 - ty) + g01.x * (1 - tx) * ty +
                    g11.x * tx * ty,
                g00.y * (1 - tx) * (1 - ty) + g10.y * tx * (1 - ty) + g01.y * (1 - tx) * ty +
                    g11.y * tx * ty};
    };

    std::vector<InterfacePoint> out;
    out.reserve(crossings.size());
    for (const auto& [edge, c] : crossings) {
        if (c.length <= 0.0) continue;
        InterfacePoint p;
        p.position = c.pos;
        p.segment_length = c.length;
        Vec2 gv = grad(c.pos);
        const double gn = norm(gv);
        if (gn > 1e-14) {
            p.normal = {-gv.x / gn, -gv.y / gn};  // psi is larger inside E
        } else {
            // degenerate gradient: fall back to the lattice edge direction
            const bool horizontal_edge = (edge % 2) == 0;
            p.normal = horizontal_edge ? Vec2{0.0, 1.0} : Vec2{1.0, 0.0};
            int ix, iy;
            g.locate(c.pos, ix, iy);
            if (e.is_inside(ix, iy)) p.normal = {-p.normal.x, -p.normal.y};
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace fblab
