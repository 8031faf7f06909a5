#include "fblab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fblab/exterior_tail.hpp"

namespace fblab {

namespace {

double min_interface_distance(const IndicatorSet& e, Vec2 x) {
    const Region box = make_box_region(*e.grid);
    const auto pts = interface_points(e, box);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) best = std::min(best, norm(p.position - x));
    return best;
}

}  // namespace

double nonlocal_curvature_raw(const IndicatorSet& e, Vec2 x, const InteractionKernel& k,
                              double delta, double range) {
    const Grid& g = *e.grid;
    const bool windowed = range > 0.0;
    int x0 = 0, x1 = g.nx - 1, y0 = 0, y1 = g.ny - 1;
    if (windowed) {
        int cx, cy;
        g.locate(x, cx, cy);
        const int reach = static_cast<int>(std::ceil(range / g.h)) + 1;
        x0 = std::max(0, cx - reach);
        x1 = std::min(g.nx - 1, cx + reach);
        y0 = std::max(0, cy - reach);
        y1 = std::min(g.ny - 1, cy + reach);
    }
    double sum = 0.0, comp = 0.0;
    for (int iy = y0; iy <= y1; ++iy)
        for (int ix = x0; ix <= x1; ++ix) {
            const Vec2 c = g.center(ix, iy);
            const double d = norm(c - x);
            if (d <= delta) continue;
            if (windowed && d > range) continue;
            const double sgn = e.inside[g.index(ix, iy)] ? -1.0 : 1.0;
            const double v = sgn * k.point_weight(d) - comp;
            const double t = sum + v;
            comp = (t - sum) - v;
            sum = t;
        }
    if (!windowed) {
        double t_set = 0.0, t_full = 0.0;
        tail_at_point(e, k, x, t_set, t_full);
        sum += (t_full - t_set) - t_set;  // chi_Ec - chi_E beyond the box
    }
    return sum;
}

double nonlocal_mean_curvature(const IndicatorSet& e, Vec2 x, double sigma,
                               const InteractionKernel& k, double delta) {
    const Grid& g = *e.grid;
    if (!(sigma > 0.0) || sigma >= 1.0)
        throw std::invalid_argument("nonlocal curvature requires sigma in (0, 1)");
    if (k.sigma != sigma) throw std::invalid_argument("kernel sigma mismatch");
    if (delta < 2.0 * g.h || delta > 8.0 * g.h)
        throw std::invalid_argument("delta must lie in [2h, 8h]");
    if (min_interface_distance(e, x) > g.h)
        throw std::invalid_argument("curvature requested off the boundary");
    const double h1 = nonlocal_curvature_raw(e, x, k, delta);
    const double h2 = nonlocal_curvature_raw(e, x, k, 2.0 * delta);
    // remove the leading O(delta^(1-sigma)) flat-component bias
    const double w = std::pow(2.0, 1.0 - sigma) - 1.0;
    return h1 + (h1 - h2) / w;
}

double classical_curvature(const IndicatorSet& e, Vec2 x, double stencil) {
    const Grid& g = *e.grid;
    if (stencil < 3.0 * g.h || stencil > 10.0 * g.h)
        throw std::invalid_argument("stencil must lie in [3h, 10h]");
    const Region box = make_box_region(g);
    const auto pts = interface_points(e, box);

    std::vector<Vec2> local;
    for (const auto& p : pts)
        if (norm(p.position - x) <= stencil) local.push_back(p.position);
    if (local.size() < 5) throw std::invalid_argument("insufficient interface sampling");

    // algebraic circle fit: minimize sum ((p-c)^2 - R^2)^2, linear in
    // (2cx, 2cy, R^2 - |c|^2)
    double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, sxz = 0, syz = 0, sz = 0;
    const double n = static_cast<double>(local.size());
    for (const Vec2& p : local) {
        const double px = p.x - x.x, py = p.y - x.y;  // recentered for conditioning
        const double z = px * px + py * py;
        sxx += px * px;
        sxy += px * py;
        syy += py * py;
        sx += px;
        sy += py;
        sxz += px * z;
        syz += py * z;
        sz += z;
    }
    // normal equations for z = a*px + b*py + c
    const double m11 = sxx, m12 = sxy, m13 = sx;
    const double m22 = syy, m23 = sy, m33 = n;
    const double b1 = sxz, b2 = syz, b3 = sz;
    const double det = m11 * (m22 * m33 - m23 * m23) - m12 * (m12 * m33 - m23 * m13) +
                       m13 * (m12 * m23 - m22 * m13);
    if (std::abs(det) < 1e-30) throw std::runtime_error("degenerate circle fit");
    const double a = (b1 * (m22 * m33 - m23 * m23) - m12 * (b2 * m33 - m23 * b3) +
                      m13 * (b2 * m23 - m22 * b3)) /
                     det;
    const double b = (m11 * (b2 * m33 - b3 * m23) - b1 * (m12 * m33 - m23 * m13) +
                      m13 * (m12 * b3 - b2 * m13)) /
                     det;
    const double c = (m11 * (m22 * b3 - m23 * b2) - m12 * (m12 * b3 - b2 * m13) +
                      b1 * (m12 * m23 - m22 * m13)) /
                     det;
    const Vec2 center{0.5 * a, 0.5 * b};
    const double r2 = c + center.x * center.x + center.y * center.y;
    if (!(r2 > 0.0)) throw std::runtime_error("degenerate circle fit");
    const double radius = std::sqrt(r2);

    // positive where E is convex: the fit center lies on the inside of E
    int cx, cy;
    g.locate({center.x + x.x, center.y + x.y}, cx, cy);
    const double sign = e.is_inside(cx, cy) ? 1.0 : -1.0;
    return sign / radius;
}

}  // namespace fblab
