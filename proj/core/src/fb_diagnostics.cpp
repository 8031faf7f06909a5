#include "fblab/fb_diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fblab {

ResidualReport free_boundary_residual(const AdmissiblePair& pair, const Region& omega,
                                      const NonlinearityProfile& p, double sigma,
                                      const InteractionKernel* k, const ResidualOptions& opts) {
    if (pair.violation_count != 0)
        throw std::invalid_argument("residual requires an admissible pair");
    const Grid& g = *pair.u.grid;
    const double h = g.h;
    const double step = 2.0 * h;
    const double delta = opts.delta > 0.0 ? opts.delta : 2.0 * h;
    const double stencil = opts.stencil > 0.0 ? opts.stencil : 6.0 * h;

    const PerimeterValue per = per_star(pair.e, omega, sigma, k);
    const double phi_prime = phi_eval(p, per.value).derivative;

    const auto pts = interface_points(pair.e, omega);
    if (pts.empty()) throw std::invalid_argument("empty interface in omega");

    const auto inside_omega = [&](Vec2 q) {
        int ix, iy;
        g.locate(q, ix, iy);
        return omega.mask[g.index(ix, iy)] != 0;
    };

    ResidualReport report;
    for (const auto& pt : pts) {
        bool excl = false;
        for (const Vec2& c : opts.excluded_centers)
            if (norm(pt.position - c) <= opts.exclusion_radius) excl = true;
        if (excl) {
            ++report.excluded;
            continue;
        }
        // the one-sided stencils need 2*step on both sides of the interface
        const Vec2 nu = pt.normal;
        const Vec2 in2 = pt.position - 2.0 * step * nu;
        const Vec2 out2 = pt.position + 2.0 * step * nu;
        if (!inside_omega(in2) || !inside_omega(out2)) {
            ++report.skipped;
            continue;
        }

        ResidualSample s;
        s.point = pt;
        const auto u_at = [&](Vec2 q) { return pair.u.interpolate(q); };
        const double f0 = u_at(pt.position);
        {
            const double f1 = u_at(pt.position - step * nu);
            const double f2 = u_at(in2);
            s.dplus = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * step);
        }
        {
            const double f1 = u_at(pt.position + step * nu);
            const double f2 = u_at(out2);
            s.dminus = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * step);
        }
        s.curvature = sigma == 1.0
                          ? classical_curvature(pair.e, pt.position, stencil)
                          : nonlocal_mean_curvature(pair.e, pt.position, sigma, *k, delta);
        s.phi_prime = phi_prime;
        s.xi = s.dplus * s.dplus - s.dminus * s.dminus - s.curvature * s.phi_prime;
        report.samples.push_back(s);
    }
    return report;
}

DensityProfile density_profile(const IndicatorSet& e, Vec2 center, double r_min, double r_max,
                               int n_radii) {
    const Grid& g = *e.grid;
    const double h = g.h;
    if (r_min < 2.0 * h) throw std::invalid_argument("radius below resolution");
    if (!(r_max > r_min) || n_radii < 1) throw std::invalid_argument("bad radius range");

    // center must sit on the discrete interface: both phases nearby
    {
        bool has_in = false, has_out = false;
        int cx, cy;
        g.locate(center, cx, cy);
        for (int dy = -2; dy <= 2; ++dy)
            for (int dx = -2; dx <= 2; ++dx) {
                const int jx = cx + dx, jy = cy + dy;
                if (!g.in_range(jx, jy)) continue;
                (e.is_inside(jx, jy) ? has_in : has_out) = true;
            }
        if (!has_in || !has_out)
            throw std::invalid_argument("density center is not on the discrete interface");
    }

    DensityProfile prof;
    const double ratio = n_radii > 1 ? std::pow(r_max / r_min, 1.0 / (n_radii - 1)) : 1.0;
    for (int i = 0; i < n_radii; ++i) prof.radii.push_back(r_min * std::pow(ratio, i));

    for (const double r : prof.radii) {
        std::size_t cin = 0, cout = 0;
        int cx, cy;
        g.locate(center, cx, cy);
        const int reach = static_cast<int>(std::ceil(r / h)) + 1;
        for (int jy = std::max(0, cy - reach); jy <= std::min(g.ny - 1, cy + reach); ++jy)
            for (int jx = std::max(0, cx - reach); jx <= std::min(g.nx - 1, cx + reach); ++jx) {
                if (norm(g.center(jx, jy) - center) >= r) continue;
                (e.is_inside(jx, jy) ? cin : cout) += 1;
            }
        const double vin = static_cast<double>(cin) * h * h;
        const double vout = static_cast<double>(cout) * h * h;
        prof.v_in.push_back(vin);
        prof.v_out.push_back(vout);
        prof.ratio_in.push_back(vin / (r * r));
        prof.ratio_out.push_back(vout / (r * r));

        const int m = std::max(64, static_cast<int>(std::ceil(4.0 * std::numbers::pi * r / h)));
        int on_in = 0;
        for (int s = 0; s < m; ++s) {
            const double th = 2.0 * std::numbers::pi * (s + 0.5) / m;
            const Vec2 q{center.x + r * std::cos(th), center.y + r * std::sin(th)};
            int jx, jy;
            g.locate(q, jx, jy);
            if (e.is_inside(jx, jy)) ++on_in;
        }
        const double circ = 2.0 * std::numbers::pi * r;
        prof.a_in.push_back(circ * on_in / m);
        prof.a_out.push_back(circ * (m - on_in) / m);
    }
    return prof;
}

GrowthFit growth_fit(const ScalarField& u, Vec2 center, double r_min, double r_max, int n_radii) {
    const Grid& g = *u.grid;
    if (!(r_max > r_min) || r_min <= 0.0 || n_radii < 4)
        throw std::invalid_argument("bad growth fit range");

    GrowthFit fit;
    const double ratio = std::pow(r_max / r_min, 1.0 / (n_radii - 1));
    int cx, cy;
    g.locate(center, cx, cy);
    for (int i = 0; i < n_radii; ++i) {
        const double r = r_min * std::pow(ratio, i);
        double sup = 0.0;
        const int reach = static_cast<int>(std::ceil(r / g.h)) + 1;
        for (int jy = std::max(0, cy - reach); jy <= std::min(g.ny - 1, cy + reach); ++jy)
            for (int jx = std::max(0, cx - reach); jx <= std::min(g.nx - 1, cx + reach); ++jx) {
                if (norm(g.center(jx, jy) - center) > r) continue;
                sup = std::max(sup, u.values[g.index(jx, jy)]);
            }
        if (sup > 0.0) {
            fit.radii.push_back(r);
            fit.sup_u.push_back(sup);
        }
    }
    if (fit.radii.size() < 4)
        throw std::invalid_argument("fewer than 4 usable radii for the growth fit");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(fit.radii.size());
    for (std::size_t i = 0; i < fit.radii.size(); ++i) {
        const double lx = std::log(fit.radii[i]), ly = std::log(fit.sup_u[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.prefactor = std::exp((sy - fit.exponent * sx) / n);
    return fit;
}

double holder_seminorm(const ScalarField& u, const Region& region, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("alpha must lie in (0, 1]");
    const Grid& g = *u.grid;
    std::vector<std::uint32_t> cells;
    for (std::size_t i = 0; i < region.mask.size(); ++i)
        if (region.mask[i]) cells.push_back(static_cast<std::uint32_t>(i));
    if (cells.size() < 2) return 0.0;

    const auto ratio = [&](std::uint32_t a, std::uint32_t b) {
        const Vec2 pa = g.center(static_cast<int>(a) % g.nx, static_cast<int>(a) / g.nx);
        const Vec2 pb = g.center(static_cast<int>(b) % g.nx, static_cast<int>(b) / g.nx);
        return std::abs(u.values[a] - u.values[b]) / std::pow(norm(pa - pb), alpha);
    };

    double best = 0.0;
    if (cells.size() <= 10'000) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            for (std::size_t j = i + 1; j < cells.size(); ++j)
                best = std::max(best, ratio(cells[i], cells[j]));
    } else {
        std::mt19937_64 rng(0x9E3779B97F4A7C15ull);
        std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
        for (int s = 0; s < 100'000; ++s) {
            const std::size_t i = pick(rng), j = pick(rng);
            if (i == j) continue;
            best = std::max(best, ratio(cells[i], cells[j]));
        }
    }
    return best;
}

IndicatorSet detect_u0(const ScalarField& u, const Region& omega, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    const Grid& g = *u.grid;
    IndicatorSet out;
    out.grid = &g;
    out.inside.assign(g.cell_count(), 0);
    out.frozen.assign(g.cell_count(), 0);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const std::size_t i = g.index(ix, iy);
            out.frozen[i] = omega.mask[i] ? 0 : 1;
            if (!omega.mask[i]) continue;
            const double v = u.values[i];
            if (std::abs(v) <= eps) {
                out.inside[i] = 1;
                continue;
            }
            if (v > eps) {
                const int nb[4][2] = {{ix + 1, iy}, {ix - 1, iy}, {ix, iy + 1}, {ix, iy - 1}};
                for (const auto& [jx, jy] : nb) {
                    if (!g.in_range(jx, jy)) continue;
                    if (u.values[g.index(jx, jy)] <= eps) {
                        out.inside[i] = 1;
                        break;
                    }
                }
            }
        }
    return out;
}

}  // namespace fblab
