#include "fblab/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fblab {

double dirichlet_energy(const ScalarField& u, const Region& omega) {
    const Grid& g = *u.grid;
    double sum = 0.0, comp = 0.0;
    const auto add = [&](double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const std::size_t i = g.index(ix, iy);
            const int mi = omega.mask[i];
            if (ix + 1 < g.nx) {
                const std::size_t j = g.index(ix + 1, iy);
                const int w = mi + omega.mask[j];
                if (w) {
                    const double d = u.values[i] - u.values[j];
                    add(0.5 * w * d * d);
                }
            }
            if (iy + 1 < g.ny) {
                const std::size_t j = g.index(ix, iy + 1);
                const int w = mi + omega.mask[j];
                if (w) {
                    const double d = u.values[i] - u.values[j];
                    add(0.5 * w * d * d);
                }
            }
        }
    return sum;
}

namespace {

struct System {
    const Grid* g;
    std::vector<std::int32_t> free_index;  // cell -> free slot or -1
    std::vector<std::uint32_t> cells;      // free slot -> cell
    std::vector<double> diag;              // sum of edge weights per free cell
    std::vector<double> rhs;
};

// Edge weight of the energy form: (chi_omega(i) + chi_omega(j)) / 2.
double edge_w(const Region& omega, std::size_t i, std::size_t j) {
    return 0.5 * (omega.mask[i] + omega.mask[j]);
}

System build_system(const ScalarField& u, const Region& omega, const IndicatorSet* zero_set) {
    const Grid& g = *u.grid;
    System s;
    s.g = &g;
    s.free_index.assign(g.cell_count(), -1);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const std::size_t i = g.index(ix, iy);
            if (!omega.mask[i] || u.frozen[i]) continue;
            if (zero_set && zero_set->inside[i]) continue;
            s.free_index[i] = static_cast<std::int32_t>(s.cells.size());
            s.cells.push_back(static_cast<std::uint32_t>(i));
        }
    s.diag.assign(s.cells.size(), 0.0);
    s.rhs.assign(s.cells.size(), 0.0);
    for (std::size_t slot = 0; slot < s.cells.size(); ++slot) {
        const std::size_t i = s.cells[slot];
        const int ix = static_cast<int>(i) % g.nx, iy = static_cast<int>(i) / g.nx;
        const int nb[4][2] = {{ix + 1, iy}, {ix - 1, iy}, {ix, iy + 1}, {ix, iy - 1}};
        for (const auto& [jx, jy] : nb) {
            if (!g.in_range(jx, jy)) continue;
            const std::size_t j = g.index(jx, jy);
            const double w = edge_w(omega, i, j);
            if (w == 0.0) continue;
            s.diag[slot] += w;
            if (s.free_index[j] < 0) {
                const double fixed = (zero_set && zero_set->inside[j] && omega.mask[j] &&
                                      !u.frozen[j])
                                         ? 0.0
                                         : u.values[j];
                s.rhs[slot] += w * fixed;
            }
        }
    }
    return s;
}

void apply(const System& s, const Region& omega, const std::vector<double>& x,
           std::vector<double>& out) {
    const Grid& g = *s.g;
    for (std::size_t slot = 0; slot < s.cells.size(); ++slot) {
        const std::size_t i = s.cells[slot];
        const int ix = static_cast<int>(i) % g.nx, iy = static_cast<int>(i) / g.nx;
        double acc = s.diag[slot] * x[slot];
        const int nb[4][2] = {{ix + 1, iy}, {ix - 1, iy}, {ix, iy + 1}, {ix, iy - 1}};
        for (const auto& [jx, jy] : nb) {
            if (!g.in_range(jx, jy)) continue;
            const std::size_t j = g.index(jx, jy);
            if (s.free_index[j] < 0) continue;
            acc -= edge_w(omega, i, j) * x[s.free_index[j]];
        }
        out[slot] = acc;
    }
}

}  // namespace

std::pair<ScalarField, SolveReport> harmonic_replacement(const ScalarField& u,
                                                         const Region& solve_region,
                                                         const IndicatorSet* zero_set,
                                                         double tol) {
    const Grid& g = *u.grid;
    for (double v : u.values)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite boundary data");

    System s = build_system(u, solve_region, zero_set);
    const std::size_t n = s.cells.size();

    ScalarField out = u;
    if (zero_set)
        for (std::size_t i = 0; i < out.values.size(); ++i)
            if (zero_set->inside[i] && solve_region.mask[i] && !u.frozen[i]) out.values[i] = 0.0;

    SolveReport report;
    if (n == 0) {
        report.energy = dirichlet_energy(out, solve_region);
        return {out, report};
    }

    std::vector<double> x(n), r(n), z(n), p(n), ap(n);
    for (std::size_t slot = 0; slot < n; ++slot) x[slot] = u.values[s.cells[slot]];
    apply(s, solve_region, x, ap);
    double rmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = s.rhs[i] - ap[i];
        rmax = std::max(rmax, std::abs(r[i]));
    }

    double rz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = r[i] / s.diag[i];
        rz += r[i] * z[i];
        p[i] = z[i];
    }

    const int max_iter = 30 * std::max(g.nx, g.ny) + 2000;
    int iter = 0;
    while (rmax > tol && iter < max_iter) {
        apply(s, solve_region, p, ap);
        double pap = 0.0;
        for (std::size_t i = 0; i < n; ++i) pap += p[i] * ap[i];
        if (pap <= 0.0) break;
        const double alpha = rz / pap;
        rmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
            rmax = std::max(rmax, std::abs(r[i]));
        }
        double rz_new = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = r[i] / s.diag[i];
            rz_new += r[i] * z[i];
        }
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        ++iter;
    }
    if (rmax > tol) {
        std::ostringstream msg;
        msg << "harmonic replacement did not converge: residual " << rmax << " after " << iter
            << " iterations";
        throw std::runtime_error(msg.str());
    }

    for (std::size_t slot = 0; slot < n; ++slot) out.values[s.cells[slot]] = x[slot];
    report.iterations = iter;
    report.residual = rmax;
    report.energy = dirichlet_energy(out, solve_region);
    return {out, report};
}

double subharmonicity_defect(const ScalarField& u, const Region& omega) {
    const Grid& g = *u.grid;
    double worst = 0.0;
    for (int iy = 1; iy + 1 < g.ny; ++iy)
        for (int ix = 1; ix + 1 < g.nx; ++ix) {
            const std::size_t i = g.index(ix, iy);
            if (!omega.mask[i]) continue;
            const std::size_t e = g.index(ix + 1, iy), w = g.index(ix - 1, iy);
            const std::size_t nn = g.index(ix, iy + 1), ss = g.index(ix, iy - 1);
            if (!omega.mask[e] || !omega.mask[w] || !omega.mask[nn] || !omega.mask[ss]) continue;
            const auto up = [&](std::size_t j) { return std::max(u.values[j], 0.0); };
            const auto um = [&](std::size_t j) { return std::max(-u.values[j], 0.0); };
            const double dplus = up(i) - 0.25 * (up(e) + up(w) + up(nn) + up(ss));
            const double dminus = um(i) - 0.25 * (um(e) + um(w) + um(nn) + um(ss));
            worst = std::max({worst, dplus, dminus});
        }
    return worst;
}

double max_principle_check(const ScalarField& u, const Region& omega, double a, BoundSide side) {
    const Grid& g = *u.grid;
    const double sign = side == BoundSide::lower ? 1.0 : -1.0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
        if (!omega.mask[i] && sign * (u.values[i] - a) < 0.0)
            throw std::invalid_argument("exterior datum violates the bound");
    double extreme = side == BoundSide::lower ? std::numeric_limits<double>::infinity()
                                              : -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        if (!omega.mask[i]) continue;
        extreme = side == BoundSide::lower ? std::min(extreme, u.values[i])
                                           : std::max(extreme, u.values[i]);
    }
    if (!std::isfinite(extreme)) return 0.0;
    return side == BoundSide::lower ? std::max(0.0, a - extreme) : std::max(0.0, extreme - a);
}

}  // namespace fblab
