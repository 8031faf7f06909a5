#include "fblab/exterior_tail.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fblab {

namespace {

// 10-point Gauss-Legendre on [-1, 1].
constexpr double kN10[10] = {-0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
                             -0.4333953941292472, -0.1488743389816312, 0.1488743389816312,
                             0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
                             0.9739065285171717};
constexpr double kW10[10] = {0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
                             0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
                             0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
                             0.0666713443086881};

double gauss_sin_pow(double sigma, double a, double b) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 10; ++i) s += kW10[i] * std::pow(std::sin(c + r * kN10[i]), sigma);
    return s * r;
}

}  // namespace

TailProfile::TailProfile(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || sigma >= 1.0) throw std::invalid_argument("tail sigma must be in (0,1)");
    const int n = 4096;
    const double half_pi = 0.5 * std::numbers::pi;
    dtheta_ = half_pi / n;
    s_values_.resize(n + 1);
    s_deriv_.resize(n + 1);
    // cumulative integral of sin^sigma; the first panel is refined
    // geometrically toward the algebraic singularity of the derivative at 0
    double acc = 0.0;
    s_values_[0] = 0.0;
    s_deriv_[0] = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double a = (i - 1) * dtheta_, b = i * dtheta_;
        if (i == 1) {
            double lo = b;
            for (int k = 0; k < 60; ++k) {
                const double next = lo * 0.5;
                acc += gauss_sin_pow(sigma_, next, lo);
                lo = next;
            }
            // remainder below lo from the series int_0^x t^sigma = x^(1+sigma)/(1+sigma)
            acc += std::pow(lo, 1.0 + sigma_) / (1.0 + sigma_);
        } else {
            acc += gauss_sin_pow(sigma_, a, b);
        }
        s_values_[i] = acc;
        s_deriv_[i] = std::pow(std::sin(b), sigma_);
    }
    s_half_ = s_values_[n];
}

double TailProfile::S(double theta) const {
    if (theta <= 0.0) return 0.0;
    const double half_pi = 0.5 * std::numbers::pi;
    if (theta >= half_pi) return s_half_;
    // series near zero where the Hermite slopes are inaccurate
    if (theta < 8.0 * dtheta_) {
        const double t2 = theta * theta;
        return std::pow(theta, 1.0 + sigma_) *
               (1.0 / (1.0 + sigma_) - sigma_ * t2 / (6.0 * (3.0 + sigma_)));
    }
    const int i = std::min(static_cast<int>(theta / dtheta_), static_cast<int>(s_values_.size()) - 2);
    const double t = theta / dtheta_ - i;
    const double y0 = s_values_[i], y1 = s_values_[i + 1];
    const double m0 = s_deriv_[i] * dtheta_, m1 = s_deriv_[i + 1] * dtheta_;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 +
           (t3 - t2) * m1;
}

double TailProfile::full_slab(double a) const {
    return 2.0 * s_half_ * std::pow(a, -sigma_) / sigma_;
}

double TailProfile::corner(double a, double b) const {
    if (!(a > 0.0)) throw std::invalid_argument("corner requires a > 0");
    if (b < 0.0) return full_slab(a) - corner(a, -b);
    if (b == 0.0) return s_half_ * std::pow(a, -sigma_) / sigma_;
    const double theta = std::atan2(b, a);
    const double half_pi = 0.5 * std::numbers::pi;
    return (std::pow(b, -sigma_) * S(theta) + std::pow(a, -sigma_) * S(half_pi - theta)) / sigma_;
}

namespace {

struct SideRuns {
    // half-open runs [begin, end) of inside cells along one box side
    std::vector<std::pair<int, int>> runs;
};

SideRuns collect_runs(const IndicatorSet& e, bool vertical_side, int fixed_index) {
    const Grid& g = *e.grid;
    const int n = vertical_side ? g.ny : g.nx;
    SideRuns out;
    int j = 0;
    while (j < n) {
        const bool ins = vertical_side ? e.is_inside(fixed_index, j) : e.is_inside(j, fixed_index);
        if (ins) {
            int k = j;
            while (k < n) {
                const bool v = vertical_side ? e.is_inside(fixed_index, k) : e.is_inside(k, fixed_index);
                if (!v) break;
                ++k;
            }
            out.runs.emplace_back(j, k);
            j = k;
        } else {
            ++j;
        }
    }
    return out;
}

struct TailGeometry {
    const Grid* grid;
    double half;
    SideRuns right, left, top, bottom;
    bool corner_rt, corner_rb, corner_lt, corner_lb;
};

TailGeometry make_geometry(const IndicatorSet& e) {
    const Grid& g = *e.grid;
    TailGeometry geo;
    geo.grid = &g;
    geo.half = g.half_width();
    geo.right = collect_runs(e, true, g.nx - 1);
    geo.left = collect_runs(e, true, 0);
    geo.top = collect_runs(e, false, g.ny - 1);
    geo.bottom = collect_runs(e, false, 0);
    geo.corner_rt = e.is_inside(g.nx - 1, g.ny - 1);
    geo.corner_rb = e.is_inside(g.nx - 1, 0);
    geo.corner_lt = e.is_inside(0, g.ny - 1);
    geo.corner_lb = e.is_inside(0, 0);
    return geo;
}

// Sum over the runs of one exterior slab: a is the outward distance from x to
// the box side, xperp the coordinate of x along the side.
double slab_runs(const TailProfile& prof, const SideRuns& side, const Grid& g, double a,
                 double xperp) {
    double tot = 0.0;
    const double lo = -g.half_width();
    for (auto [j, k] : side.runs)
        tot += prof.corner(a, lo + j * g.h - xperp) - prof.corner(a, lo + k * g.h - xperp);
    return tot;
}

double slab_full(const TailProfile& prof, const Grid& g, double a, double xperp) {
    const double half = g.half_width();
    return prof.corner(a, -half - xperp) - prof.corner(a, half - xperp);
}

void eval_point(const TailProfile& prof, const TailGeometry& geo, Vec2 x, double& set_out,
                double& full_out) {
    const Grid& g = *geo.grid;
    const double half = geo.half;
    const double aR = half - x.x, aL = half + x.x;
    const double aT = half - x.y, aB = half + x.y;
    double s = slab_runs(prof, geo.right, g, aR, x.y) + slab_runs(prof, geo.left, g, aL, x.y) +
               slab_runs(prof, geo.top, g, aT, x.x) + slab_runs(prof, geo.bottom, g, aB, x.x);
    if (geo.corner_rt) s += prof.corner(aR, aT);
    if (geo.corner_rb) s += prof.corner(aR, aB);
    if (geo.corner_lt) s += prof.corner(aL, aT);
    if (geo.corner_lb) s += prof.corner(aL, aB);

    const double f = slab_full(prof, g, aR, x.y) + slab_full(prof, g, aL, x.y) +
                     slab_full(prof, g, aT, x.x) + slab_full(prof, g, aB, x.x) +
                     prof.corner(aR, aT) + prof.corner(aR, aB) + prof.corner(aL, aT) +
                     prof.corner(aL, aB);
    const double h2 = g.h * g.h;
    set_out = h2 * s;
    full_out = h2 * f;
}

}  // namespace

TailField make_tail_field(const IndicatorSet& e, const InteractionKernel& kernel) {
    const Grid& g = *e.grid;
    const TailProfile prof(kernel.sigma);
    const TailGeometry geo = make_geometry(e);
    TailField tf;
    tf.of_set.resize(g.cell_count());
    tf.of_full.resize(g.cell_count());
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const std::size_t i = g.index(ix, iy);
            eval_point(prof, geo, g.center(ix, iy), tf.of_set[i], tf.of_full[i]);
        }
    return tf;
}

void tail_at_point(const IndicatorSet& e, const InteractionKernel& kernel, Vec2 x, double& of_set,
                   double& of_full) {
    const TailProfile prof(kernel.sigma);
    const TailGeometry geo = make_geometry(e);
    eval_point(prof, geo, x, of_set, of_full);
}

}  // namespace fblab
