// Test-only oracles: independent quadrature (adaptive Simpson, not the Gauss
// panels the library uses) and continuum-geometry reductions for the sets the
// suite measures. Everything here works on the exact continuum sets; nothing
// touches the library's kernel, tail or marching-squares code paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace testsupport {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double sum = left + right;
    if (depth <= 0 || std::abs(sum - whole) <= 15.0 * tol) return sum + (sum - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 48) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// ---- corner integral over {s > a, t > b} of (s^2+t^2)^(-(2+sigma)/2) ----
// brute force with 1/(1-q) compactifications; used to check the library's
// polar reduction
inline double corner_integral_oracle(double a, double b, double sigma) {
    const double p = 0.5 * (2.0 + sigma);
    // int_{t > b} (s^2+t^2)^-p dt = s^(1-2p) int_{atan(b/s)}^{pi/2} cos^sigma,
    // exact for every s (t = s tan(theta))
    const auto inner = [&](double s) {
        const double theta0 = std::atan2(b, s);
        return std::pow(s, 1.0 - 2.0 * p) *
               simpson([&](double th) { return std::pow(std::cos(th), sigma); }, theta0,
                       0.5 * std::numbers::pi, 1e-12);
    };
    const double knee = std::max(a, std::abs(b)) * 4.0 + 1.0;
    double total = simpson(inner, a, knee, 1e-10);
    // s = knee / q^4 keeps the substituted integrand ~ q^(4 sigma - 1) finite
    total += simpson(
        [&](double q) {
            if (q <= 0.0) return 0.0;
            const double q4 = q * q * q * q;
            return inner(knee / q4) * 4.0 * knee / (q4 * q);
        },
        0.0, 1.0, 1e-10);
    return total;
}

// ---- angular measures on the circle |y - x| = s ----
// single arcs represented by (center angle, half width in [0, pi])

struct Arc {
    double center = 0.0;
    double half = 0.0;  // 0: empty, pi: full circle
};

// measure of the intersection of two arcs: intervals [d-hA, d+hA] and
// [-hB, hB] on the unrolled circle plus the wrap-around copy at d - 2pi
inline double arc_intersection_measure(const Arc& a, const Arc& b) {
    if (a.half <= 0.0 || b.half <= 0.0) return 0.0;
    if (a.half >= std::numbers::pi) return 2.0 * b.half;
    if (b.half >= std::numbers::pi) return 2.0 * a.half;
    const double d = std::abs(std::remainder(a.center - b.center, 2.0 * std::numbers::pi));
    double total = std::max(0.0, std::min(d + a.half, b.half) - std::max(d - a.half, -b.half));
    const double d2 = d - 2.0 * std::numbers::pi;
    total += std::max(0.0, std::min(d2 + a.half, b.half) - std::max(d2 - a.half, -b.half));
    return total;
}

// {y : (y - q0) . n > 0} seen from the circle |y - x| = s, n unit
inline Arc halfplane_arc(double xx, double xy, double s, double nx, double ny, double offset) {
    // (x + s u - q0) . n > 0  <=>  u . n > t0
    const double t0 = (offset - (xx * nx + xy * ny)) / s;
    if (t0 >= 1.0) return {0.0, 0.0};
    if (t0 <= -1.0) return {0.0, std::numbers::pi};
    return {std::atan2(ny, nx), std::acos(t0)};
}

// {y : |y - c| < r} seen from the circle |y - x| = s
inline Arc disk_arc(double xx, double xy, double s, double cx, double cy, double r) {
    const double dx = cx - xx, dy = cy - xy;
    const double d = std::hypot(dx, dy);
    if (d < 1e-15) return {0.0, s < r ? std::numbers::pi : 0.0};
    // |x + s u - c|^2 < r^2  <=>  u . (c - x)/d > (d^2 + s^2 - r^2) / (2 s d)
    const double t0 = (d * d + s * s - r * r) / (2.0 * s * d);
    if (t0 >= 1.0) return {0.0, 0.0};
    if (t0 <= -1.0) return {0.0, std::numbers::pi};
    return {std::atan2(dy, dx), std::acos(t0)};
}

inline Arc arc_complement(const Arc& a) {
    if (a.half <= 0.0) return {0.0, std::numbers::pi};
    if (a.half >= std::numbers::pi) return {0.0, 0.0};
    return {a.center + std::numbers::pi, std::numbers::pi - a.half};
}

// measure of the cone {y1 y2 > 0} on the circle |y - x| = s
inline double cone_arc_measure(double xx, double xy, double s) {
    const Arc xpos = halfplane_arc(xx, xy, s, 1, 0, 0);
    const Arc ypos = halfplane_arc(xx, xy, s, 0, 1, 0);
    return arc_intersection_measure(xpos, ypos) +
           arc_intersection_measure(arc_complement(xpos), arc_complement(ypos));
}

// ---- psi integrals: int m(s) s^(-1-sigma) ds with an exact conical tail ----
inline double radial_potential(const std::function<double(double)>& m, double sigma, double s_hi,
                               double m_infinity, double tol = 1e-9) {
    const double body = simpson([&](double s) { return s <= 0.0 ? 0.0
                                                                : m(s) * std::pow(s, -1.0 - sigma); },
                                0.0, s_hi, tol);
    return body + m_infinity * std::pow(s_hi, -sigma) / sigma;
}

// ---- frozen-value producers ----

// Per_sigma(B_r, R^2) by the radial reduction; the psi ~ (r - rho)^-sigma
// boundary singularity is absorbed with rho = r (1 - tau^16).
inline double per_disk_oracle(double r, double sigma) {
    const auto psi = [&](double rho) {
        const auto m = [&](double s) {
            return 2.0 * std::numbers::pi - 2.0 * disk_arc(rho, 0.0, s, 0, 0, r).half;
        };
        return radial_potential(m, sigma, 8.0 * r + 8.0, 2.0 * std::numbers::pi);
    };
    return simpson(
        [&](double tau) {
            if (tau <= 0.0) return 0.0;
            const double t15 = std::pow(tau, 15);
            const double rho = r * (1.0 - t15 * tau);
            return psi(rho) * 2.0 * std::numbers::pi * rho * 16.0 * r * t15;
        },
        0.0, 1.0, 1e-7, 40);
}

// Per_sigma({x1 > 0}, B_R) = L(E cap B_R, E^c) + L(E^c cap B_R, E \ B_R)
inline double per_halfplane_in_ball_oracle(double R, double sigma) {
    const double c_p = std::sqrt(std::numbers::pi) *
                       std::exp(std::lgamma(0.5 * (1.0 + sigma)) - std::lgamma(1.0 + 0.5 * sigma));
    // L1: psi_{x<0}(x) = (c_p / sigma) x1^-sigma, integrate over the right
    // half disk; x1 = R t^16 tames the edge singularity for every sigma < 1
    const double L1 = simpson(
        [&](double t) {
            if (t <= 0.0) return 0.0;
            const double t15 = std::pow(t, 15);
            const double x1 = R * t15 * t;
            if (x1 >= R) return 0.0;
            const double width = 2.0 * std::sqrt(R * R - x1 * x1);
            return (c_p / sigma) * std::pow(x1, -sigma) * width * 16.0 * R * t15;
        },
        0.0, 1.0, 1e-8, 40);
    // L2: x in the left half disk against {y1 > 0} minus B_R
    const auto psi2 = [&](double xx, double xy) {
        const auto m = [&](double s) {
            const Arc hp = halfplane_arc(xx, xy, s, 1, 0, 0);
            const Arc outside = arc_complement(disk_arc(xx, xy, s, 0, 0, R));
            return arc_intersection_measure(hp, outside);
        };
        return radial_potential(m, sigma, 8.0 * R + 8.0, std::numbers::pi);
    };
    const double L2 = simpson(
        [&](double xx) {
            const double half_chord = std::sqrt(std::max(0.0, R * R - xx * xx));
            return simpson([&](double xy) { return psi2(xx, xy); }, -half_chord, half_chord,
                           1e-7, 30);
        },
        -R, 0.0, 1e-6, 30);
    return L1 + L2;
}

// L(left half of B_rho, right half of B_rho) with the shared diameter: the
// 4D integral reduced to nested 1D with x1 = -t^2
inline double half_disks_interaction_oracle(double rho, double sigma) {
    const auto psiB = [&](double xx, double xy) {
        const auto m = [&](double s) {
            const Arc hp = halfplane_arc(xx, xy, s, 1, 0, 0);
            const Arc ball = disk_arc(xx, xy, s, 0, 0, rho);
            return arc_intersection_measure(hp, ball);
        };
        return radial_potential(m, sigma, 8.0 * rho + 8.0, 0.0);
    };
    return simpson(
        [&](double xy) {
            const double max_depth = std::sqrt(std::max(0.0, rho * rho - xy * xy));
            if (max_depth <= 0.0) return 0.0;
            // x1 = -t^4 keeps the psi ~ |x1|^-sigma contact singularity finite
            return simpson(
                [&](double t) {
                    if (t <= 0.0) return 0.0;
                    const double x1 = -t * t * t * t;
                    return psiB(x1, xy) * 4.0 * t * t * t;
                },
                0.0, std::pow(max_depth, 0.25), 1e-7, 36);
        },
        -rho, rho, 1e-6, 30);
}

// Continuum nonlocal mean curvature of B_r at a boundary point, whole plane.
inline double nonlocal_curvature_disk_oracle(double r, double sigma) {
    const double xx = r, xy = 0.0;  // boundary point
    const auto m_signed = [&](double s) {
        const double inside = 2.0 * disk_arc(xx, xy, s, 0, 0, r).half;
        return (2.0 * std::numbers::pi - inside) - inside;  // chi_Ec - chi_E
    };
    return radial_potential(m_signed, sigma, 8.0 * r + 8.0, 2.0 * std::numbers::pi, 1e-9);
}

// Continuum nonlocal curvature of the cone {xy > 0} at boundary point x
// (on an axis, away from the origin), whole plane. The signed measure decays
// like |x|/s, so the omitted tail beyond s = 64 is below 1e-3 |x|.
inline double nonlocal_curvature_cone_oracle(double xx, double xy, double sigma) {
    const auto m_signed = [&](double s) {
        const double inside = cone_arc_measure(xx, xy, s);
        return 2.0 * std::numbers::pi - 2.0 * inside;
    };
    return radial_potential(m_signed, sigma, 64.0, 0.0, 1e-9);
}

}  // namespace testsupport
