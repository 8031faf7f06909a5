#include "fblab/quadrature.hpp"

#include <array>
#include <cmath>

namespace fblab {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 15> kNodes = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272, -0.7244177313601701,
    -0.5709721726085388, -0.3941513470775634, -0.2011940939974345, 0.0,
    0.2011940939974345,  0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr std::array<double, 15> kWeights = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719, 0.1395706779261543,
    0.1662692058169939, 0.1861610000155622, 0.1984314853271116, 0.2025782419255613,
    0.1984314853271116, 0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

double gauss15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 15; ++i) s += kWeights[i] * f(c + r * kNodes[i]);
    return s * r;
}

// absolute error budget: children split the parent's allowance
double adapt_1d(const std::function<double(double)>& f, double a, double b, double whole,
                double abs_tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gauss15(f, a, m), right = gauss15(f, m, b);
    const double sum = left + right;
    if (depth <= 0 || std::abs(sum - whole) <= abs_tol) return sum;
    return adapt_1d(f, a, m, left, 0.5 * abs_tol, depth - 1) +
           adapt_1d(f, m, b, right, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double integrate_1d(const std::function<double(double)>& f, double a, double b, double rel_tol,
                    int max_depth) {
    const double whole = gauss15(f, a, b);
    const double scale = std::max(std::abs(whole), 1e-30);
    return adapt_1d(f, a, b, whole, rel_tol * scale, max_depth);
}

namespace {

double gauss2d(const std::function<double(double, double)>& f, double ax, double bx, double ay,
               double by) {
    const double cx = 0.5 * (ax + bx), rx = 0.5 * (bx - ax);
    const double cy = 0.5 * (ay + by), ry = 0.5 * (by - ay);
    double s = 0.0;
    for (int i = 0; i < 15; ++i) {
        double row = 0.0;
        for (int j = 0; j < 15; ++j) row += kWeights[j] * f(cx + rx * kNodes[i], cy + ry * kNodes[j]);
        s += kWeights[i] * row;
    }
    return s * rx * ry;
}

double adapt_2d(const std::function<double(double, double)>& f, double ax, double bx, double ay,
                double by, double whole, double abs_tol, int depth) {
    const double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
    const double q1 = gauss2d(f, ax, mx, ay, my);
    const double q2 = gauss2d(f, mx, bx, ay, my);
    const double q3 = gauss2d(f, ax, mx, my, by);
    const double q4 = gauss2d(f, mx, bx, my, by);
    const double sum = q1 + q2 + q3 + q4;
    if (depth <= 0 || std::abs(sum - whole) <= abs_tol) return sum;
    const double t = 0.25 * abs_tol;
    return adapt_2d(f, ax, mx, ay, my, q1, t, depth - 1) +
           adapt_2d(f, mx, bx, ay, my, q2, t, depth - 1) +
           adapt_2d(f, ax, mx, my, by, q3, t, depth - 1) +
           adapt_2d(f, mx, bx, my, by, q4, t, depth - 1);
}

}  // namespace

double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx,
                    double ay, double by, double rel_tol, int max_depth) {
    const double whole = gauss2d(f, ax, bx, ay, by);
    const double scale = std::max(std::abs(whole), 1e-30);
    return adapt_2d(f, ax, bx, ay, by, whole, rel_tol * scale, max_depth);
}

}  // namespace fblab
