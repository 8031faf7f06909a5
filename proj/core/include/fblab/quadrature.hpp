#pragma once

#include <functional>

namespace fblab {

/// Adaptive 1D quadrature (Gauss-Kronrod style refinement on Simpson panels).
double integrate_1d(const std::function<double(double)>& f, double a, double b, double rel_tol,
                    int max_depth = 40);

/// Adaptive 2D quadrature over an axis-aligned rectangle.
double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx,
                    double ay, double by, double rel_tol, int max_depth = 24);

}  // namespace fblab
