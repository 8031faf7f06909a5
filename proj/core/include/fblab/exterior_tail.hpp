#pragma once

#include <vector>

#include "fblab/fields.hpp"
#include "fblab/kernel.hpp"

namespace fblab {

/// Interaction mass between box cells and the region beyond the box, with the
/// frozen exterior data continued outward by coordinate clamping (a point
/// outside the box inherits the membership of the nearest box-edge cell).
/// The continuation reproduces cones through the origin, half-planes and
/// bounded sets exactly, which is every exterior datum this laboratory uses.
///
/// In polar coordinates every slab/corner integral reduces to
///   C(a,b) = int_{s>a} int_{t>b} (s^2+t^2)^(-(2+sigma)/2) dt ds
///          = (1/sigma) [ b^-sigma S(atan(b/a)) + a^-sigma S(pi/2 - atan(b/a)) ]
/// with S(theta) = int_0^theta sin^sigma, tabulated once per sigma.
class TailProfile {
  public:
    explicit TailProfile(double sigma);

    double sigma() const { return sigma_; }
    /// C(a, b) above; a > 0, any b (b = -inf handled by full_slab).
    double corner(double a, double b) const;
    /// C(a, -inf): the full half-plane beyond s = a.
    double full_slab(double a) const;

  private:
    double S(double theta) const;
    double sigma_;
    double s_half_;
    std::vector<double> s_values_;  // S on a uniform theta grid
    std::vector<double> s_deriv_;   // sin^sigma at the nodes (Hermite slopes)
    double dtheta_;
};

/// Per-cell tail potentials, h^2-weighted to match the midpoint pair rule:
///   of_set(i)  = h^2 * int_{outside box} chi_ext_E(y) |x_i - y|^-(2+sigma) dy
///   of_full(i) = same with chi == 1.
struct TailField {
    std::vector<double> of_set;
    std::vector<double> of_full;
};

TailField make_tail_field(const IndicatorSet& e, const InteractionKernel& kernel);

/// Tail potentials at an arbitrary interior point (h^2-weighted).
void tail_at_point(const IndicatorSet& e, const InteractionKernel& kernel, Vec2 x,
                   double& of_set, double& of_full);

}  // namespace fblab
