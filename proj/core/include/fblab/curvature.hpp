#pragma once

#include "fblab/fields.hpp"
#include "fblab/interface.hpp"
#include "fblab/kernel.hpp"

namespace fblab {

/// Raw principal-value cell sum of (chi_Ec - chi_E) |y - x|^-(2+sigma) over
/// box cells with |y - x| > delta. With range > 0 the sum is restricted to
/// the centered disk |y - x| <= range and no exterior tail is added (a pure
/// lattice quantity, exactly translation covariant); otherwise all box cells
/// plus the clamped-continuation tail are used.
double nonlocal_curvature_raw(const IndicatorSet& e, Vec2 x, const InteractionKernel& k,
                              double delta, double range = 0.0);

/// Nonlocal mean curvature at an interface point: evaluated at delta and
/// 2*delta, extrapolated to delta -> 0 against the leading O(delta^(1-sigma))
/// bias. x must lie within one cell of the discrete interface.
double nonlocal_mean_curvature(const IndicatorSet& e, Vec2 x, double sigma,
                               const InteractionKernel& k, double delta);

/// Curvature of a least-squares circle fit to the interface points within
/// `stencil` of x, signed positive where E is convex.
double classical_curvature(const IndicatorSet& e, Vec2 x, double stencil);

}  // namespace fblab
