#pragma once

#include <vector>

#include "fblab/fields.hpp"

namespace fblab {

/// One interface crossing: `position` sits on a lattice edge between two
/// adjacent cell centers, `normal` is the exterior unit normal of E there,
/// `segment_length` its share of the marching-squares polyline (half of each
/// incident segment).
struct InterfacePoint {
    Vec2 position;
    Vec2 normal;
    double segment_length = 0.0;
};

/// Smoothing radius (cells) applied to the indicator before extraction.
constexpr int kInterfaceSmoothRadius = 2;

/// chi_E convolved twice with the separable [1 2 1]/4 stencil (clamped at the
/// box edge). Values live on cell centers.
std::vector<double> smoothed_indicator(const IndicatorSet& e);

/// Marching-squares extraction of the 1/2 level set of the smoothed
/// indicator, restricted to segments whose midpoint lies in `clip`. The total
/// segment_length equals classical_perimeter(E, clip) exactly.
std::vector<InterfacePoint> interface_points(const IndicatorSet& e, const Region& clip);

/// Total polyline length over an arbitrary clip mask.
double interface_length(const IndicatorSet& e, const std::vector<std::uint8_t>& clip_mask);

/// Polyline length restricted to blocks intersecting the given cell window
/// [x0,x1] x [y0,y1] (used for incremental single-cell updates).
double interface_length_window(const IndicatorSet& e, const std::vector<std::uint8_t>& clip_mask,
                               int x0, int x1, int y0, int y1);

}  // namespace fblab
