#pragma once

#include <string>

#include "fblab/exterior_tail.hpp"
#include "fblab/fields.hpp"
#include "fblab/kernel.hpp"

namespace fblab {

enum class PerimeterKind { classical, fractional };

struct PerimeterValue {
    double value = 0.0;
    PerimeterKind kind = PerimeterKind::fractional;
    double sigma = 0.5;
    std::string region_label;
    /// Analytic bound on the interaction mass carried by pairs with one point
    /// beyond the box: (2 pi / sigma) |Omega| dist(Omega, box edge)^-sigma.
    /// The computed value already contains the clamped continuation of the
    /// frozen exterior; this bounds what a different exterior could change.
    double truncation_bound = 0.0;
};

/// L(A, B) over box cells: near-field table for close pairs, midpoint far
/// rule otherwise. Exactly symmetric under swapping A and B.
double interaction(const IndicatorSet& a, const IndicatorSet& b, const InteractionKernel& k);

/// Per_sigma(E, Omega) = L(E cap Omega, E^c) + L(E^c cap Omega, E \ Omega),
/// complements extended beyond the box by the clamped continuation.
PerimeterValue fractional_perimeter(const IndicatorSet& e, const Region& omega,
                                    const InteractionKernel& k);

/// Marching-squares polyline length of the interface of E clipped to the
/// region (isotropic estimator).
PerimeterValue classical_perimeter(const IndicatorSet& e, const Region& region);

/// Per* dispatch: classical on the upsilon-dilated region when sigma = 1,
/// fractional on the region itself when sigma in (0,1).
PerimeterValue per_star(const IndicatorSet& e, const Region& omega, double sigma,
                        const InteractionKernel* k);

/// Both sides of the clean-cut identity: lhs = Per*(E,Omega) - Per*(F,Omega),
/// rhs = Per_sigma(E, D) - Per_sigma(F, D) on the discrete closure D of the
/// inner region. E and F must agree outside omega_inner.
std::pair<double, double> clean_cut_delta(const IndicatorSet& e, const IndicatorSet& f,
                                          const Region& omega, const Region& omega_inner,
                                          double sigma, const InteractionKernel* k);

}  // namespace fblab
