#pragma once

#include <vector>

#include "fblab/curvature.hpp"
#include "fblab/energy.hpp"

namespace fblab {

/// One free-boundary residual sample. xi is assembled exactly from the
/// stored fields: xi = dplus^2 - dminus^2 - curvature * phi_prime.
struct ResidualSample {
    InterfacePoint point;
    double dplus = 0.0;
    double dminus = 0.0;
    double curvature = 0.0;
    double phi_prime = 0.0;
    double xi = 0.0;
};

struct ResidualReport {
    std::vector<ResidualSample> samples;
    int skipped = 0;   // stencil would leave omega
    int excluded = 0;  // inside an exclusion radius (singular corners)
};

struct ResidualOptions {
    /// Interface points within this distance of any excluded center are
    /// dropped (the cone vertex, where H_sigma diverges). 0 disables.
    double exclusion_radius = 0.0;
    std::vector<Vec2> excluded_centers;
    double delta = 0.0;    // exclusion radius for H_sigma; defaults to 2h
    double stencil = 0.0;  // circle-fit stencil for sigma = 1; defaults to 6h
};

/// Residual of the free-boundary identity at every usable interface point:
/// one-sided normal derivatives by 3-point differences at step 2h, curvature
/// from the curvature module, phi' at the pair's Per* value.
ResidualReport free_boundary_residual(const AdmissiblePair& pair, const Region& omega,
                                      const NonlinearityProfile& p, double sigma,
                                      const InteractionKernel* k,
                                      const ResidualOptions& opts = {});

struct DensityProfile {
    std::vector<double> radii;
    std::vector<double> v_out, v_in;      // |B_r \ E|, |B_r cap E| (cell counting)
    std::vector<double> a_out, a_in;      // boundary-circle lengths outside/inside E
    std::vector<double> ratio_out, ratio_in;  // v / r^2
};

/// Cell-counting density profile at geometrically spaced radii.
DensityProfile density_profile(const IndicatorSet& e, Vec2 center, double r_min, double r_max,
                               int n_radii);

struct GrowthFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    std::vector<double> radii;
    std::vector<double> sup_u;
};

/// Least-squares slope of log sup_{B_r} u against log r.
GrowthFit growth_fit(const ScalarField& u, Vec2 center, double r_min, double r_max, int n_radii);

/// max |u(x)-u(y)| / |x-y|^alpha over region cell pairs (all pairs up to
/// 10^4 cells, otherwise 10^5 seeded-random pairs).
double holder_seminorm(const ScalarField& u, const Region& region, double alpha);

/// Cells of omega with |u| <= eps, plus the interface cells of {u > eps}
/// (the discrete closure of the small-value set).
IndicatorSet detect_u0(const ScalarField& u, const Region& omega, double eps);

}  // namespace fblab
