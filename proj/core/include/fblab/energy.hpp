#pragma once

#include "fblab/nonlinearity.hpp"
#include "fblab/perimeter.hpp"

namespace fblab {

/// Audit trail of one energy evaluation: total = dirichlet + phi(perimeter)
/// exactly (total is stored as that sum).
struct EnergyBreakdown {
    double dirichlet = 0.0;
    PerimeterValue perimeter;
    double phi_of_perimeter = 0.0;
    double total = 0.0;
};

/// E_Omega(u, E) = int_Omega |grad u|^2 + Phi(Per*_sigma(E, Omega)).
EnergyBreakdown total_energy(const AdmissiblePair& pair, const Region& omega,
                             const NonlinearityProfile& p, double sigma,
                             const InteractionKernel* k);

}  // namespace fblab
