#include "fblab/energy.hpp"

#include <stdexcept>

#include "fblab/elliptic.hpp"

namespace fblab {

EnergyBreakdown total_energy(const AdmissiblePair& pair, const Region& omega,
                             const NonlinearityProfile& p, double sigma,
                             const InteractionKernel* k) {
    if (pair.violation_count != 0 || count_violations(pair.u, pair.e) != 0)
        throw std::invalid_argument("total_energy requires an admissible pair");
    EnergyBreakdown b;
    b.dirichlet = dirichlet_energy(pair.u, omega);
    b.perimeter = per_star(pair.e, omega, sigma, k);
    b.phi_of_perimeter = phi_eval(p, b.perimeter.value).value;
    b.total = b.dirichlet + b.phi_of_perimeter;
    return b;
}

}  // namespace fblab
