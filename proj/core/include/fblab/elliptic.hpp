#pragma once

#include "fblab/fields.hpp"

namespace fblab {

struct SolveReport {
    int iterations = 0;
    double residual = 0.0;  // max |weighted 5-point Laplacian| on free cells, grid units
    double energy = 0.0;    // Dirichlet energy of the output on the solve region
};

/// Finite-difference quadrature of the Dirichlet integral over omega:
/// sum over lattice edges of w_e ((u_i - u_j)/h)^2 h^2 with w_e = 1 when both
/// cells lie in omega and 1/2 when exactly one does.
double dirichlet_energy(const ScalarField& u, const Region& omega);

/// Constrained minimizer of dirichlet_energy(., solve_region): frozen cells,
/// cells outside the region and zero_set cells are fixed (the latter at 0);
/// the free values solve the weighted 5-point Laplacian by Jacobi-
/// preconditioned conjugate gradients to the given residual tolerance.
std::pair<ScalarField, SolveReport> harmonic_replacement(const ScalarField& u,
                                                         const Region& solve_region,
                                                         const IndicatorSet* zero_set, double tol);

/// Worst violation of the discrete mean-value inequality by u+ and u- over
/// cells whose full 4-neighborhood lies in omega; 0 means subharmonic.
double subharmonicity_defect(const ScalarField& u, const Region& omega);

enum class BoundSide { lower, upper };

/// Worst interior violation of the bound u >= a (lower) or u <= a (upper),
/// given exterior data satisfying it. Throws if the data itself violates.
double max_principle_check(const ScalarField& u, const Region& omega, double a, BoundSide side);

}  // namespace fblab
