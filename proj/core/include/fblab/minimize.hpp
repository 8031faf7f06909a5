#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fblab/flip_cache.hpp"

namespace fblab {

struct TemperatureSchedule {
    enum class Kind { greedy, geometric };
    Kind kind = Kind::greedy;
    double t0 = 0.0;
    double ratio = 0.9;
};

struct MinimizeOptions {
    int max_outer = 20;
    int flip_sweeps_per_outer = 2;
    TemperatureSchedule schedule;
    double energy_tol = 1e-8;
    std::uint64_t seed = 1;
    double solver_tol = 1e-10;
    int checkpoint_every = 0;  // outer iterations; 0 disables
    std::string checkpoint_dir;
};

struct MinimizeReport {
    std::vector<EnergyBreakdown> energy_trace;
    long accepted_flips = 0;
    bool converged = false;
    AdmissiblePair final_pair;
};

/// Exact u-step: two-phase constrained harmonic replacement (positive part
/// solved on E cap Omega with zero data on E^c, negative part symmetrically).
/// E is unchanged; the Dirichlet energy does not increase.
AdmissiblePair minimize_u(const AdmissiblePair& pair, const Region& omega, double tol);

/// One sweep of single-cell flips over the non-frozen omega cells in
/// seeded-random order. Greedy accepts delta < -energy_tol h^2; with
/// temperature > 0 uphill moves are accepted with probability exp(-delta/T).
long minimize_set_sweep(FlipCache& cache, const MinimizeOptions& opts, double temperature,
                        std::mt19937_64& rng);

/// Alternating minimization: repeat { u-step; flip sweeps } until the outer
/// energy decrease falls below energy_tol or max_outer is reached.
MinimizeReport alternating_minimize(const AdmissiblePair& pair0, const Region& omega,
                                    const NonlinearityProfile& p, double sigma,
                                    const InteractionKernel* k, const MinimizeOptions& opts);

/// Resumes an alternating minimization from a checkpoint directory written
/// with checkpoint_every > 0.
MinimizeReport resume_minimize(const std::string& checkpoint_dir, const Grid& grid,
                               const Region& omega, const NonlinearityProfile& p, double sigma,
                               const InteractionKernel* k, const MinimizeOptions& opts);

}  // namespace fblab
