#pragma once

#include <optional>

#include "fblab/minimize.hpp"

namespace fblab {

/// Configuration of the saddle instability experiment: the pair
/// u = xy, E = {xy > 0} against its pinched small-ball competitor.
struct SaddleConfiguration {
    const Grid* grid = nullptr;
    double r_large = 1.0;
    std::vector<double> r_small_list;
    double gamma = 1.0;
    double sigma = 0.5;
    double pinch_width = 1.0 / 16.0;
    double cutoff_inner = 0.75;  // psi vanishes inside this fraction of r
    double cutoff_outer = 0.9;   // psi is 1 outside this fraction of r

    bool in_theorem_range() const { return gamma > 0.0 && gamma < 4.0 / (2.0 - sigma); }
    void validate() const;
};

/// u = xy sampled at cell centers, E = {xy > 0}; cells with |xy| below
/// roundoff are assigned by the strict x*y > 0 convention.
AdmissiblePair saddle_pair(const Grid& grid, const Region* active = nullptr);

/// The scaled pinched competitor (u_r, E_r): u_r = xy * psi(|X|/r) with a
/// quintic C^2 transition on [3r/4, 9r/10], and E_r the cone with the
/// anti-diagonal strip of half-width pinch_width*r removed (rounded corners),
/// which disconnects the two cone components near the origin.
AdmissiblePair competitor_small_ball(const Grid& grid, double r, double pinch_width,
                                     const Region* active = nullptr);

struct RadiusComparison {
    double r = 0.0;
    EnergyBreakdown saddle;
    EnergyBreakdown competitor;
    bool beaten = false;   // competitor strictly below the saddle pair
    double margin = 0.0;   // saddle total - competitor total
    bool margin_above_truncation = false;
};

struct CompetitorResult {
    std::string family;
    double total = 0.0;
    EnergyBreakdown breakdown;
};

struct InstabilityReport {
    double sigma = 0.0;
    double gamma = 0.0;
    int nx = 0;
    double box_half_width = 0.0;
    double k_o = 0.0;  // measured Per*(E~, B_R) + 3
    double per_star_large = 0.0;
    std::vector<RadiusComparison> small_ball;
    EnergyBreakdown large_ball_saddle;
    std::vector<CompetitorResult> large_ball_competitors;
    bool large_ball_not_beaten = false;
    double largest_winning_radius = 0.0;   // 0 when no radius wins
    double smallest_losing_radius = 0.0;   // 0 when every radius wins
    std::optional<double> crossover_radius;  // geometric mean when bracketed
};

/// Runs the small-ball comparisons for every radius in cfg.r_small_list and
/// the large-ball non-defeat check at cfg.r_large. The nonlinearity's flat
/// cap is extended to the measured K_o.
InstabilityReport run_instability(const SaddleConfiguration& cfg, const NonlinearityProfile& p,
                                  const MinimizeOptions& opts, const InteractionKernel* k,
                                  int workers = 1);

}  // namespace fblab
