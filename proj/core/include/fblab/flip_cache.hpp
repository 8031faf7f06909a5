#pragma once

#include "fblab/energy.hpp"

namespace fblab {

struct FlipDelta {
    double delta_total = 0.0;
    double delta_perimeter = 0.0;
    bool zeroes_u = false;  // accepting the flip sets u to 0 at the cell
};

/// Single-owner mutable state for incremental energy evaluation under
/// one-cell membership flips.
///
/// Fractional path: per-cell potentials P_E(i) = sum_j w_ij chi_E(j) plus the
/// clamped exterior tail, and W(i) the same sum against chi == 1. Flipping
/// cell c changes the perimeter by +-(W(c) - 2 P_E(c)); accepted flips update
/// P_E by one kernel row in O(N). Classical path: local marching-squares
/// window re-extraction around the cell.
class FlipCache {
  public:
    FlipCache(const AdmissiblePair& pair, const Region& omega, const NonlinearityProfile& p,
              double sigma, const InteractionKernel* k);

    /// Exact energy change of flipping one cell (not thread-safe: the
    /// classical path probes the flip in place).
    FlipDelta flip_delta(int ix, int iy);
    /// Applies the flip (and the u zeroing its delta assumed).
    void accept(int ix, int iy);

    double perimeter() const { return per_value_; }
    double phi_of_perimeter() const { return phi_eval(*profile_, per_value_).value; }

    /// |cached perimeter - fresh per_star| of the current set.
    double audit() const;

    /// Current state as an immutable pair snapshot.
    AdmissiblePair snapshot() const;

    /// Replaces the u values (the set is untouched); used after u-steps.
    void set_u(const ScalarField& u);

    const IndicatorSet& current_set() const { return e_; }
    const ScalarField& current_u() const { return u_; }
    const Region& omega() const { return *omega_; }

  private:
    double window_length(int ix, int iy) const;

    ScalarField u_;
    IndicatorSet e_;
    const Region* omega_;
    const NonlinearityProfile* profile_;
    double sigma_;
    const InteractionKernel* kernel_;
    std::vector<double> pot_e_;     // P_E per cell (box + tail), fractional only
    std::vector<double> pot_full_;  // W per cell, fractional only
    std::vector<double> krow_;      // pair weights by offset, (2nx-1) x (2ny-1)
    double per_value_ = 0.0;
};

}  // namespace fblab
