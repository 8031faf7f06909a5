#include "fblab/flip_cache.hpp"

#include <cmath>
#include <stdexcept>

#include "fblab/interface.hpp"

namespace fblab {

FlipCache::FlipCache(const AdmissiblePair& pair, const Region& omega,
                     const NonlinearityProfile& p, double sigma, const InteractionKernel* k)
    : u_(pair.u), e_(pair.e), omega_(&omega), profile_(&p), sigma_(sigma), kernel_(k) {
    const Grid& g = *e_.grid;
    if (sigma_ < 1.0) {
        if (!kernel_) throw std::invalid_argument("fractional flip cache requires a kernel");
        const TailField tf = make_tail_field(e_, *kernel_);
        pot_e_ = kernel_->convolve(g, e_.inside);
        std::vector<std::uint8_t> ones(g.cell_count(), 1);
        pot_full_ = kernel_->convolve(g, ones);
        for (std::size_t i = 0; i < pot_e_.size(); ++i) {
            pot_e_[i] += tf.of_set[i];
            pot_full_[i] += tf.of_full[i];
        }
        krow_.resize(static_cast<std::size_t>(2 * g.nx - 1) * (2 * g.ny - 1));
        for (int dy = -(g.ny - 1); dy <= g.ny - 1; ++dy)
            for (int dx = -(g.nx - 1); dx <= g.nx - 1; ++dx)
                krow_[static_cast<std::size_t>(dy + g.ny - 1) * (2 * g.nx - 1) + (dx + g.nx - 1)] =
                    kernel_->pair_weight(dx, dy);
    }
    per_value_ = per_star(e_, omega, sigma_, kernel_).value;
}

double FlipCache::window_length(int ix, int iy) const {
    const int m = kInterfaceSmoothRadius + 2;
    return interface_length_window(e_, omega_->mask_upsilon, ix - m, ix + m, iy - m, iy + m);
}

FlipDelta FlipCache::flip_delta(int ix, int iy) {
    const Grid& g = *e_.grid;
    const std::size_t c = g.index(ix, iy);
    if (!omega_->mask[c]) throw std::invalid_argument("flip outside omega");
    if (e_.frozen[c]) throw std::invalid_argument("flip at a frozen cell");

    FlipDelta d;
    const bool inserting = !e_.inside[c];
    if (sigma_ < 1.0) {
        const double base = pot_full_[c] - 2.0 * pot_e_[c];
        d.delta_perimeter = inserting ? base : -base;
    } else {
        const double before = window_length(ix, iy);
        e_.inside[c] = inserting ? 1 : 0;
        const double after = window_length(ix, iy);
        e_.inside[c] = inserting ? 0 : 1;
        d.delta_perimeter = after - before;
    }

    const double phi_now = phi_eval(*profile_, per_value_).value;
    const double phi_next = phi_eval(*profile_, std::max(0.0, per_value_ + d.delta_perimeter)).value;
    double delta = phi_next - phi_now;

    const double uc = u_.values[c];
    d.zeroes_u = inserting ? (uc < 0.0) : (uc > 0.0);
    if (d.zeroes_u) {
        const int nb[4][2] = {{ix + 1, iy}, {ix - 1, iy}, {ix, iy + 1}, {ix, iy - 1}};
        for (const auto& [jx, jy] : nb) {
            if (!g.in_range(jx, jy)) continue;
            const std::size_t j = g.index(jx, jy);
            const double w = 0.5 * (omega_->mask[c] + omega_->mask[j]);
            const double un = u_.values[j];
            delta += w * (un * un - (uc - un) * (uc - un));
        }
    }
    d.delta_total = delta;
    return d;
}

void FlipCache::accept(int ix, int iy) {
    const Grid& g = *e_.grid;
    const std::size_t c = g.index(ix, iy);
    const FlipDelta d = flip_delta(ix, iy);
    const bool inserting = !e_.inside[c];

    e_.inside[c] = inserting ? 1 : 0;
    per_value_ += d.delta_perimeter;
    if (d.zeroes_u) u_.values[c] = 0.0;

    if (sigma_ < 1.0) {
        // one kernel row update of P_E
        const double s = inserting ? 1.0 : -1.0;
        const int stride = 2 * g.nx - 1;
        for (int jy = 0; jy < g.ny; ++jy) {
            double* row = pot_e_.data() + g.index(0, jy);
            const double* krow = krow_.data() +
                                 static_cast<std::size_t>(jy - iy + g.ny - 1) * stride +
                                 (g.nx - 1 - ix);
            for (int jx = 0; jx < g.nx; ++jx) row[jx] += s * krow[jx];
        }
    }
}

double FlipCache::audit() const {
    return std::abs(per_value_ - per_star(e_, *omega_, sigma_, kernel_).value);
}

AdmissiblePair FlipCache::snapshot() const {
    AdmissiblePair pair{u_, e_, 0};
    pair.violation_count = count_violations(pair.u, pair.e);
    return pair;
}

void FlipCache::set_u(const ScalarField& u) {
    if (u.grid != u_.grid) throw std::invalid_argument("grid mismatch in set_u");
    u_ = u;
}

}  // namespace fblab
