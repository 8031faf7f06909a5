#include "fblab/perimeter.hpp"

#include <cmath>
#include <stdexcept>

#include "fblab/interface.hpp"

namespace fblab {

namespace {

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double masked_sum(const std::vector<double>& phi, const std::vector<std::uint8_t>& mask) {
    Kahan acc;
    for (std::size_t i = 0; i < phi.size(); ++i)
        if (mask[i]) acc.add(phi[i]);
    return acc.sum;
}

}  // namespace

double interaction(const IndicatorSet& a, const IndicatorSet& b, const InteractionKernel& k) {
    if (a.grid != b.grid) throw std::invalid_argument("interaction requires a shared grid");
    const Grid& g = *a.grid;
    std::vector<std::uint32_t> members;  // cells of A or B, ascending
    for (std::size_t i = 0; i < a.inside.size(); ++i) {
        if (a.inside[i] && b.inside[i])
            throw std::invalid_argument("interaction requires disjoint sets");
        if (a.inside[i] || b.inside[i]) members.push_back(static_cast<std::uint32_t>(i));
    }

    // Direct path over unordered global pairs: identical summation order for
    // interaction(A,B) and interaction(B,A).
    if (members.size() * members.size() <= 40'000'000ull) {
        Kahan acc;
        for (std::size_t p = 0; p < members.size(); ++p) {
            const std::uint32_t i = members[p];
            const int ixi = static_cast<int>(i) % g.nx, iyi = static_cast<int>(i) / g.nx;
            const bool ia = a.inside[i] != 0;
            for (std::size_t q = p + 1; q < members.size(); ++q) {
                const std::uint32_t j = members[q];
                const bool ja = a.inside[j] != 0;
                if (ia == ja) continue;  // need one cell from each set
                const int ixj = static_cast<int>(j) % g.nx, iyj = static_cast<int>(j) / g.nx;
                acc.add(k.pair_weight(ixj - ixi, iyj - iyi));
            }
        }
        return acc.sum;
    }

    // FFT path, symmetrized so the swap is exact in floating point.
    const std::vector<double> pa = k.convolve(g, a.inside);
    const std::vector<double> pb = k.convolve(g, b.inside);
    const double sab = masked_sum(pb, a.inside);
    const double sba = masked_sum(pa, b.inside);
    return 0.5 * (sab + sba);
}

namespace {

double truncation_bound_for(const Region& omega, double sigma, double tail_coefficient) {
    const double d = omega.distance_to_box_edge();
    return tail_coefficient * omega.area() * std::pow(d, -sigma);
}

// Per_sigma over an arbitrary mask (used by both the public op and the
// clean-cut restriction). Tail fields carry the clamped exterior.
double fractional_value(const IndicatorSet& e, const std::vector<std::uint8_t>& omega_mask,
                        const InteractionKernel& k, const TailField& tf) {
    const Grid& g = *e.grid;
    const std::size_t n = g.cell_count();

    std::vector<std::uint8_t> ec(n), e_minus_omega(n);
    for (std::size_t i = 0; i < n; ++i) {
        ec[i] = e.inside[i] ? 0 : 1;
        e_minus_omega[i] = (e.inside[i] && !omega_mask[i]) ? 1 : 0;
    }
    const std::vector<double> phi_ec = k.convolve(g, ec);
    const std::vector<double> phi_emo = k.convolve(g, e_minus_omega);

    Kahan acc;
    for (std::size_t i = 0; i < n; ++i) {
        if (!omega_mask[i]) continue;
        if (e.inside[i]) {
            acc.add(phi_ec[i] + (tf.of_full[i] - tf.of_set[i]));
        } else {
            acc.add(phi_emo[i] + tf.of_set[i]);
        }
    }
    return acc.sum;
}

}  // namespace

PerimeterValue fractional_perimeter(const IndicatorSet& e, const Region& omega,
                                    const InteractionKernel& k) {
    if (e.grid != omega.grid) throw std::invalid_argument("E and Omega must share a grid");
    if (omega.touches_box_edge())
        throw std::invalid_argument("Omega touches the box boundary: truncation uncontrolled");
    const TailField tf = make_tail_field(e, k);
    PerimeterValue pv;
    pv.value = fractional_value(e, omega.mask, k, tf);
    pv.kind = PerimeterKind::fractional;
    pv.sigma = k.sigma;
    pv.region_label = omega.label;
    pv.truncation_bound = truncation_bound_for(omega, k.sigma, k.tail_coefficient);
    return pv;
}

PerimeterValue classical_perimeter(const IndicatorSet& e, const Region& region) {
    if (e.grid != region.grid) throw std::invalid_argument("E and region must share a grid");
    PerimeterValue pv;
    pv.value = interface_length(e, region.mask);
    pv.kind = PerimeterKind::classical;
    pv.sigma = 1.0;
    pv.region_label = region.label;
    pv.truncation_bound = 0.0;
    return pv;
}

PerimeterValue per_star(const IndicatorSet& e, const Region& omega, double sigma,
                        const InteractionKernel* k) {
    if (!(sigma > 0.0) || sigma > 1.0)
        throw std::invalid_argument("sigma must lie in (0, 1]");
    if (sigma == 1.0) {
        Region enlarged;
        enlarged.grid = omega.grid;
        enlarged.mask = omega.mask_upsilon;
        enlarged.mask_upsilon = omega.mask_upsilon;
        enlarged.label = omega.label + "_upsilon";
        PerimeterValue pv = classical_perimeter(e, enlarged);
        pv.region_label = omega.label;
        return pv;
    }
    if (!k) throw std::invalid_argument("fractional per_star requires a kernel");
    if (k->sigma != sigma) throw std::invalid_argument("kernel sigma mismatch");
    return fractional_perimeter(e, omega, *k);
}

std::pair<double, double> clean_cut_delta(const IndicatorSet& e, const IndicatorSet& f,
                                          const Region& omega, const Region& omega_inner,
                                          double sigma, const InteractionKernel* k) {
    const Grid& g = *e.grid;
    if (f.grid != &g || omega.grid != &g || omega_inner.grid != &g)
        throw std::invalid_argument("clean cut requires a shared grid");
    for (std::size_t i = 0; i < e.inside.size(); ++i)
        if (!omega_inner.mask[i] && e.inside[i] != f.inside[i])
            throw std::invalid_argument("sets differ outside the cut");

    // Discrete closure of the inner region: wide enough that every marching
    // squares segment influenced by the changed cells lies inside it.
    const double closure_width = (kInterfaceSmoothRadius + 1.5) * g.h;
    std::vector<std::uint8_t> closure = dilate_mask(g, omega_inner.mask, closure_width);
    for (std::size_t i = 0; i < closure.size(); ++i)
        if (closure[i] && !omega.mask[i])
            throw std::invalid_argument("inner region not strictly inside omega");

    const double lhs =
        per_star(e, omega, sigma, k).value - per_star(f, omega, sigma, k).value;

    double rhs = 0.0;
    if (sigma == 1.0) {
        rhs = interface_length(e, closure) - interface_length(f, closure);
    } else {
        if (!k) throw std::invalid_argument("fractional clean cut requires a kernel");
        const TailField tfe = make_tail_field(e, *k);
        const TailField tff = make_tail_field(f, *k);
        rhs = fractional_value(e, closure, *k, tfe) - fractional_value(f, closure, *k, tff);
    }
    return {lhs, rhs};
}

}  // namespace fblab
