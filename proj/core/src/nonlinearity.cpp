#include "fblab/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fblab {

NonlinearityProfile make_identity_profile() {
    NonlinearityProfile p;
    p.kind = PhiKind::identity;
    return p;
}

NonlinearityProfile make_power_cap_profile(double gamma, double k_o, double coercive_slope) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(k_o > 2.0)) throw std::invalid_argument("k_o must exceed 2");
    if (!(coercive_slope > 0.0)) throw std::invalid_argument("coercive_slope must be positive");
    NonlinearityProfile p;
    p.kind = PhiKind::power_cap;
    p.gamma = gamma;
    p.k_o = k_o;
    p.coercive_slope = coercive_slope;
    return p;
}

NonlinearityProfile make_table_profile(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw std::invalid_argument("table needs at least two knots");
    if (knots.front().first != 0.0) throw std::invalid_argument("table must start at t = 0");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (knots[i].first <= knots[i - 1].first)
            throw std::invalid_argument("table knots must be strictly increasing in t");
        if (knots[i].second < knots[i - 1].second)
            throw std::invalid_argument("table values must be nondecreasing");
    }
    if (knots.front().second < 0.0) throw std::invalid_argument("phi must be nonnegative");
    NonlinearityProfile p;
    p.kind = PhiKind::table;
    p.table = std::move(knots);
    return p;
}

PhiEval phi_eval(const NonlinearityProfile& p, double t) {
    if (t < 0.0) throw std::invalid_argument("phi argument must be nonnegative");
    switch (p.kind) {
        case PhiKind::identity:
            return {t, 1.0};
        case PhiKind::power_cap: {
            if (t < 1.0) return {std::pow(t, p.gamma), p.gamma * std::pow(t, p.gamma - 1.0)};
            if (t < p.k_o) return {1.0, 0.0};
            return {1.0 + p.coercive_slope * (t - p.k_o), p.coercive_slope};
        }
        case PhiKind::table: {
            const auto& tab = p.table;
            if (t >= tab.back().first) {
                const auto& [t1, v1] = tab[tab.size() - 2];
                const auto& [t2, v2] = tab.back();
                const double slope = (v2 - v1) / (t2 - t1);
                return {v2 + slope * (t - t2), slope};
            }
            auto it = std::upper_bound(tab.begin(), tab.end(), t,
                                       [](double x, const auto& k) { return x < k.first; });
            const std::size_t hi = static_cast<std::size_t>(it - tab.begin());
            const std::size_t lo = hi - 1;
            const double slope =
                (tab[hi].second - tab[lo].second) / (tab[hi].first - tab[lo].first);
            return {tab[lo].second + slope * (t - tab[lo].first), slope};
        }
    }
    throw std::logic_error("unknown phi kind");
}

double phi_lipschitz_bound(const NonlinearityProfile& p, double q) {
    switch (p.kind) {
        case PhiKind::identity:
            return 1.0;
        case PhiKind::power_cap: {
            double l = q > p.k_o ? p.coercive_slope : 0.0;
            l = std::max(l, p.gamma * std::pow(std::min(q, 1.0), p.gamma - 1.0));
            if (p.gamma < 1.0) l = std::max(p.gamma, p.coercive_slope);  // cap construction
            return std::max(l, 1.0);
        }
        case PhiKind::table: {
            double l = 0.0;
            for (std::size_t i = 1; i < p.table.size(); ++i) {
                if (p.table[i - 1].first > q) break;
                l = std::max(l, (p.table[i].second - p.table[i - 1].second) /
                                    (p.table[i].first - p.table[i - 1].first));
            }
            return l;
        }
    }
    throw std::logic_error("unknown phi kind");
}

double phi_derivative_floor(const NonlinearityProfile& p, double q) {
    switch (p.kind) {
        case PhiKind::identity:
            return 1.0;
        case PhiKind::power_cap:
            if (q > 1.0) return 0.0;                        // flat cap inside [0, Q]
            if (p.gamma > 1.0) return 0.0;                  // derivative vanishes at t = 0
            if (p.gamma == 1.0) return 1.0;
            return p.gamma * std::pow(q, p.gamma - 1.0);    // decreasing: minimum at t = q
        case PhiKind::table: {
            double floor = std::numeric_limits<double>::infinity();
            for (std::size_t i = 1; i < p.table.size(); ++i) {
                if (p.table[i - 1].first > q) break;
                floor = std::min(floor, (p.table[i].second - p.table[i - 1].second) /
                                            (p.table[i].first - p.table[i - 1].first));
            }
            return std::isfinite(floor) ? floor : 0.0;
        }
    }
    throw std::logic_error("unknown phi kind");
}

}  // namespace fblab
