#include "fblab/instability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace fblab {

void SaddleConfiguration::validate() const {
    if (!grid) throw std::invalid_argument("saddle configuration needs a grid");
    if (!(sigma > 0.0) || sigma > 1.0) throw std::invalid_argument("sigma must lie in (0, 1]");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(pinch_width > 0.0) || pinch_width >= 0.125)
        throw std::invalid_argument("pinch_width must lie in (0, 1/8)");
    if (cutoff_inner != 0.75 || cutoff_outer != 0.9)
        throw std::invalid_argument("cutoff radii are fixed at 3/4 and 9/10");
    if (!(r_large > 0.0)) throw std::invalid_argument("r_large must be positive");
}

AdmissiblePair saddle_pair(const Grid& grid, const Region* active) {
    const auto u = make_field(
        grid, [](Vec2 p) { return p.x * p.y; }, active);
    const auto e = make_indicator(
        grid, [](Vec2 p) { return p.x * p.y > 0.0; }, active);
    AdmissiblePair pair{u, e, count_violations(u, e)};
    return pair;
}

namespace {

// quintic C^2 transition: 0 below 3/4, 1 above 9/10 (in units of r)
double cutoff_psi(double rho_over_r) {
    if (rho_over_r <= 0.75) return 0.0;
    if (rho_over_r >= 0.9) return 1.0;
    const double s = (rho_over_r - 0.75) / 0.15;
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

// Pinched cone at unit scale: {xy > 0} minus the anti-diagonal strip
// {|x+y| < w}, with the four chord-axis corners rounded at radius w.
bool pinched_cone_member(Vec2 p, double w) {
    double x = p.x, y = p.y;
    if (x * y <= 0.0) return false;
    if (x < 0.0) {  // map quadrant III onto I
        x = -x;
        y = -y;
    }
    if (std::abs(x + y) < w) return false;
    const double rho = w;
    // corner near (w, 0): rounding disk center
    const double cx = w + rho * (std::numbers::sqrt2 - 1.0), cy = rho;
    if (x >= y) {
        if (y < cy && x + y < cx + cy) {
            const double dx = x - cx, dy = y - cy;
            if (dx * dx + dy * dy > rho * rho) return false;
        }
    } else {  // symmetric corner near (0, w)
        if (x < cy && x + y < cx + cy) {
            const double dx = x - cy, dy = y - cx;
            if (dx * dx + dy * dy > rho * rho) return false;
        }
    }
    return true;
}

}  // namespace

AdmissiblePair competitor_small_ball(const Grid& grid, double r, double pinch_width,
                                     const Region* active) {
    if (r < 20.0 * grid.h) throw std::invalid_argument("competitor under-resolved");
    if (!(pinch_width > 0.0) || pinch_width >= 0.125)
        throw std::invalid_argument("pinch_width must lie in (0, 1/8)");

    const auto u = make_field(
        grid,
        [&](Vec2 p) {
            const double rho = norm(p);
            if (rho >= 0.9 * r) return p.x * p.y;  // psi == 1: exterior data bit-exact
            return p.x * p.y * cutoff_psi(rho / r);
        },
        active);
    const auto e = make_indicator(
        grid, [&](Vec2 p) { return pinched_cone_member({p.x / r, p.y / r}, pinch_width); },
        active);
    AdmissiblePair pair{u, e, count_violations(u, e)};
    if (pair.violation_count != 0)
        throw std::runtime_error("competitor construction violated admissibility");
    return pair;
}

namespace {

AdmissiblePair perturbed_saddle(const Grid& grid, const Region& omega, std::uint64_t seed) {
    AdmissiblePair pair = saddle_pair(grid, &omega);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    // flip membership near the interface; zero u where the sign breaks
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix) {
            const std::size_t i = grid.index(ix, iy);
            if (!omega.mask[i] || pair.e.frozen[i]) continue;
            const Vec2 c = grid.center(ix, iy);
            const double dist_to_axes = std::min(std::abs(c.x), std::abs(c.y));
            if (dist_to_axes > 3.0 * grid.h) continue;
            if (unif(rng) < 0.3) {
                pair.e.inside[i] = pair.e.inside[i] ? 0 : 1;
                const bool bad = pair.e.inside[i] ? pair.u.values[i] < 0.0
                                                  : pair.u.values[i] > 0.0;
                if (bad) pair.u.values[i] = 0.0;
            }
        }
    pair.violation_count = count_violations(pair.u, pair.e);
    return pair;
}

}  // namespace

InstabilityReport run_instability(const SaddleConfiguration& cfg, const NonlinearityProfile& p,
                                  const MinimizeOptions& opts, const InteractionKernel* k,
                                  int workers) {
    cfg.validate();
    const Grid& grid = *cfg.grid;
    const double half = grid.half_width();
    if (half < 4.0 * cfg.r_large)
        throw std::invalid_argument("large ball needs a 4:1 box-to-domain margin");
    for (const double r : cfg.r_small_list) {
        if (r < 20.0 * grid.h) throw std::invalid_argument("small radius under-resolved");
        if (half < 4.0 * r) throw std::invalid_argument("small radius breaks the 4:1 margin");
    }
    if (cfg.sigma < 1.0 && !k)
        throw std::invalid_argument("fractional instability run requires a kernel");

    InstabilityReport report;
    report.sigma = cfg.sigma;
    report.gamma = cfg.gamma;
    report.nx = grid.nx;
    report.box_half_width = half;

    // flat cap from the measured large-ball perimeter (K_o = Per* + 3)
    const Region omega_large = rasterize_ball(grid, {0, 0}, cfg.r_large);
    const PerimeterValue per_large = per_star(
        make_indicator(grid, [](Vec2 q) { return q.x * q.y > 0.0; }), omega_large, cfg.sigma, k);
    report.per_star_large = per_large.value;
    report.k_o = per_large.value + 3.0;
    NonlinearityProfile phi = p;
    if (phi.kind == PhiKind::power_cap) phi.k_o = std::max(phi.k_o, report.k_o);

    // ---- small-ball side ----
    for (const double r : cfg.r_small_list) {
        const Region omega = rasterize_ball(grid, {0, 0}, r);
        const AdmissiblePair saddle = saddle_pair(grid, &omega);
        const AdmissiblePair comp = competitor_small_ball(grid, r, cfg.pinch_width, &omega);
        RadiusComparison rc;
        rc.r = r;
        rc.saddle = total_energy(saddle, omega, phi, cfg.sigma, k);
        rc.competitor = total_energy(comp, omega, phi, cfg.sigma, k);
        rc.margin = rc.saddle.total - rc.competitor.total;
        rc.beaten = rc.competitor.total < rc.saddle.total;
        // flag margins that an exterior differing beyond the box could erase:
        // bound = C(sigma) |E delta F| dist(box edge)^-sigma on the difference
        if (cfg.sigma < 1.0) {
            std::size_t sym_diff = 0;
            for (std::size_t i = 0; i < saddle.e.inside.size(); ++i)
                if (saddle.e.inside[i] != comp.e.inside[i]) ++sym_diff;
            const double d = half - r;
            const double bound = k->tail_coefficient * static_cast<double>(sym_diff) * grid.h *
                                 grid.h * std::pow(d, -cfg.sigma);
            rc.margin_above_truncation = rc.margin > bound;
        } else {
            rc.margin_above_truncation = rc.beaten;  // classical length has no tail
        }
        report.small_ball.push_back(rc);
    }

    std::sort(report.small_ball.begin(), report.small_ball.end(),
              [](const RadiusComparison& a, const RadiusComparison& b) { return a.r < b.r; });
    for (const auto& rc : report.small_ball) {
        if (rc.beaten)
            report.largest_winning_radius = std::max(report.largest_winning_radius, rc.r);
        else if (report.smallest_losing_radius == 0.0 || rc.r < report.smallest_losing_radius)
            report.smallest_losing_radius = rc.r;
    }
    if (report.largest_winning_radius > 0.0 && report.smallest_losing_radius > 0.0 &&
        report.smallest_losing_radius > report.largest_winning_radius)
        report.crossover_radius =
            std::sqrt(report.largest_winning_radius * report.smallest_losing_radius);

    // ---- large-ball side ----
    const AdmissiblePair saddle = saddle_pair(grid, &omega_large);
    report.large_ball_saddle = total_energy(saddle, omega_large, phi, cfg.sigma, k);

    // (a) harmonic replacement with E = everything inside the domain
    {
        IndicatorSet full = saddle.e;
        for (std::size_t i = 0; i < full.inside.size(); ++i)
            if (omega_large.mask[i]) full.inside[i] = 1;
        ScalarField u0 = saddle.u;
        for (std::size_t i = 0; i < u0.values.size(); ++i)
            if (omega_large.mask[i] && u0.values[i] < 0.0) u0.values[i] = 0.0;
        AdmissiblePair pa{u0, full, count_violations(u0, full)};
        pa = minimize_u(pa, omega_large, opts.solver_tol);
        CompetitorResult res;
        res.family = "harmonic_replacement_full_set";
        res.breakdown = total_energy(pa, omega_large, phi, cfg.sigma, k);
        res.total = res.breakdown.total;
        report.large_ball_competitors.push_back(res);
    }

    // (b) the pinch competitor scaled to the large ball
    {
        const AdmissiblePair pb =
            competitor_small_ball(grid, cfg.r_large, cfg.pinch_width, &omega_large);
        CompetitorResult res;
        res.family = "scaled_pinch";
        res.breakdown = total_energy(pb, omega_large, phi, cfg.sigma, k);
        res.total = res.breakdown.total;
        report.large_ball_competitors.push_back(res);
    }

    // (c) annealing restarts from perturbed pairs, reduced by minimum energy
    {
        constexpr int kRestarts = 8;
        std::vector<EnergyBreakdown> results(kRestarts);
        std::vector<std::string> errors(kRestarts);
        const auto run_one = [&](int idx) {
            try {
                MinimizeOptions o = opts;
                o.seed = opts.seed + static_cast<std::uint64_t>(idx);
                if (o.schedule.kind == TemperatureSchedule::Kind::greedy) {
                    o.schedule.kind = TemperatureSchedule::Kind::geometric;
                    o.schedule.t0 = 10.0 * o.energy_tol * grid.h * grid.h +
                                    1e-3 * grid.h * grid.h;
                    o.schedule.ratio = 0.7;
                }
                const AdmissiblePair start = perturbed_saddle(grid, omega_large, o.seed);
                MinimizeReport rep =
                    alternating_minimize(start, omega_large, phi, cfg.sigma, k, o);
                results[idx] = total_energy(rep.final_pair, omega_large, phi, cfg.sigma, k);
            } catch (const std::exception& ex) {
                errors[idx] = ex.what();
                results[idx].total = std::numeric_limits<double>::infinity();
            }
        };
        if (workers > 1) {
            std::vector<std::thread> pool;
            std::atomic<int> next{0};
            for (int w = 0; w < std::min(workers, kRestarts); ++w)
                pool.emplace_back([&] {
                    for (int idx = next.fetch_add(1); idx < kRestarts; idx = next.fetch_add(1))
                        run_one(idx);
                });
            for (auto& t : pool) t.join();
        } else {
            for (int idx = 0; idx < kRestarts; ++idx) run_one(idx);
        }
        int best = 0;
        for (int idx = 1; idx < kRestarts; ++idx)
            if (results[idx].total < results[best].total) best = idx;
        if (!std::isfinite(results[best].total))
            throw std::runtime_error("all annealing restarts failed: " + errors[0]);
        CompetitorResult res;
        res.family = "annealing_restarts";
        res.breakdown = results[best];
        res.total = results[best].total;
        report.large_ball_competitors.push_back(res);
    }

    report.large_ball_not_beaten = true;
    for (const auto& c : report.large_ball_competitors)
        if (c.total < report.large_ball_saddle.total - 1e-6) report.large_ball_not_beaten = false;

    return report;
}

}  // namespace fblab
