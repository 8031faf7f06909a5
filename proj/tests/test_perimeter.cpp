#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fblab/perimeter.hpp"
#include "support/oracles.hpp"

using namespace fblab;

namespace {

IndicatorSet cone_set(const Grid& g) {
    return make_indicator(g, [](Vec2 p) { return p.x * p.y > 0.0; });
}

}  // namespace

TEST_CASE("interaction: single far-field pair") {
    const Grid g = build_grid(32, 1.0, 0.01);
    const InteractionKernel k = make_kernel(0.5, g.h, 2, 1e-8);  // (3,0) outside the near table
    auto a = make_indicator(g, [](Vec2) { return false; });
    auto b = a;
    a.inside[g.index(10, 12)] = 1;
    b.inside[g.index(13, 12)] = 1;
    const double expected = std::pow(g.h, 4) / std::pow(3.0 * g.h, 2.5);
    CHECK(interaction(a, b, k) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("interaction rejects overlap") {
    const Grid g = build_grid(32, 1.0, 0.01);
    const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
    const auto e = make_indicator(g, [](Vec2 p) { return p.x > 0.0; });
    CHECK_THROWS_WITH_AS(interaction(e, e, k), "interaction requires disjoint sets",
                         std::invalid_argument);
}

TEST_CASE("interaction is exactly symmetric (direct and FFT paths)") {
    // small sets: direct unordered-pair path
    {
        const Grid g = build_grid(48, 1.0, 0.01);
        const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
        const auto a = make_indicator(g, [](Vec2 p) { return norm(p - Vec2{-0.4, 0}) < 0.2; });
        const auto b = make_indicator(g, [](Vec2 p) { return norm(p - Vec2{0.4, 0.1}) < 0.25; });
        CHECK(interaction(a, b, k) == interaction(b, a, k));
    }
    // large sets: symmetrized FFT path
    {
        const Grid g = build_grid(128, 1.0, 0.01);
        const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
        const auto a = make_indicator(g, [](Vec2 p) { return p.x < -0.01; });
        const auto b = make_indicator(g, [](Vec2 p) { return p.x > 0.01; });
        const double ab = interaction(a, b, k);
        CHECK(ab == interaction(b, a, k));
        CHECK(ab > 0.0);
    }
}

TEST_CASE("interaction of the two half disks matches the continuum oracle") {
    const Grid g = build_grid(64, 1.25, 0.01);
    const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
    const auto a = make_indicator(g, [](Vec2 p) { return norm(p) < 1.0 && p.x < 0.0; });
    const auto b = make_indicator(g, [](Vec2 p) { return norm(p) < 1.0 && p.x > 0.0; });
    const double got = interaction(a, b, k);
    const double want = testsupport::half_disks_interaction_oracle(1.0, 0.5);
    CHECK_MESSAGE(std::abs(got / want - 1.0) < 0.01, "got ", got, " want ", want);
}

TEST_CASE("fractional perimeter of the empty set is 0") {
    const Grid g = build_grid(64, 1.0, 0.01);
    const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
    const auto e = make_indicator(g, [](Vec2) { return false; });
    const Region omega = rasterize_ball(g, {0, 0}, 0.5);
    const PerimeterValue pv = fractional_perimeter(e, omega, k);
    CHECK(pv.value == 0.0);
    CHECK(pv.truncation_bound > 0.0);
}

TEST_CASE("fractional perimeter rejects omega touching the box edge") {
    const Grid g = build_grid(64, 1.0, 0.01);
    const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
    const auto e = make_indicator(g, [](Vec2 p) { return p.x > 0.0; });
    const Region omega = make_box_region(g);
    CHECK_THROWS_AS(fractional_perimeter(e, omega, k), std::invalid_argument);
}

TEST_CASE("ball perimeter matches the whole-plane oracle") {
    const Grid g = build_grid(256, 1.0, 0.01);
    const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
    const auto e = make_indicator(g, [](Vec2 p) { return norm(p) < 0.25; });
    const Region omega = rasterize_ball(g, {0, 0}, 0.5);
    const double got = fractional_perimeter(e, omega, k).value;
    const double want = testsupport::per_disk_oracle(0.25, 0.5);
    CHECK_MESSAGE(std::abs(got / want - 1.0) < 0.02, "got ", got, " want ", want);
}

TEST_CASE("half-plane perimeter in a ball matches the continuum oracle") {
    const Grid g = build_grid(256, 1.0, 0.01);
    const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
    const auto e = make_indicator(g, [](Vec2 p) { return p.x > 0.0; });
    const Region omega = rasterize_ball(g, {0, 0}, 0.5);
    const double got = fractional_perimeter(e, omega, k).value;
    const double want = testsupport::per_halfplane_in_ball_oracle(0.5, 0.5);
    CHECK_MESSAGE(std::abs(got / want - 1.0) < 0.02, "got ", got, " want ", want);
}

TEST_CASE("cone scaling r^(2-sigma) at 256") {
    const Grid g = build_grid(256, 2.0, 0.02);
    const auto e = cone_set(g);
    const Region b1 = rasterize_ball(g, {0, 0}, 1.0);
    const Region bhalf = rasterize_ball(g, {0, 0}, 0.5);
    for (const double sigma : {0.3, 0.5, 0.8}) {
        const InteractionKernel k = make_kernel(sigma, g.h, 4, 1e-8);
        const double p1 = fractional_perimeter(e, b1, k).value;
        const double ph = fractional_perimeter(e, bhalf, k).value;
        const double target = std::pow(0.5, 2.0 - sigma);
        CHECK_MESSAGE(std::abs(ph / p1 / target - 1.0) < 0.03, "sigma=", sigma, " ratio ",
                      ph / p1, " target ", target);
    }
}

TEST_CASE("classical perimeter: circle, full set, cross") {
    const Grid g = build_grid(256, 1.0, 0.01);
    const Region big = rasterize_ball(g, {0, 0}, 0.95);

    const auto circle = make_indicator(g, [](Vec2 p) { return norm(p) < 0.5; });
    const double len = classical_perimeter(circle, big).value;
    CHECK_MESSAGE(std::abs(len / std::numbers::pi - 1.0) < 0.02, "circle length ", len);

    const auto full = make_indicator(g, [](Vec2) { return true; });
    CHECK(classical_perimeter(full, big).value == 0.0);

    const auto cone = cone_set(g);
    const Region br = rasterize_ball(g, {0, 0}, 0.6);
    const double cross = classical_perimeter(cone, br).value;
    CHECK_MESSAGE(std::abs(cross / 2.4 - 1.0) < 0.02, "cross length ", cross);  // 4 r = 2.4
}

TEST_CASE("per_star dispatch") {
    const Grid g = build_grid(256, 1.0, 0.01);
    const auto cone = cone_set(g);
    const Region br = rasterize_ball(g, {0, 0}, 0.5);

    // sigma = 1: classical length on the enlarged ball, 4 (r + upsilon)
    const PerimeterValue ps1 = per_star(cone, br, 1.0, nullptr);
    const double expect1 = 4.0 * (0.5 + g.upsilon);
    CHECK_MESSAGE(std::abs(ps1.value / expect1 - 1.0) < 0.02, "per* ", ps1.value);
    // the paper's exact relation Per* = Per(E~, B_r) + 4 upsilon
    const double inner_len = classical_perimeter(cone, br).value;
    CHECK(std::abs(ps1.value - (inner_len + 4.0 * g.upsilon)) < 0.02 * expect1);

    // sigma in (0,1): identical to fractional_perimeter
    const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
    CHECK(per_star(cone, br, 0.5, &k).value == fractional_perimeter(cone, br, k).value);

    // empty set, sigma = 1
    const auto empty = make_indicator(g, [](Vec2) { return false; });
    CHECK(per_star(empty, br, 1.0, nullptr).value == 0.0);

    CHECK_THROWS_AS(per_star(cone, br, 1.5, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(per_star(cone, br, 0.0, nullptr), std::invalid_argument);
}

TEST_CASE("complement symmetry of the fractional perimeter") {
    const Grid g = build_grid(128, 1.0, 0.01);
    const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
    const auto e = make_indicator(g, [](Vec2 p) { return p.x * p.y > 0.0; });
    const Region omega = rasterize_ball(g, {0, 0}, 0.4);
    const double pe = fractional_perimeter(e, omega, k).value;
    const double pc = fractional_perimeter(e.complement(), omega, k).value;
    CHECK(std::abs(pe - pc) < 1e-9 * std::max(1.0, pe));
}

TEST_CASE("clean cut identity") {
    const Grid g = build_grid(128, 1.0, 0.01);
    const Region omega = rasterize_ball(g, {0, 0}, 0.7);
    const Region inner = rasterize_ball(g, {0, 0}, 0.3);
    const auto e = cone_set(g);

    SUBCASE("identical sets give (0, 0)") {
        const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
        const auto [lhs, rhs] = clean_cut_delta(e, e, omega, inner, 0.5, &k);
        CHECK(lhs == 0.0);
        CHECK(rhs == 0.0);
    }

    SUBCASE("flipped block deep inside, fractional and classical") {
        IndicatorSet f = e;
        int cx, cy;
        g.locate({0.05, 0.08}, cx, cy);
        for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx) {
                const std::size_t i = g.index(cx + dx, cy + dy);
                f.inside[i] = f.inside[i] ? 0 : 1;
            }
        const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
        const auto [lhs, rhs] = clean_cut_delta(e, f, omega, inner, 0.5, &k);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
        CHECK(std::abs(lhs) > 0.0);

        const auto [lhs1, rhs1] = clean_cut_delta(e, f, omega, inner, 1.0, nullptr);
        CHECK(std::abs(lhs1 - rhs1) <= 1e-9 * std::max(1.0, std::abs(lhs1)));
    }

    SUBCASE("differing outside the cut is rejected") {
        IndicatorSet f = e;
        int cx, cy;
        g.locate({0.5, 0.5}, cx, cy);  // outside the inner ball
        f.inside[g.index(cx, cy)] = f.inside[g.index(cx, cy)] ? 0 : 1;
        const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
        CHECK_THROWS_WITH_AS(clean_cut_delta(e, f, omega, inner, 0.5, &k),
                             "sets differ outside the cut", std::invalid_argument);
    }
}

TEST_CASE("subadditivity of per_star") {
    const Grid g = build_grid(96, 1.0, 0.01);
    const Region omega = rasterize_ball(g, {0, 0}, 0.6);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-0.4, 0.4);
    for (const double sigma : {0.5, 1.0}) {
        const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
        const InteractionKernel* kp = sigma < 1.0 ? &k : nullptr;
        for (int trial = 0; trial < 4; ++trial) {
            const Vec2 c1{unif(rng), unif(rng)};
            const Vec2 c2{unif(rng), unif(rng)};
            const double r1 = 0.08 + 0.1 * std::abs(unif(rng));
            const auto e = make_indicator(g, [&](Vec2 p) {
                return norm(p - c1) < r1 || (std::abs(p.x - c2.x) < 0.1 && std::abs(p.y) < 0.2);
            });
            const auto b = make_indicator(g, [&](Vec2 p) { return norm(p - c2) < 0.12; });
            IndicatorSet u = e;
            for (std::size_t i = 0; i < u.inside.size(); ++i)
                u.inside[i] = (e.inside[i] || b.inside[i]) ? 1 : 0;
            const double pu = per_star(u, omega, sigma, kp).value;
            const double pe = per_star(e, omega, sigma, kp).value;
            const double pb = per_star(b, omega, sigma, kp).value;
            CHECK(pu <= pe + pb + 1e-9);
        }
    }
}

TEST_CASE("relative isoperimetric sanity for random subsets") {
    const Grid g = build_grid(96, 1.0, 0.01);
    const double sigma = 0.5;
    const InteractionKernel k = make_kernel(sigma, g.h, 4, 1e-8);
    const Region omega = rasterize_ball(g, {0, 0}, 0.9);

    // calibrate the constant on the ball (the minimizer)
    const auto ball = make_indicator(g, [](Vec2 p) { return norm(p) < 0.25; });
    const double area_ball = static_cast<double>(ball.count_inside()) * g.h * g.h;
    const double c_ball = fractional_perimeter(ball, omega, k).value /
                          std::pow(area_ball, 0.5 * (2.0 - sigma));

    // random same-count subsets of B_1/2 can only do worse (with slack for
    // the rasterized calibration itself)
    std::vector<std::uint32_t> candidates;
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix)
            if (norm(g.center(ix, iy)) < 0.5) candidates.push_back(g.index(ix, iy));
    std::mt19937_64 rng(11);
    const std::size_t count = ball.count_inside();
    for (int trial = 0; trial < 100; ++trial) {
        std::shuffle(candidates.begin(), candidates.end(), rng);
        auto a = make_indicator(g, [](Vec2) { return false; });
        for (std::size_t i = 0; i < count; ++i) a.inside[candidates[i]] = 1;
        const double pa = fractional_perimeter(a, omega, k).value;
        CHECK(pa >= 0.95 * c_ball * std::pow(area_ball, 0.5 * (2.0 - sigma)));
    }
}

TEST_CASE("truncation bound follows the analytic formula") {
    const Grid g = build_grid(64, 1.0, 0.01);
    const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
    const auto e = make_indicator(g, [](Vec2 p) { return p.x > 0.0; });
    const Region omega = rasterize_ball(g, {0, 0}, 0.5);
    const PerimeterValue pv = fractional_perimeter(e, omega, k);
    const double expected =
        k.tail_coefficient * omega.area() * std::pow(omega.distance_to_box_edge(), -0.5);
    CHECK(pv.truncation_bound == doctest::Approx(expected).epsilon(1e-12));
}
