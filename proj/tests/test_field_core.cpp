#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "fblab/field_io.hpp"
#include "fblab/fields.hpp"

using namespace fblab;

TEST_CASE("build_grid arithmetic") {
    const Grid g = build_grid(256, 1.0, 0.01);
    CHECK(g.h == doctest::Approx(2.0 / 256).epsilon(1e-15));
    CHECK(g.nx == 256);
    CHECK(g.ny == 256);
    CHECK(g.origin.x == -1.0);
    CHECK(g.upsilon == 0.01);

    const Grid g2 = build_grid(16, 0.5, 0.005);
    CHECK(g2.h == doctest::Approx(0.0625).epsilon(1e-15));
}

TEST_CASE("build_grid rejects bad parameters") {
    CHECK_THROWS_WITH_AS(build_grid(15, 1.0, 0.01), "nx must be even and >= 16",
                         std::invalid_argument);
    CHECK_THROWS_AS(build_grid(14, 1.0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(256, -1.0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(256, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(256, 1.0, 0.03), std::invalid_argument);  // > box_width/100
}

TEST_CASE("cell centers sit at half-offsets") {
    const Grid g = build_grid(16, 0.5, 0.005);
    const Vec2 c = g.center(0, 0);
    CHECK(c.x == doctest::Approx(-0.5 + 0.5 * g.h));
    CHECK(c.y == doctest::Approx(-0.5 + 0.5 * g.h));
    int ix, iy;
    g.locate(c, ix, iy);
    CHECK(ix == 0);
    CHECK(iy == 0);
}

TEST_CASE("rasterize_ball counts cells like the area") {
    const Grid g = build_grid(256, 1.0, 0.01);
    const Region ball = rasterize_ball(g, {0, 0}, 1.0);
    const double expected = std::numbers::pi / (g.h * g.h);
    CHECK(std::abs(static_cast<double>(ball.cell_count()) - expected) < 0.01 * expected);
}

TEST_CASE("rasterize_ball edge cases") {
    const Grid g = build_grid(64, 1.0, 0.01);
    // tiny ball centered on a cell center -> exactly one cell
    const Vec2 c = g.center(10, 20);
    const Region tiny = rasterize_ball(g, c, g.h / 4.0);
    CHECK(tiny.cell_count() == 1);

    // huge ball covers the whole box
    const Region all = rasterize_ball(g, {0, 0}, 10.0);
    CHECK(all.cell_count() == g.cell_count());

    CHECK_THROWS_WITH_AS(rasterize_ball(g, {50.0, 50.0}, 0.5), "ball does not intersect grid",
                         std::invalid_argument);
}

TEST_CASE("dilation is monotone in upsilon") {
    const Grid g = build_grid(128, 1.0, 0.01);
    const Region ball = rasterize_ball(g, {0, 0}, 0.4);
    const auto d1 = dilate_mask(g, ball.mask, 0.016);
    const auto d2 = dilate_mask(g, ball.mask, 0.023);
    std::size_t n1 = 0, n2 = 0;
    for (std::size_t i = 0; i < d1.size(); ++i) {
        if (d1[i]) {
            CHECK(d2[i]);  // subset
            ++n1;
        }
        if (d2[i]) ++n2;
    }
    CHECK(n2 > n1);
    // and the region's own dilation contains the region
    for (std::size_t i = 0; i < ball.mask.size(); ++i)
        if (ball.mask[i]) CHECK(ball.mask_upsilon[i]);
}

TEST_CASE("complement is an involution") {
    const Grid g = build_grid(32, 1.0, 0.01);
    const auto e = make_indicator(g, [](Vec2 p) { return p.x * p.y > 0.0; });
    const auto back = e.complement().complement();
    CHECK(back.inside == e.inside);
}

TEST_CASE("make_admissible on the saddle pair") {
    const Grid g = build_grid(64, 1.0, 0.01);
    const auto u = make_field(g, [](Vec2 p) { return p.x * p.y; });
    const auto e = make_indicator(g, [](Vec2 p) { return p.x * p.y > 0.0; });
    for (const auto policy :
         {AdmissiblePolicy::reject, AdmissiblePolicy::clamp_u, AdmissiblePolicy::flip_e}) {
        const AdmissiblePair pair = make_admissible(u, e, policy);
        CHECK(pair.violation_count == 0);
        CHECK(pair.u.values == u.values);
        CHECK(pair.e.inside == e.inside);
    }
}

TEST_CASE("flip_e fills the region where u is positive") {
    const Grid g = build_grid(32, 1.0, 0.01);
    const Region omega = rasterize_ball(g, {0, 0}, 0.6);
    const auto u = make_field(g, [](Vec2) { return 1.0; }, &omega);
    auto e = make_indicator(g, [](Vec2) { return false; }, &omega);
    // exterior is inconsistent (u = 1 on frozen cells outside E): make it consistent
    for (std::size_t i = 0; i < e.inside.size(); ++i)
        if (e.frozen[i]) e.inside[i] = 1;
    const AdmissiblePair pair = make_admissible(u, e, AdmissiblePolicy::flip_e);
    CHECK(pair.violation_count == 0);
    for (std::size_t i = 0; i < omega.mask.size(); ++i)
        if (omega.mask[i]) CHECK(pair.e.inside[i] == 1);
}

TEST_CASE("flip_e rejects frozen violations") {
    const Grid g = build_grid(32, 1.0, 0.01);
    const Region omega = rasterize_ball(g, {0, 0}, 0.6);
    const auto u = make_field(g, [](Vec2) { return 1.0; });  // positive everywhere, unfrozen u
    const auto e = make_indicator(g, [](Vec2) { return false; }, &omega);  // frozen exterior empty
    CHECK_THROWS_AS(make_admissible(u, e, AdmissiblePolicy::flip_e), std::invalid_argument);
    CHECK_THROWS_AS(make_admissible(u, e, AdmissiblePolicy::reject), std::invalid_argument);
}

TEST_CASE("make_admissible is idempotent") {
    const Grid g = build_grid(48, 1.0, 0.01);
    const Region omega = rasterize_ball(g, {0, 0}, 0.7);
    const auto u = make_field(g, [](Vec2 p) { return std::sin(7 * p.x) * std::cos(3 * p.y); },
                              &omega);
    auto e = make_indicator(g, [](Vec2 p) { return p.x > 0.1; }, &omega);
    for (std::size_t i = 0; i < e.inside.size(); ++i)
        if (e.frozen[i]) e.inside[i] = u.values[i] > 0.0 ? 1 : 0;

    const AdmissiblePair once = make_admissible(u, e, AdmissiblePolicy::flip_e);
    const AdmissiblePair twice = make_admissible(once.u, once.e, AdmissiblePolicy::flip_e);
    CHECK(once.e.inside == twice.e.inside);
    CHECK(once.u.values == twice.u.values);

    const AdmissiblePair c1 = make_admissible(u, e, AdmissiblePolicy::clamp_u);
    const AdmissiblePair c2 = make_admissible(c1.u, c1.e, AdmissiblePolicy::clamp_u);
    CHECK(c1.u.values == c2.u.values);
}

TEST_CASE("checkpoint round trip") {
    const Grid g = build_grid(32, 1.0, 0.01);
    const Region omega = rasterize_ball(g, {0, 0}, 0.5);
    const auto u = make_field(g, [](Vec2 p) { return p.x + 2 * p.y; }, &omega);
    const auto e = make_indicator(g, [](Vec2 p) { return p.x > 0; }, &omega);

    const auto dir = std::filesystem::temp_directory_path() / "fblab_io_test";
    std::filesystem::create_directories(dir);
    save_field((dir / "u.field").string(), u);
    save_set((dir / "e.set").string(), e);

    const ScalarField u2 = load_field((dir / "u.field").string(), g);
    const IndicatorSet e2 = load_set((dir / "e.set").string(), g);
    CHECK(u2.values == u.values);
    CHECK(u2.frozen == u.frozen);
    CHECK(e2.inside == e.inside);
    CHECK(e2.frozen == e.frozen);

    CHECK_THROWS_AS(load_field((dir / "e.set").string(), g), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("bilinear interpolation reproduces bilinear fields") {
    const Grid g = build_grid(32, 1.0, 0.01);
    const auto u = make_field(g, [](Vec2 p) { return 2.0 + 3.0 * p.x - p.y + 0.5 * p.x * p.y; });
    CHECK(u.interpolate({0.13, -0.41}) ==
          doctest::Approx(2.0 + 3.0 * 0.13 + 0.41 + 0.5 * 0.13 * -0.41).epsilon(1e-12));
}
