#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "fblab/exterior_tail.hpp"
#include "fblab/kernel.hpp"
#include "support/oracles.hpp"

using namespace fblab;

// Reference unit-cell pair integrals, adaptive quadrature at 1e-10 (scipy
// cross-checked to 1e-9).
TEST_CASE("near-field table against frozen references") {
    struct Ref {
        double sigma;
        int dx, dy;
        double value;
    };
    const Ref refs[] = {
        {0.3, 1, 0, 2.596530240877}, {0.3, 1, 1, 0.659904814657}, {0.3, 2, 1, 0.173326785459},
        {0.3, 3, 0, 0.084037360519}, {0.3, 4, 0, 0.042403902843}, {0.5, 1, 0, 3.647087515503},
        {0.5, 1, 1, 0.676008398686}, {0.5, 2, 1, 0.150314512029}, {0.5, 3, 0, 0.068087869148},
        {0.5, 4, 0, 0.032300916368}, {0.8, 1, 0, 9.461264034733}, {0.8, 1, 1, 0.728318280545},
        {0.8, 2, 1, 0.121784971363}, {0.8, 3, 0, 0.049729386541}, {0.8, 4, 0, 0.021492215084},
    };
    for (const auto& r : refs) {
        const double v = near_pair_integral(r.dx, r.dy, r.sigma, 1e-9);
        CHECK_MESSAGE(std::abs(v / r.value - 1.0) < 1e-7,
                      "sigma=", r.sigma, " d=(", r.dx, ",", r.dy, ") got ", v);
    }
}

TEST_CASE("kernel weights: symmetry, positivity, scaling") {
    const InteractionKernel k = make_kernel(0.5, 0.01, 4, 1e-8);
    for (int dy = -6; dy <= 6; ++dy)
        for (int dx = -6; dx <= 6; ++dx) {
            if (dx == 0 && dy == 0) {
                CHECK(k.pair_weight(dx, dy) == 0.0);
                continue;
            }
            CHECK(k.pair_weight(dx, dy) > 0.0);
            CHECK(k.pair_weight(dx, dy) == k.pair_weight(-dx, -dy));
            CHECK(k.pair_weight(dx, dy) == k.pair_weight(dy, dx));
        }
    // far rule is the midpoint weight h^4 / |Delta|^(2+sigma)
    const double h = k.h;
    CHECK(k.pair_weight(5, 0) ==
          doctest::Approx(std::pow(h, 4) / std::pow(5 * h, 2.5)).epsilon(1e-12));
    // near-field entries exceed the (diverging) midpoint rule toward sigma -> 1
    const InteractionKernel k8 = make_kernel(0.8, 0.01, 4, 1e-8);
    CHECK(k8.near_entry(1, 0) > std::pow(1.0, -2.8));
}

TEST_CASE("kernel table cache round trip") {
    const auto dir = (std::filesystem::temp_directory_path() / "fblab_kernel_cache").string();
    std::filesystem::remove_all(dir);
    const InteractionKernel k1 = make_kernel(0.5, 0.02, 3, 1e-8, dir);
    const InteractionKernel k2 = make_kernel(0.5, 0.02, 3, 1e-8, dir);  // loaded
    CHECK(k1.near_table() == k2.near_table());
    CHECK(k1.table_checksum() == k2.table_checksum());
    // different header regenerates rather than reusing stale data
    const InteractionKernel k3 = make_kernel(0.6, 0.02, 3, 1e-8, dir);
    CHECK(k3.near_table() != k1.near_table());
    std::filesystem::remove_all(dir);
}

TEST_CASE("convolution matches direct summation") {
    const Grid g = build_grid(24, 1.0, 0.01);
    const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
    const auto e = make_indicator(g, [](Vec2 p) { return p.x * p.y > 0.0; });
    const auto phi = k.convolve(g, e.inside);
    for (const auto [ix, iy] : {std::pair{3, 5}, {12, 12}, {20, 7}}) {
        double direct = 0.0;
        for (int jy = 0; jy < g.ny; ++jy)
            for (int jx = 0; jx < g.nx; ++jx)
                if (e.inside[g.index(jx, jy)]) direct += k.pair_weight(jx - ix, jy - iy);
        CHECK(phi[g.index(ix, iy)] == doctest::Approx(direct).epsilon(1e-10));
    }
}

// C(a,b) polar reduction against frozen high-precision references and the
// brute-force Simpson oracle.
TEST_CASE("tail profile corner integrals") {
    struct Ref {
        double sigma, a, b, value;
    };
    const Ref refs[] = {
        {0.3, 0.5, 0.7, 4.3075377232},  {0.3, 1.0, -0.3, 4.6121242104},
        {0.3, 0.2, 3.0, 3.1164912067},  {0.8, 0.5, 0.7, 1.2954307844},
        {0.8, 1.0, -0.3, 1.4977092864}, {0.8, 0.2, 3.0, 0.5386640652},
        {0.5, 0.05, 2.0, 1.6826423713}, {0.5, 1.5, 1e-12, 1.9565548099},
    };
    for (const auto& c : refs) {
        const TailProfile prof(c.sigma);
        const double got = prof.corner(c.a, c.b);
        CHECK_MESSAGE(std::abs(got / c.value - 1.0) < 1e-7, "sigma=", c.sigma, " a=", c.a,
                      " b=", c.b, " got ", got);
        const double oracle = testsupport::corner_integral_oracle(c.a, c.b, c.sigma);
        CHECK_MESSAGE(std::abs(oracle / c.value - 1.0) < 1e-4, "oracle sigma=", c.sigma,
                      " a=", c.a, " b=", c.b, " got ", oracle);
    }
}

TEST_CASE("tail field of a centered ball is radial and positive") {
    const Grid g = build_grid(32, 1.0, 0.01);
    const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
    const auto ball = make_indicator(g, [](Vec2 p) { return norm(p) < 0.4; });
    const TailField tf = make_tail_field(ball, k);
    for (std::size_t i = 0; i < tf.of_set.size(); ++i) {
        CHECK(tf.of_set[i] == 0.0);  // ball misses every edge cell: clamped set is empty
        CHECK(tf.of_full[i] > 0.0);
    }
    // full tail at the center equals the analytic annulus bound contribution
    // int_{outside box} |x-y|^(-2.5) dy for x = 0: between the inscribed and
    // circumscribed circle values (2 pi / sigma) R^(-sigma)
    const double inscribed = 4.0 * std::numbers::pi * std::pow(1.0, -0.5);
    const double circumscribed = 4.0 * std::numbers::pi * std::pow(std::numbers::sqrt2, -0.5);
    const double center_full = tf.of_full[g.index(16, 16)] / (g.h * g.h);
    CHECK(center_full < inscribed);
    CHECK(center_full > circumscribed);
}

TEST_CASE("clamped tail of a half-plane matches the exact half-space integral") {
    // E = {x > 0}: the clamped continuation is exact; at the box center the
    // set tail is half the full tail by symmetry
    const Grid g = build_grid(32, 1.0, 0.01);
    const InteractionKernel k = make_kernel(0.5, g.h, 4, 1e-8);
    const auto e = make_indicator(g, [](Vec2 p) { return p.x > 0.0; });
    double of_set = 0.0, of_full = 0.0;
    tail_at_point(e, k, {0.0, 0.0}, of_set, of_full);
    CHECK(of_set == doctest::Approx(0.5 * of_full).epsilon(1e-9));
}
