#include <doctest.h>

#include "helpers.hpp"

using namespace risp;

TEST_SUITE("mobius") {

TEST_CASE("rotation and identity") {
    MobiusMap rot = classify_mobius(unit(0.7), {0, 0}, {0, 0}, {1, 0});
    CHECK(rot.kind == MobiusKind::Rotation);
    CHECK(std::abs(rot.multipliers[0] - unit(0.7)) < 1e-15);

    MobiusMap id = classify_mobius({2, 0}, {0, 0}, {0, 0}, {2, 0});
    CHECK(id.kind == MobiusKind::Identity);
}

TEST_CASE("parabolic example") {
    // ((2+i) z + i) / (2 - i - i z): single fixed point at -1, multiplier 1
    MobiusMap m = classify_mobius({2, 1}, {0, 1}, {0, -1}, {2, -1});
    CHECK(m.kind == MobiusKind::Parabolic);
    REQUIRE(m.fixed_points.size() == 1);
    CHECK(std::abs(m.fixed_points[0] - Cpx(-1, 0)) < 1e-9);
    CHECK(std::abs(m.multipliers[0] - Cpx(1, 0)) < 1e-9);
}

TEST_CASE("hyperbolic example") {
    // (7z - 1)/(7 - z): repelling at 1 (multiplier 4/3), attracting at -1 (3/4)
    MobiusMap m = classify_mobius({7, 0}, {-1, 0}, {-1, 0}, {7, 0});
    CHECK(m.kind == MobiusKind::Hyperbolic);
    REQUIRE(m.fixed_points.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        Cpx t = m.fixed_points[i];
        CHECK(on_torus(t, 1e-12));
        Cpx mult = m.multipliers[i];
        if (std::abs(t - Cpx(1, 0)) < 1e-9) CHECK(std::abs(mult - Cpx(4.0 / 3.0, 0)) < 1e-12);
        if (std::abs(t + Cpx(1, 0)) < 1e-9) CHECK(std::abs(mult - Cpx(0.75, 0)) < 1e-12);
    }
    CHECK(std::abs(m.multipliers[0] * m.multipliers[1] - Cpx(1, 0)) < 1e-12);
}

TEST_CASE("elliptic example") {
    // (-4z + 1)/(-z + 4): fixed points 4 +- sqrt(15), multiplier -1 (order-2 rotation)
    MobiusMap m = classify_mobius({-4, 0}, {1, 0}, {-1, 0}, {4, 0});
    CHECK(m.kind == MobiusKind::Elliptic);
    REQUIRE(m.fixed_points.size() == 2);
    CHECK(std::abs(m.fixed_points[0]) < 1.0);  // interior first
    CHECK(std::abs(m.fixed_points[0] - Cpx(4.0 - std::sqrt(15.0), 0)) < 1e-10);
    CHECK(std::abs(m.fixed_points[0] * std::conj(m.fixed_points[1]) - Cpx(1, 0)) < 1e-8);
    CHECK(std::abs(m.multipliers[0] + Cpx(1, 0)) < 1e-10);
}

TEST_CASE("degenerate map is constant") {
    MobiusMap m = classify_mobius({2, 0}, {4, 0}, {1, 0}, {2, 0});  // det = 0
    CHECK(m.kind == MobiusKind::Constant);
}

TEST_CASE("random disk automorphisms classify consistently") {
    std::mt19937_64 rng(41);
    int hyperbolic_seen = 0, elliptic_seen = 0;
    for (int it = 0; it < 2000; ++it) {
        // e^{i t}(z - w)/(1 - conj(w) z) with |w| < 1
        Cpx w = 0.95 * testutil::rand_box(rng, 0.7);
        Cpx phase = testutil::rand_unit(rng);
        MobiusMap m = classify_mobius(phase, -phase * w, -std::conj(w), {1, 0});
        switch (m.kind) {
            case MobiusKind::Hyperbolic:
                ++hyperbolic_seen;
                REQUIRE(m.fixed_points.size() == 2);
                CHECK(on_torus(m.fixed_points[0], 1e-6));
                CHECK(on_torus(m.fixed_points[1], 1e-6));
                CHECK(std::abs(m.multipliers[0] * m.multipliers[1] - Cpx(1, 0)) < 1e-8);
                break;
            case MobiusKind::Elliptic:
                ++elliptic_seen;
                CHECK(std::abs(m.fixed_points[0] * std::conj(m.fixed_points[1]) - Cpx(1, 0)) <
                      1e-8);
                CHECK(std::abs(std::abs(m.multipliers[0]) - 1.0) < 1e-8);
                break;
            case MobiusKind::Parabolic:
                CHECK(std::abs(m.multipliers[0] - Cpx(1, 0)) < 1e-6);
                break;
            default: break;
        }
    }
    CHECK(hyperbolic_seen > 100);
    CHECK(elliptic_seen > 100);
}

}  // TEST_SUITE
