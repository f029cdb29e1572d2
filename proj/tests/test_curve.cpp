#include <cmath>
#include <utility>
#include <random>

#include "doctest.h"
#include "vpmcf/curve.hpp"

using namespace vpmcf;

TEST_CASE("hemisphere nodes lie on the exact quarter circle, uniform in arc length") {
    InitialShapeSpec spec;
    spec.kind = ShapeKind::Hemisphere;
    spec.radius = 1.0;
    spec.n = 2;
    spec.node_count = 17;
    const ProfileCurve c = build_profile(spec);
    REQUIRE(c.size() == 17);
    for (int i = 0; i < 17; ++i) {
        const Scalar theta = 0.5 * kPi * i / 16;
        CHECK(c.nodes[i].x == doctest::Approx(std::sin(theta)).epsilon(1e-14));
        CHECK(c.nodes[i].r == doctest::Approx(std::cos(theta)).epsilon(1e-14));
    }
    CHECK(c.nodes.front().x == 0.0);
    CHECK(c.nodes.back().r == 0.0);
}

TEST_CASE("sphere endpoints sit on the axis at center +- radius") {
    InitialShapeSpec spec;
    spec.kind = ShapeKind::Sphere;
    spec.radius = 1.0;
    spec.center_x = 2.0;
    spec.node_count = 64;
    const ProfileCurve c = build_profile(spec);
    CHECK(c.nodes.front().x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.nodes.front().r == 0.0);
    CHECK(c.nodes.back().x == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(c.nodes.back().r == 0.0);
    CHECK(c.topology == Topology::Closed);
}

TEST_CASE("dumbbell mid-neck radius matches the documented profile formula") {
    InitialShapeSpec spec;
    spec.kind = ShapeKind::Dumbbell;
    spec.bulb_radius = 1.0;
    spec.neck_radius = 0.2;
    spec.length = 4.0;
    spec.node_count = 401;
    const ProfileCurve c = build_profile(spec);
    // rho(L/2) = neck exactly; the mid third of the polyline attains it.
    Scalar r_neck = infinity();
    for (int i = c.size() / 3; i < 2 * c.size() / 3; ++i) r_neck = std::min(r_neck, c.nodes[i].r);
    CHECK(r_neck == doctest::Approx(0.2).epsilon(1e-3));
}

TEST_CASE("invalid specs are rejected with the offending field named") {
    InitialShapeSpec spec;
    spec.kind = ShapeKind::Hemisphere;
    spec.radius = -1.0;
    CHECK_THROWS_WITH_AS(build_profile(spec), doctest::Contains("radius"), InvalidSpecError);

    spec = {};
    spec.kind = ShapeKind::PerturbedHemisphere;
    spec.radius = 1.0;
    spec.amplitude = 1.5;  // >= radius
    spec.mode_count = 2;
    CHECK_THROWS_WITH_AS(build_profile(spec), doctest::Contains("amplitude"), InvalidSpecError);

    spec = {};
    spec.kind = ShapeKind::Hemisphere;
    spec.node_count = 8;  // < 16
    CHECK_THROWS_AS(build_profile(spec), InvalidSpecError);
}

TEST_CASE("resample: quarter circle length, idempotence, straight-line uniformity") {
    InitialShapeSpec spec;
    spec.kind = ShapeKind::Hemisphere;
    spec.node_count = 100;
    const ProfileCurve c100 = build_profile(spec);

    SUBCASE("50-node resampling preserves the quarter-circle length to 1e-3") {
        const ProfileCurve c50 = resample(c100, 50);
        CHECK(c50.size() == 50);
        CHECK(total_length(c50) == doctest::Approx(0.5 * kPi).epsilon(1e-3));
    }
    SUBCASE("resampling an already-uniform polyline is the identity to 1e-12") {
        const ProfileCurve again = resample(c100, 100);
        for (int i = 0; i < 100; ++i) {
            CHECK(std::abs(again.nodes[i].x - c100.nodes[i].x) <= 1e-12);
            CHECK(std::abs(again.nodes[i].r - c100.nodes[i].r) <= 1e-12);
        }
    }
    SUBCASE("nonuniform straight polyline becomes uniform (interior = segment fractions)") {
        ProfileCurve line;
        line.topology = Topology::FreeBoundary;
        line.dim = 2;
        for (int i = 0; i < 17; ++i) {
            const Scalar t = static_cast<Scalar>(i) / 16;
            line.nodes.push_back({std::sqrt(t), 1.0});  // clustered toward x = 0
        }
        const ProfileCurve u = resample(line, 17);
        for (int i = 0; i < 17; ++i)
            CHECK(u.nodes[i].x == doctest::Approx(static_cast<Scalar>(i) / 16).epsilon(1e-12));
    }
    SUBCASE("endpoints are never moved") {
        const ProfileCurve r = resample(c100, 33);
        CHECK(r.nodes.front().x == c100.nodes.front().x);
        CHECK(r.nodes.front().r == c100.nodes.front().r);
        CHECK(r.nodes.back().x == c100.nodes.back().x);
        CHECK(r.nodes.back().r == c100.nodes.back().r);
    }
}

TEST_CASE("resample rejects degenerate curves") {
    ProfileCurve c;
    c.topology = Topology::FreeBoundary;
    c.dim = 2;
    for (int i = 0; i < 20; ++i) c.nodes.push_back({0.0, 1.0});
    CHECK_THROWS_AS(resample(c, 20), DegenerateCurveError);
}

TEST_CASE("resample length error is second order on circle arcs") {
    InitialShapeSpec spec;
    spec.kind = ShapeKind::Hemisphere;
    spec.node_count = 800;
    const ProfileCurve fine = build_profile(spec);
    const Scalar L_in = total_length(fine);
    for (int N : {50, 100, 200}) {
        const ProfileCurve out = resample(fine, N);
        const Scalar ds = total_length(out) / (N - 1);
        CHECK(std::abs(total_length(out) - L_in) <= 0.15 * L_in * ds * ds);
    }
}

TEST_CASE("validate: pass and failure localization") {
    InitialShapeSpec spec;
    spec.kind = ShapeKind::Hemisphere;
    spec.node_count = 64;
    ProfileCurve c = build_profile(spec);
    CHECK(validate(c).all_pass());

    SUBCASE("interior pinch is flagged with its node") {
        c.nodes[30].r = 0.0;
        const ValidationReport rep = validate(c);
        CHECK_FALSE(rep.all_pass());
        const ValidationCheck* chk = rep.find("interior_radius_positive");
        REQUIRE(chk != nullptr);
        CHECK_FALSE(chk->pass);
        CHECK(chk->node == 30);
    }
    SUBCASE("free-boundary curve must start on the plane") {
        c.nodes.front().x = 0.1;
        const ValidationReport rep = validate(c);
        const ValidationCheck* chk = rep.find("plane_contact");
        REQUIRE(chk != nullptr);
        CHECK_FALSE(chk->pass);
    }
    SUBCASE("self-intersection is detected") {
        ProfileCurve z = c;
        std::swap(z.nodes[20], z.nodes[21]);  // reversal: chords 19-20 and 21-22 cross
        const ValidationReport rep = validate(z);
        const ValidationCheck* chk = rep.find("simple_polyline");
        REQUIRE(chk != nullptr);
        CHECK_FALSE(chk->pass);
    }
}

TEST_CASE("build_profile output always validates (randomized specs)") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<Scalar> unit(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        InitialShapeSpec spec;
        spec.n = (trial % 3 == 0) ? 3 : 2;
        spec.node_count = 16 + static_cast<int>(unit(rng) * 400);
        switch (trial % 6) {
            case 0:
                spec.kind = ShapeKind::Hemisphere;
                spec.radius = 0.1 + 5.0 * unit(rng);
                break;
            case 1:
                spec.kind = ShapeKind::Sphere;
                spec.radius = 0.1 + 3.0 * unit(rng);
                spec.center_x = spec.radius + 0.1 + 4.0 * unit(rng);
                break;
            case 2:
                spec.kind = ShapeKind::PerturbedHemisphere;
                spec.radius = 0.5 + 2.0 * unit(rng);
                spec.amplitude = 0.3 * spec.radius * unit(rng) + 1e-3;
                spec.mode_count = 1 + static_cast<int>(unit(rng) * 3);
                spec.phase_from_seed = trial % 2 == 0;
                spec.seed = trial;
                break;
            case 3:
                spec.kind = ShapeKind::PerturbedSphere;
                spec.radius = 0.5 + 2.0 * unit(rng);
                spec.amplitude = 0.3 * spec.radius * unit(rng) + 1e-3;
                spec.mode_count = 1 + static_cast<int>(unit(rng) * 4);
                spec.center_x = spec.radius + spec.amplitude + 0.1 + 3.0 * unit(rng);
                break;
            case 4:
                spec.kind = ShapeKind::CosineBumpCylinder;
                spec.base_radius = 0.5 + 1.5 * unit(rng);
                spec.length = 1.0 + 4.0 * unit(rng);
                spec.amplitude = 0.5 * spec.base_radius * unit(rng) + 1e-3;
                spec.mode_count = 1 + static_cast<int>(unit(rng) * 4);
                break;
            default:
                spec.kind = ShapeKind::Dumbbell;
                spec.bulb_radius = 0.5 + 1.5 * unit(rng);
                spec.neck_radius = spec.bulb_radius * (0.05 + 0.5 * unit(rng));
                spec.length = 2.0 + 5.0 * unit(rng);
                break;
        }
        const ProfileCurve c = build_profile(spec);
        const ValidationReport rep = validate(c);
        if (!rep.all_pass()) {
            for (const auto& chk : rep.checks)
                if (!chk.pass)
                    MESSAGE("trial ", trial, " kind ", static_cast<int>(spec.kind), " check ",
                            chk.name, " node ", chk.node);
        }
        CHECK(rep.all_pass());
    }
}
