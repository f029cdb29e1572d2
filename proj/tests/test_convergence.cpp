#include <cmath>

#include "doctest.h"
#include "vpmcf/convergence.hpp"
#include "vpmcf/oracle.hpp"

using namespace vpmcf;

namespace {

FlowState state_of(ShapeKind kind, int N, Scalar amplitude = 0.0, int mode = 1) {
    InitialShapeSpec spec;
    spec.kind = kind;
    spec.node_count = N;
    spec.amplitude = amplitude;
    spec.mode_count = mode;
    return make_flow_state(build_profile(spec));
}

}  // namespace

TEST_CASE("cmc deviation") {
    SUBCASE("vanishes on the exact sphere") {
        const FlowState st = state_of(ShapeKind::Sphere, 400);
        const CmcDeviation dev = cmc_deviation(st, frames(st.curve));
        CHECK(dev.sup <= 1e-6);
        CHECK(dev.l2 <= 1e-6);
    }
    SUBCASE("capped cylinder: sup deviation from the two-value H field") {
        const FlowState st = make_flow_state(capped_cylinder(1.0, 2.0, 2, 400));
        const CmcDeviation dev = cmc_deviation(st, frames(st.curve));
        const Scalar expected = std::max(std::abs(1.0 - st.h), std::abs(2.0 - st.h));
        CHECK(dev.sup == doctest::Approx(expected).epsilon(1e-2));
    }
    SUBCASE("10% perturbed hemisphere starts far from CMC") {
        const FlowState st = state_of(ShapeKind::PerturbedHemisphere, 400, 0.1, 2);
        CHECK(cmc_deviation(st, frames(st.curve)).sup > 0.01);
    }
}

TEST_CASE("limit shape is predicted from the conserved volume") {
    SUBCASE("unit hemisphere: radius 1, centered on the axis in the plane") {
        const FlowState st = state_of(ShapeKind::Hemisphere, 32768);
        const LimitShape shape = fit_limit_shape(st);
        CHECK(shape.radius == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(shape.center_x == 0.0);
        CHECK(shape.shape_dev < 1e-8);
    }
    SUBCASE("unit sphere: radius 1, center at the volume centroid") {
        const FlowState st = state_of(ShapeKind::Sphere, 4096);
        const LimitShape shape = fit_limit_shape(st);
        CHECK(shape.radius == doctest::Approx(1.0).epsilon(1e-7));
        CHECK(shape.center_x == doctest::Approx(2.0).epsilon(1e-7));
    }
}

TEST_CASE("is_converged flags") {
    SUBCASE("exact hemisphere converges at tol 1e-4") {
        const FlowState st = state_of(ShapeKind::Hemisphere, 400);
        const ConvergenceReport rep = is_converged(st, frames(st.curve), 1e-4, 1e-3);
        CHECK(rep.converged);
        CHECK(rep.fitted_radius == doctest::Approx(1.0).epsilon(1e-4));
    }
    SUBCASE("fresh 10% perturbation does not") {
        const FlowState st = state_of(ShapeKind::PerturbedHemisphere, 400, 0.1, 2);
        CHECK_FALSE(is_converged(st, frames(st.curve), 1e-4, 1e-3).converged);
    }
    SUBCASE("dumbbell mid-run does not") {
        InitialShapeSpec spec;
        spec.kind = ShapeKind::Dumbbell;
        spec.neck_radius = 0.3;
        spec.node_count = 200;
        FlowState st = make_flow_state(build_profile(spec));
        StepPolicy pol;
        for (int i = 0; i < 50; ++i) st = step(st, pol);
        CHECK_FALSE(is_converged(st, frames(st.curve), 1e-4, 1e-3).converged);
    }
    SUBCASE("tolerances must be positive") {
        const FlowState st = state_of(ShapeKind::Hemisphere, 100);
        CHECK_THROWS_AS(is_converged(st, frames(st.curve), 0.0, 1e-3), Error);
    }
}

TEST_CASE("on a converged run, h approaches n / fitted_radius") {
    FlowState st = state_of(ShapeKind::PerturbedHemisphere, 200, 0.1, 2);
    StepPolicy pol;
    ConvergenceTols conv;
    conv.tol_cmc_abs = 1e-4;
    const RunSummary sum = run(st, pol, 2.0, 50, conv, {});
    REQUIRE(sum.reason == Termination::Converged);
    const LimitShape shape = fit_limit_shape(sum.final_state);
    CHECK(std::abs(sum.final_state.h - 2.0 / shape.radius) <= 1e-4);
}
