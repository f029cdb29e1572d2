#pragma once

#include <cstdint>
#include <vector>

#include "vpmcf/types.hpp"

namespace vpmcf {

// FreeBoundary: curve runs from the plane Pi = {x = 0} to a single pole on the axis.
// Closed: curve runs from a left pole to a right pole, both on the axis.
enum class Topology { FreeBoundary, Closed };

// Generating curve of the axisymmetric hypersurface, ordered by arc length.
// x need not be monotone (caps may overhang); interior nodes must keep r > 0.
struct ProfileCurve {
    std::vector<Vec2> nodes;
    Topology topology = Topology::FreeBoundary;
    int dim = 2;  // dimension n of the hypersurface, n >= 2

    int size() const { return static_cast<int>(nodes.size()); }
};

// Cumulative polyline arc length per node (s[0] = 0).
std::vector<Scalar> arc_lengths(const ProfileCurve& curve);
Scalar total_length(const ProfileCurve& curve);
Scalar bounding_box_diagonal(const ProfileCurve& curve);

enum class ShapeKind {
    Hemisphere,
    Sphere,
    PerturbedHemisphere,
    PerturbedSphere,
    CosineBumpCylinder,
    Dumbbell,
};

// Scenario library. Perturbed kinds use a single Legendre harmonic as the
// perturbation basis (index = mode_count); even harmonics on the hemisphere so
// the Neumann condition at Pi and the orthogonal axis contact hold exactly.
//   hemisphere:            (R sin t, R cos t), t in [0, pi/2]
//   sphere:                (c - R cos t, R sin t), t in [0, pi]
//   perturbed_hemisphere:  rho(g) = R + a P_{2m}(cos g), polar graph about the origin,
//                          g = angle from the axis
//   perturbed_sphere:      rho(g) = R + a P_m(cos g), polar graph about (center_x, 0)
//   cosine_bump_cylinder:  rho(x) = (b + a cos(m pi x / L)) sqrt(1 - (x/L)^2), x in [0, L]
//   dumbbell:              rho(x) = [bulb - (bulb - neck) sin^4(pi x / L)] sqrt(1 - (2x/L - 1)^2),
//                          x in [0, L]; mid-neck radius = neck exactly
struct InitialShapeSpec {
    ShapeKind kind = ShapeKind::Hemisphere;
    Scalar radius = 1.0;       // hemisphere / sphere / perturbed kinds
    Scalar center_x = 2.0;     // sphere kinds
    Scalar amplitude = 0.0;    // perturbed kinds, cosine bump
    int mode_count = 1;        // harmonic index / ripple count
    Scalar base_radius = 1.0;  // cosine_bump_cylinder
    Scalar length = 4.0;       // cosine_bump_cylinder / dumbbell
    Scalar bulb_radius = 1.0;  // dumbbell
    Scalar neck_radius = 0.2;  // dumbbell
    int n = 2;
    int node_count = 400;
    // Randomized perturbation phase: the only phases compatible with the
    // endpoint tangency are 0 and pi, i.e. the sign of the amplitude.
    bool phase_from_seed = false;
    std::uint64_t seed = 0;
};

Topology natural_topology(ShapeKind kind);

ProfileCurve build_profile(const InitialShapeSpec& spec);

// New curve with node_count nodes at equal arc-length spacing along the input
// polyline. Endpoints are preserved exactly.
ProfileCurve resample(const ProfileCurve& curve, int node_count);

struct ValidationCheck {
    std::string name;
    bool pass = true;
    int node = -1;  // location of first violation, -1 if none
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const ValidationCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

ValidationReport validate(const ProfileCurve& curve);

// First interior node whose radius is a local minimum below epsilon: the
// discrete witness of a neck forming away from the poles. Nodes sliding into
// a pole are not necks (r decreases monotonically into the pole there), so
// the local-minimum requirement filters them out at any resolution. Interior
// nodes with r <= 0 are reported unconditionally. Returns -1 if none.
int neck_node(const ProfileCurve& curve, Scalar epsilon);

constexpr int kMinNodeCount = 16;
constexpr Scalar kUniformSpacingTol = 0.01;

}  // namespace vpmcf
