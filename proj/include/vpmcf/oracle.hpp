#pragma once

#include <functional>
#include <vector>

#include "vpmcf/curve.hpp"
#include "vpmcf/geometry.hpp"

namespace vpmcf {

enum class ReferenceKind { Sphere, Hemisphere, CylinderSegment };

// Closed-form values of an analytic reference surface together with its
// sampled generating curve. Per-node records hold the exact PointFrame
// quantities for comparison against the discrete kernel.
struct ReferenceSurface {
    ReferenceKind kind;
    ProfileCurve curve;
    Scalar area = 0.0;
    Scalar volume = 0.0;
    Scalar mean_curvature_avg = 0.0;  // h for the exact surface
    std::vector<PointFrame> exact;    // one record per node (tangent/normal included)
};

struct ReferenceParams {
    Scalar radius = 1.0;
    Scalar length = 2.0;    // cylinder only
    Scalar center_x = 2.0;  // sphere only
};

ReferenceSurface reference_surface(ReferenceKind kind, const ReferenceParams& params, int n,
                                   int node_count);

// Cylinder of radius `radius` on x in [0, length] closed by a spherical cap;
// valid FreeBoundary profile used by composite-shape tests.
ProfileCurve capped_cylinder(Scalar radius, Scalar length, int n, int node_count);

// Exact frames of the polar-graph perturbations rho(g) = R + a P_harmonic(cos g)
// (the perturbed hemisphere / sphere shapes), evaluated at the given curve's
// nodes. The polar angle is recovered from the node position.
std::vector<PointFrame> analytic_polar_frames(const ProfileCurve& curve, Scalar R, Scalar a,
                                              int harmonic, Scalar center_x);

// Richardson refinement of a scalar quantity: evaluates on curves generated at
// N, 2N, 4N, ... nodes, extrapolates assuming second order, and reports the
// observed order from the error ratios.
struct RefineReport {
    std::vector<Scalar> values;      // one per level
    Scalar extrapolated = 0.0;
    Scalar observed_order = 0.0;
    bool exact = false;         // successive values agree to rounding
    bool converging = true;     // observed order >= 1 (or exact)
};

using CurveGenerator = std::function<ProfileCurve(int node_count)>;
using CurveQuantity = std::function<Scalar(const ProfileCurve&)>;

RefineReport refine(const CurveQuantity& quantity, const CurveGenerator& generator, int base_n,
                    int levels);

// Integral of k over the surface evaluated by the integration-by-parts route
//   (n-1) sigma_{n-1} * integral (arctan rho') rho' rho^{n-2} dx1
// with vanishing boundary terms. The integrand is evaluated in arc length,
// where it stays bounded through the pole. Requires a graph-representable
// free-boundary profile (x strictly increasing off the pole).
Scalar k_integral_by_parts(const ProfileCurve& curve);

// Direct route for the same integral: sigma_{n-1} * integral k r^{n-1} ds.
Scalar k_integral_direct(const ProfileCurve& curve, const FrameSet& f);

}  // namespace vpmcf
