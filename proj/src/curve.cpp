#include "vpmcf/curve.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace vpmcf {

std::vector<Scalar> arc_lengths(const ProfileCurve& curve) {
    std::vector<Scalar> s(curve.nodes.size(), 0.0);
    for (std::size_t i = 1; i < curve.nodes.size(); ++i)
        s[i] = s[i - 1] + dist(curve.nodes[i], curve.nodes[i - 1]);
    return s;
}

Scalar total_length(const ProfileCurve& curve) {
    Scalar L = 0.0;
    for (std::size_t i = 1; i < curve.nodes.size(); ++i)
        L += dist(curve.nodes[i], curve.nodes[i - 1]);
    return L;
}

Scalar bounding_box_diagonal(const ProfileCurve& curve) {
    if (curve.nodes.empty()) return 0.0;
    Scalar xmin = curve.nodes[0].x, xmax = xmin, rmin = curve.nodes[0].r, rmax = rmin;
    for (const auto& p : curve.nodes) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        rmin = std::min(rmin, p.r);
        rmax = std::max(rmax, p.r);
    }
    return std::hypot(xmax - xmin, rmax - rmin);
}

Topology natural_topology(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::Sphere:
        case ShapeKind::PerturbedSphere:
        case ShapeKind::Dumbbell:
            return Topology::Closed;
        default:
            return Topology::FreeBoundary;
    }
}

namespace {

void require_positive(Scalar value, const char* field) {
    if (!(value > 0.0)) throw InvalidSpecError(field, "must be positive");
}

Scalar perturbation_sign(const InitialShapeSpec& spec) {
    if (!spec.phase_from_seed) return 1.0;
    std::mt19937_64 rng(spec.seed);
    return (rng() & 1u) ? -1.0 : 1.0;
}

// Samples an analytic curve gamma: [0,1] -> half-plane at N nodes equally
// spaced in arc length. The arc-length function is tabulated on a dense grid
// and inverted by 4-point Lagrange interpolation of tau(s), then gamma is
// evaluated exactly; nodes therefore sit on the analytic curve with smoothly
// varying spacing (no grid-scale jitter, which curvature stencils amplify).
template <typename Gamma>
ProfileCurve parametric_profile(const Gamma& gamma, Topology topo, int n, int N) {
    const int D = std::max(16 * N, 4096);
    std::vector<Scalar> s(D + 1), tau(D + 1);
    Vec2 prev = gamma(0.0);
    s[0] = 0.0;
    tau[0] = 0.0;
    for (int i = 1; i <= D; ++i) {
        tau[i] = static_cast<Scalar>(i) / D;
        const Vec2 p = gamma(tau[i]);
        s[i] = s[i - 1] + dist(p, prev);
        prev = p;
    }
    const Scalar L = s[D];
    ProfileCurve out;
    out.topology = topo;
    out.dim = n;
    out.nodes.resize(N);
    out.nodes.front() = gamma(0.0);
    out.nodes.back() = gamma(1.0);
    int cell = 0;
    for (int j = 1; j + 1 < N; ++j) {
        const Scalar target = L * j / (N - 1);
        while (cell + 1 < D && s[cell + 1] < target) ++cell;
        const int lo = std::clamp(cell - 1, 0, D - 3);
        Scalar t_star = 0.0;
        for (int a = lo; a < lo + 4; ++a) {
            Scalar w = 1.0;
            for (int b = lo; b < lo + 4; ++b)
                if (b != a) w *= (target - s[b]) / (s[a] - s[b]);
            t_star += w * tau[a];
        }
        out.nodes[j] = gamma(std::clamp(t_star, 0.0, 1.0));
    }
    return out;
}

ProfileCurve build_polar_graph(Scalar R, Scalar a, int harmonic, Scalar center_x, Topology topo,
                               int n, int N) {
    // rho(g) = R + a P_harmonic(cos g), g = angle from the axis direction,
    // curve ordered plane-to-pole (FreeBoundary, g from pi/2 to 0) or left
    // pole to right pole (Closed, g from pi to 0).
    const Scalar g_hi = (topo == Topology::FreeBoundary) ? 0.5 * kPi : kPi;
    auto gamma = [=](Scalar t) -> Vec2 {
        const Scalar g = g_hi * (1.0 - t);
        const Scalar rho = R + a * std::legendre(harmonic, std::cos(g));
        return {center_x + rho * std::cos(g), rho * std::sin(g)};
    };
    ProfileCurve c = parametric_profile(gamma, topo, n, N);
    if (topo == Topology::FreeBoundary)
        c.nodes.front().x = center_x;
    else
        c.nodes.front().r = 0.0;
    c.nodes.back().r = 0.0;
    return c;
}

}  // namespace

ProfileCurve build_profile(const InitialShapeSpec& spec) {
    if (spec.node_count < kMinNodeCount)
        throw InvalidSpecError("node_count", "must be at least " + std::to_string(kMinNodeCount));
    if (spec.n < 2) throw InvalidSpecError("n", "dimension must be at least 2");
    const int N = spec.node_count;
    const int n = spec.n;

    switch (spec.kind) {
        case ShapeKind::Hemisphere: {
            require_positive(spec.radius, "radius");
            ProfileCurve c;
            c.topology = Topology::FreeBoundary;
            c.dim = n;
            c.nodes.resize(N);
            for (int i = 0; i < N; ++i) {
                const Scalar t = 0.5 * kPi * i / (N - 1);
                c.nodes[i] = {spec.radius * std::sin(t), spec.radius * std::cos(t)};
            }
            c.nodes[0].x = 0.0;
            c.nodes[N - 1].r = 0.0;
            return c;
        }
        case ShapeKind::Sphere: {
            require_positive(spec.radius, "radius");
            if (!(spec.center_x > spec.radius))
                throw InvalidSpecError("center_x", "sphere must lie in the half-space x > 0");
            ProfileCurve c;
            c.topology = Topology::Closed;
            c.dim = n;
            c.nodes.resize(N);
            for (int i = 0; i < N; ++i) {
                const Scalar t = kPi * i / (N - 1);
                c.nodes[i] = {spec.center_x - spec.radius * std::cos(t), spec.radius * std::sin(t)};
            }
            c.nodes[0].r = 0.0;
            c.nodes[N - 1].r = 0.0;
            return c;
        }
        case ShapeKind::PerturbedHemisphere: {
            require_positive(spec.radius, "radius");
            require_positive(spec.amplitude, "amplitude");
            if (spec.mode_count < 1) throw InvalidSpecError("mode_count", "must be at least 1");
            if (!(spec.amplitude < spec.radius))
                throw InvalidSpecError("amplitude", "must be smaller than the base radius");
            const Scalar a = perturbation_sign(spec) * spec.amplitude;
            return build_polar_graph(spec.radius, a, 2 * spec.mode_count, 0.0,
                                     Topology::FreeBoundary, n, N);
        }
        case ShapeKind::PerturbedSphere: {
            require_positive(spec.radius, "radius");
            require_positive(spec.amplitude, "amplitude");
            if (spec.mode_count < 1) throw InvalidSpecError("mode_count", "must be at least 1");
            if (!(spec.amplitude < spec.radius))
                throw InvalidSpecError("amplitude", "must be smaller than the base radius");
            if (!(spec.center_x > spec.radius + spec.amplitude))
                throw InvalidSpecError("center_x", "surface must lie in the half-space x > 0");
            const Scalar a = perturbation_sign(spec) * spec.amplitude;
            return build_polar_graph(spec.radius, a, spec.mode_count, spec.center_x,
                                     Topology::Closed, n, N);
        }
        case ShapeKind::CosineBumpCylinder: {
            require_positive(spec.base_radius, "base_radius");
            require_positive(spec.length, "length");
            require_positive(spec.amplitude, "amplitude");
            if (spec.mode_count < 1) throw InvalidSpecError("mode_count", "must be at least 1");
            if (!(spec.amplitude < spec.base_radius))
                throw InvalidSpecError("amplitude", "must be smaller than the base radius");
            const Scalar a = perturbation_sign(spec) * spec.amplitude;
            const Scalar b = spec.base_radius, L = spec.length;
            const int m = spec.mode_count;
            // x = L sin(psi) resolves the vertical tangent at the pole.
            auto gamma = [=](Scalar t) -> Vec2 {
                const Scalar psi = 0.5 * kPi * t;
                const Scalar x = L * std::sin(psi);
                return {x, (b + a * std::cos(m * kPi * x / L)) * std::cos(psi)};
            };
            ProfileCurve c = parametric_profile(gamma, Topology::FreeBoundary, n, N);
            c.nodes.front().x = 0.0;
            c.nodes.back().r = 0.0;
            return c;
        }
        case ShapeKind::Dumbbell: {
            require_positive(spec.bulb_radius, "bulb_radius");
            require_positive(spec.neck_radius, "neck_radius");
            require_positive(spec.length, "length");
            if (!(spec.neck_radius < spec.bulb_radius))
                throw InvalidSpecError("neck_radius", "must be smaller than the bulb radius");
            const Scalar L = spec.length, bulb = spec.bulb_radius, neck = spec.neck_radius;
            // Bulbs at the quarter points, the neck (radius = neck exactly) at
            // mid-length, tip curvature radius 2 bulb^2 / L.
            auto gamma = [=](Scalar t) -> Vec2 {
                const Scalar xi = -std::cos(kPi * t);  // in [-1, 1]
                const Scalar x = 0.5 * L * (xi + 1.0);
                const Scalar s2 = std::sin(kPi * x / L);
                const Scalar envelope = std::sqrt(std::max(0.0, 1.0 - xi * xi));
                return {x, (bulb - (bulb - neck) * s2 * s2 * s2 * s2) * envelope};
            };
            ProfileCurve c = parametric_profile(gamma, Topology::Closed, n, N);
            c.nodes.front().r = 0.0;
            c.nodes.back().r = 0.0;
            return c;
        }
    }
    throw InvalidSpecError("kind", "unknown shape kind");
}

ProfileCurve resample(const ProfileCurve& curve, int node_count) {
    if (node_count < kMinNodeCount)
        throw InvalidSpecError("node_count", "must be at least " + std::to_string(kMinNodeCount));
    if (curve.size() < 2) throw DegenerateCurveError("fewer than two nodes");
    const std::vector<Scalar> s = arc_lengths(curve);
    const Scalar L = s.back();
    if (L < 1e-12 * bounding_box_diagonal(curve) || L <= 0.0)
        throw DegenerateCurveError("total length below 1e-12 of the bounding-box diagonal");

    ProfileCurve out;
    out.topology = curve.topology;
    out.dim = curve.dim;
    out.nodes.resize(node_count);
    out.nodes.front() = curve.nodes.front();
    out.nodes.back() = curve.nodes.back();
    int seg = 0;
    for (int j = 1; j < node_count - 1; ++j) {
        const Scalar target = L * j / (node_count - 1);
        while (seg + 2 < curve.size() && s[seg + 1] < target) ++seg;
        const Scalar ds = s[seg + 1] - s[seg];
        const Scalar w = ds > 0.0 ? (target - s[seg]) / ds : 0.0;
        out.nodes[j] = curve.nodes[seg] + w * (curve.nodes[seg + 1] - curve.nodes[seg]);
    }
    return out;
}

namespace {

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) { return cross(q - p, r - p); };
    const Scalar o1 = orient(a, b, c), o2 = orient(a, b, d);
    const Scalar o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
           o4 != 0;
}

}  // namespace

int neck_node(const ProfileCurve& curve, Scalar epsilon) {
    int worst = -1;
    Scalar r_worst = epsilon;
    for (int i = 1; i + 1 < curve.size(); ++i) {
        const Scalar r = curve.nodes[i].r;
        if (r <= 0.0) return i;
        const bool local_min = r <= curve.nodes[i - 1].r && r <= curve.nodes[i + 1].r;
        if (local_min && r < r_worst) {
            r_worst = r;
            worst = i;
        }
    }
    return worst;
}

ValidationReport validate(const ProfileCurve& curve) {
    ValidationReport rep;
    const int N = curve.size();
    const Scalar scale = std::max(bounding_box_diagonal(curve), Scalar(1e-300));
    const Scalar tol = 1e-9 * scale;

    {
        ValidationCheck c{"node_count", N >= kMinNodeCount, -1, ""};
        if (!c.pass) c.detail = "fewer than " + std::to_string(kMinNodeCount) + " nodes";
        rep.checks.push_back(c);
    }
    if (N < 2) return rep;

    {
        ValidationCheck c{"interior_radius_positive", true, -1, ""};
        for (int i = 1; i + 1 < N; ++i) {
            if (!(curve.nodes[i].r > 0.0)) {
                c = {"interior_radius_positive", false, i, "pinch at node " + std::to_string(i)};
                break;
            }
        }
        rep.checks.push_back(c);
    }

    if (curve.topology == Topology::FreeBoundary) {
        {
            const bool ok = std::abs(curve.nodes.front().x) <= tol && curve.nodes.front().r > 0.0;
            rep.checks.push_back({"plane_contact", ok, ok ? -1 : 0,
                                  ok ? "" : "first node must sit on the plane x = 0 with r > 0"});
        }
        {
            const bool ok = std::abs(curve.nodes.back().r) <= tol && curve.nodes.back().x > 0.0;
            rep.checks.push_back({"pole_contact", ok, ok ? -1 : N - 1,
                                  ok ? "" : "last node must sit on the axis with x > 0"});
        }
    } else {
        const bool ok0 = std::abs(curve.nodes.front().r) <= tol;
        const bool ok1 = std::abs(curve.nodes.back().r) <= tol;
        const bool order = curve.nodes.front().x < curve.nodes.back().x;
        rep.checks.push_back({"pole_contact", ok0 && ok1, ok0 ? (ok1 ? -1 : N - 1) : 0,
                              (ok0 && ok1) ? "" : "both end nodes must sit on the axis"});
        rep.checks.push_back(
            {"pole_order", order, order ? -1 : 0, order ? "" : "left pole must precede right pole"});
    }

    {
        ValidationCheck c{"consecutive_distinct", true, -1, ""};
        for (int i = 1; i < N; ++i) {
            if (dist(curve.nodes[i], curve.nodes[i - 1]) <= 1e-14 * scale) {
                c = {"consecutive_distinct", false, i, "coincident with predecessor"};
                break;
            }
        }
        rep.checks.push_back(c);
    }

    {
        ValidationCheck c{"simple_polyline", true, -1, ""};
        for (int i = 0; i + 1 < N && c.pass; ++i) {
            for (int j = i + 2; j + 1 < N; ++j) {
                if (segments_intersect(curve.nodes[i], curve.nodes[i + 1], curve.nodes[j],
                                       curve.nodes[j + 1])) {
                    c = {"simple_polyline", false, i,
                         "segment " + std::to_string(i) + " crosses segment " + std::to_string(j)};
                    break;
                }
            }
        }
        rep.checks.push_back(c);
    }

    {
        ValidationCheck c{"uniform_spacing", true, -1, ""};
        const Scalar mean = total_length(curve) / (N - 1);
        for (int i = 1; i < N; ++i) {
            const Scalar ds = dist(curve.nodes[i], curve.nodes[i - 1]);
            if (std::abs(ds - mean) > kUniformSpacingTol * mean) {
                c = {"uniform_spacing", false, i, "spacing deviates more than 1% from the mean"};
                break;
            }
        }
        rep.checks.push_back(c);
    }

    return rep;
}

}  // namespace vpmcf
