#include "vpmcf/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace vpmcf {

namespace {

PointFrame sphere_frame(Scalar radius, Scalar t, Scalar center_x, int n) {
    // t = angle from the left pole: position (c - R cos t, R sin t).
    PointFrame f;
    f.tangent = {std::sin(t), std::cos(t)};
    f.normal = {-std::cos(t), std::sin(t)};
    f.nu_x = f.normal.x;
    f.nu_r = f.normal.r;
    f.u = radius * std::sin(t);
    f.u_tilde = center_x - radius * std::cos(t);
    f.v = std::abs(f.nu_r) > 1e-12 ? 1.0 / f.nu_r : infinity();
    f.v_tilde = std::abs(f.nu_x) > 1e-12 ? 1.0 / f.nu_x : infinity();
    f.k = 1.0 / radius;
    f.p = 1.0 / radius;
    f.is_pole = std::abs(std::sin(t)) < 1e-12;
    if (f.is_pole) f.u = 0.0;
    f.q = f.is_pole ? (f.nu_x >= 0 ? infinity() : -infinity()) : f.nu_x / f.u;
    f.H = f.k + (n - 1) * f.p;
    f.A2 = f.k * f.k + (n - 1) * f.p * f.p;
    f.C3 = std::pow(f.k, 3) + (n - 1) * std::pow(f.p, 3);
    return f;
}

void require_positive(Scalar v, const char* field) {
    if (!(v > 0.0)) throw InvalidSpecError(field, "must be positive");
}

}  // namespace

ReferenceSurface reference_surface(ReferenceKind kind, const ReferenceParams& params, int n,
                                   int node_count) {
    require_positive(params.radius, "radius");
    if (node_count < kMinNodeCount) throw InvalidSpecError("node_count", "too few nodes");
    ReferenceSurface ref;
    ref.kind = kind;
    const Scalar R = params.radius;

    switch (kind) {
        case ReferenceKind::Sphere: {
            if (!(params.center_x > R))
                throw InvalidSpecError("center_x", "sphere must lie in x > 0");
            ref.curve.topology = Topology::Closed;
            ref.curve.dim = n;
            ref.curve.nodes.resize(node_count);
            ref.exact.resize(node_count);
            for (int i = 0; i < node_count; ++i) {
                const Scalar t = kPi * i / (node_count - 1);
                ref.curve.nodes[i] = {params.center_x - R * std::cos(t), R * std::sin(t)};
                ref.exact[i] = sphere_frame(R, t, params.center_x, n);
            }
            ref.curve.nodes.front().r = 0.0;
            ref.curve.nodes.back().r = 0.0;
            ref.area = (n + 1) * unit_ball_volume(n + 1) * std::pow(R, n);
            ref.volume = unit_ball_volume(n + 1) * std::pow(R, n + 1);
            ref.mean_curvature_avg = n / R;
            break;
        }
        case ReferenceKind::Hemisphere: {
            ref.curve.topology = Topology::FreeBoundary;
            ref.curve.dim = n;
            ref.curve.nodes.resize(node_count);
            ref.exact.resize(node_count);
            for (int i = 0; i < node_count; ++i) {
                // Plane-to-pole ordering corresponds to t from pi/2 to pi in the
                // sphere parametrization centered at the origin.
                const Scalar t = 0.5 * kPi + 0.5 * kPi * i / (node_count - 1);
                ref.curve.nodes[i] = {-R * std::cos(t), R * std::sin(t)};
                ref.exact[i] = sphere_frame(R, t, 0.0, n);
            }
            ref.curve.nodes.front().x = 0.0;
            ref.curve.nodes.back().r = 0.0;
            ref.area = 0.5 * (n + 1) * unit_ball_volume(n + 1) * std::pow(R, n);
            ref.volume = 0.5 * unit_ball_volume(n + 1) * std::pow(R, n + 1);
            ref.mean_curvature_avg = n / R;
            break;
        }
        case ReferenceKind::CylinderSegment: {
            require_positive(params.length, "length");
            ref.curve.topology = Topology::FreeBoundary;  // open end; endpoint frames approximate
            ref.curve.dim = n;
            ref.curve.nodes.resize(node_count);
            ref.exact.resize(node_count);
            for (int i = 0; i < node_count; ++i) {
                const Scalar x = params.length * i / (node_count - 1);
                ref.curve.nodes[i] = {x, R};
                PointFrame f;
                f.tangent = {1.0, 0.0};
                f.normal = {0.0, 1.0};
                f.nu_x = 0.0;
                f.nu_r = 1.0;
                f.u = R;
                f.u_tilde = x;
                f.v = 1.0;
                f.v_tilde = infinity();
                f.q = 0.0;
                f.k = 0.0;
                f.p = 1.0 / R;
                f.H = (n - 1) / R;
                f.A2 = (n - 1) / (R * R);
                f.C3 = (n - 1) / (R * R * R);
                ref.exact[i] = f;
            }
            ref.area = unit_sphere_area(n) * std::pow(R, n - 1) * params.length;
            ref.volume = unit_ball_volume(n) * std::pow(R, n) * params.length;
            ref.mean_curvature_avg = (n - 1) / R;
            break;
        }
    }
    return ref;
}

ProfileCurve capped_cylinder(Scalar radius, Scalar length, int n, int node_count) {
    require_positive(radius, "radius");
    require_positive(length, "length");
    const Scalar total = length + 0.5 * kPi * radius;  // exact arc length
    ProfileCurve c;
    c.topology = Topology::FreeBoundary;
    c.dim = n;
    c.nodes.resize(node_count);
    for (int i = 0; i < node_count; ++i) {
        const Scalar s = total * i / (node_count - 1);
        if (s <= length) {
            c.nodes[i] = {s, radius};
        } else {
            const Scalar psi = (s - length) / radius;  // 0..pi/2 along the cap
            c.nodes[i] = {length + radius * std::sin(psi), radius * std::cos(psi)};
        }
    }
    c.nodes.back().r = 0.0;
    return c;
}

namespace {

Scalar legendre_p(int m, Scalar x) { return std::legendre(static_cast<unsigned>(m), x); }

Scalar legendre_dp(int m, Scalar x) {
    if (m == 0) return 0.0;
    const Scalar den = x * x - 1.0;
    if (std::abs(den) < 1e-12) {
        const Scalar v = 0.5 * m * (m + 1);
        if (x > 0.0) return v;
        return (m % 2 == 1) ? v : -v;
    }
    return m * (x * legendre_p(m, x) - legendre_p(m - 1, x)) / den;
}

Scalar legendre_d2p(int m, Scalar x) {
    const Scalar den = 1.0 - x * x;
    if (std::abs(den) < 1e-12) return 0.0;  // callers avoid the poles
    return (2.0 * x * legendre_dp(m, x) - m * (m + 1) * legendre_p(m, x)) / den;
}

}  // namespace

std::vector<PointFrame> analytic_polar_frames(const ProfileCurve& curve, Scalar R, Scalar a,
                                              int harmonic, Scalar center_x) {
    const int n = curve.dim;
    std::vector<PointFrame> out(curve.nodes.size());
    for (std::size_t i = 0; i < curve.nodes.size(); ++i) {
        const Vec2 node = curve.nodes[i];
        const Scalar g = std::atan2(node.r, node.x - center_x);  // angle from the axis
        const Scalar cg = std::cos(g), sg = std::sin(g);
        const Scalar rho = R + a * legendre_p(harmonic, cg);
        const Scalar drho = -a * legendre_dp(harmonic, cg) * sg;  // d rho / d g
        const Scalar d2rho = a * (legendre_d2p(harmonic, cg) * sg * sg - legendre_dp(harmonic, cg) * cg);
        const Scalar speed = std::hypot(rho, drho);

        PointFrame f;
        // Curve ordering runs from high g to low g, so s-derivatives carry a minus.
        const Scalar xg = drho * cg - rho * sg;
        const Scalar rg = drho * sg + rho * cg;
        f.tangent = {-xg / speed, -rg / speed};
        f.normal = {-f.tangent.r, f.tangent.x};
        f.nu_x = f.normal.x;
        f.nu_r = f.normal.r;
        f.u = node.r;
        f.u_tilde = node.x;
        f.v = std::abs(f.nu_r) > 1e-12 ? 1.0 / f.nu_r : infinity();
        f.v_tilde = std::abs(f.nu_x) > 1e-12 ? 1.0 / f.nu_x : infinity();
        // Polar-curve curvature, positive for a convex bulge.
        f.k = (rho * rho + 2.0 * drho * drho - rho * d2rho) / (speed * speed * speed);
        const bool pole = std::abs(sg) < 1e-12;
        f.is_pole = pole;
        if (pole) {
            f.p = f.k;
            f.q = f.nu_x >= 0 ? infinity() : -infinity();
            f.u = 0.0;
        } else {
            f.p = f.nu_r / node.r;
            f.q = f.nu_x / node.r;
        }
        f.H = f.k + (n - 1) * f.p;
        f.A2 = f.k * f.k + (n - 1) * f.p * f.p;
        f.C3 = std::pow(f.k, 3) + (n - 1) * std::pow(f.p, 3);
        out[i] = f;
    }
    return out;
}

RefineReport refine(const CurveQuantity& quantity, const CurveGenerator& generator, int base_n,
                    int levels) {
    if (levels < 3) throw Error("refine: need at least 3 levels");
    RefineReport rep;
    rep.values.reserve(levels);
    for (int l = 0; l < levels; ++l) rep.values.push_back(quantity(generator(base_n << l)));

    const Scalar v0 = rep.values[levels - 3];
    const Scalar v1 = rep.values[levels - 2];
    const Scalar v2 = rep.values[levels - 1];
    const Scalar d1 = v1 - v0, d2 = v2 - v1;
    const Scalar scale = std::max({std::abs(v0), std::abs(v1), std::abs(v2), Scalar(1e-300)});
    if (std::abs(d1) <= 1e-13 * scale && std::abs(d2) <= 1e-13 * scale) {
        rep.exact = true;
        rep.extrapolated = v2;
        rep.observed_order = infinity();
        return rep;
    }
    // Richardson assuming order 2.
    rep.extrapolated = v2 + (v2 - v1) / 3.0;
    if (d2 != 0.0 && d1 / d2 > 0.0)
        rep.observed_order = std::log2(d1 / d2);
    else
        rep.observed_order = 0.0;
    rep.converging = rep.observed_order >= 1.0;
    return rep;
}

Scalar k_integral_by_parts(const ProfileCurve& curve) {
    if (curve.topology != Topology::FreeBoundary)
        throw NotAGraphError("integration-by-parts route requires a free-boundary profile");
    const int N = curve.size();
    const int n = curve.dim;
    const FrameSet f = frames(curve);
    // Graph check: x strictly increasing along the whole profile.
    for (int i = 0; i + 1 < N; ++i) {
        if (!(curve.nodes[i + 1].x > curve.nodes[i].x))
            throw NotAGraphError("overhang detected near node " + std::to_string(i));
    }
    // integrand in arc length: arctan(rho') * r'(s) * rho^{n-2}; arctan(rho')
    // is the tangent inclination angle, bounded through the pole.
    std::vector<Scalar> integrand(N);
    for (int i = 0; i < N; ++i) {
        const Scalar angle = std::atan2(f[i].tangent.r, f[i].tangent.x);
        integrand[i] = angle * f[i].tangent.r * std::pow(curve.nodes[i].r, n - 2);
    }
    Scalar acc = 0.0;
    for (int i = 0; i + 1 < N; ++i) {
        const Scalar ds = dist(curve.nodes[i + 1], curve.nodes[i]);
        acc += 0.5 * ds * (integrand[i] + integrand[i + 1]);
    }
    return (n - 1) * unit_sphere_area(n) * acc;
}

Scalar k_integral_direct(const ProfileCurve& curve, const FrameSet& f) {
    const int n = curve.dim;
    Scalar acc = 0.0;
    for (int i = 0; i + 1 < curve.size(); ++i) {
        const Scalar ds = dist(curve.nodes[i + 1], curve.nodes[i]);
        acc += 0.5 * ds *
               (f[i].k * ipow(curve.nodes[i].r, n - 1) +
                f[i + 1].k * ipow(curve.nodes[i + 1].r, n - 1));
    }
    return unit_sphere_area(n) * acc;
}

}  // namespace vpmcf
