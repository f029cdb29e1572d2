#pragma once

#include <vector>

#include "vpmcf/curve.hpp"
#include "vpmcf/types.hpp"

namespace vpmcf {

// Pointwise geometry of the surface of revolution at one node.
//   u  = distance to the axis (= r), u_tilde = distance from the plane Pi (= x)
//   v  = 1/<nu, omega>,  v_tilde = 1/<nu, i1>  (infinity sentinel where the
//        denominator is below 1e-12 in magnitude)
//   q  = <nu, i1> / u, so that p^2 + q^2 = u^{-2}
//   k  = meridian principal curvature, p = rotational principal curvature
//   H  = k + (n-1) p,  A2 = k^2 + (n-1) p^2,  C3 = k^3 + (n-1) p^3
// At a pole the surface is umbilic: p = k there, H = n k, and q carries a
// signed infinity sentinel.
struct PointFrame {
    Vec2 tangent;
    Vec2 normal;
    Scalar u = 0, u_tilde = 0;
    Scalar v = 0, v_tilde = 0;
    Scalar q = 0;
    Scalar k = 0, p = 0;
    Scalar H = 0, A2 = 0, C3 = 0;
    bool is_pole = false;
    Scalar nu_x = 0;  // <nu, i1>, kept unseentineled for decomposition scans
    Scalar nu_r = 0;  // <nu, omega>
};

using FrameSet = std::vector<PointFrame>;

FrameSet frames(const ProfileCurve& curve);
void frames_into(const ProfileCurve& curve, FrameSet& out);

// |M| = sigma_{n-1} * integral of r^{n-1} ds (trapezoid on the polyline).
Scalar surface_area(const ProfileCurve& curve);

// V = omega_n * contour integral of r^n dx (trapezoid per segment); valid for
// overhanging profiles.
Scalar enclosed_volume(const ProfileCurve& curve);

// Directional derivative of the discrete enclosed volume along the unit
// normal at each node: w_i = dV/d(eps_i). Sums to the surface area up to
// O(ds^2). These are the weights that make the volume-preserving step
// conserve the discrete volume exactly in the semi-discrete limit.
std::vector<Scalar> volume_gradient_weights(const ProfileCurve& curve, const FrameSet& f);

// Average of the mean curvature, h = sum(H_i w_i) / sum(w_i) with the volume
// gradient weights above (= integral H dg / integral dg to second order).
Scalar mean_h(const ProfileCurve& curve, const FrameSet& f);
Scalar mean_h(const ProfileCurve& curve);

// Cap / cylindrical-part decomposition at inclination threshold <nu,i1> = 1/alpha.
// The right cap contains the right pole: nodes with <nu,i1> > 1/alpha scanned
// from the pole; Closed topology has a mirrored left cap (<nu,i1> < -1/alpha).
struct Decomposition {
    Scalar alpha = std::sqrt(2.0);
    // Right cap = indices [right_cap_begin, N-1]. Always present (contains at
    // least the pole node).
    int right_cap_begin = 0;
    Scalar L_right_x = 0;  // x-coordinate of the cut plane (linear interpolation)
    // Left cap = indices [0, left_cap_end] (Closed only; left_cap_end = -1 otherwise).
    int left_cap_end = -1;
    Scalar L_left_x = quiet_nan();
    // Set when no node satisfies the cylinder condition (the caps cover the
    // whole curve); the cylinder range is then empty.
    bool whole_surface_is_cap = false;

    bool in_right_cap(int i) const { return i >= right_cap_begin; }
    bool in_left_cap(int i) const { return i <= left_cap_end; }
    bool in_cap(int i) const { return in_right_cap(i) || in_left_cap(i); }
    int cylinder_begin() const { return left_cap_end + 1; }
    int cylinder_end() const { return right_cap_begin; }  // one past the last cylinder node
    bool cylinder_empty() const { return cylinder_begin() >= cylinder_end(); }
};

Decomposition decompose(const ProfileCurve& curve, const FrameSet& f, Scalar alpha);

// Parity of a scalar field under the ghost-node reflection at an endpoint.
// Intrinsic scalars (u, v, H, k, p, |A|^2) are Even at both ends; u_tilde and
// v_tilde are Odd at the plane Pi.
enum class EndParity { Even, Odd };

// Axisymmetric Laplace-Beltrami operator, Delta f = r^{1-n} (r^{n-1} f')' in
// arc length; conservative second-order stencil, ghost reflections at the
// endpoints, smooth limit Delta f = n f'' at poles.
std::vector<Scalar> laplace_beltrami(const ProfileCurve& curve, const std::vector<Scalar>& field,
                                     EndParity start_parity = EndParity::Even,
                                     EndParity end_parity = EndParity::Even);

}  // namespace vpmcf
