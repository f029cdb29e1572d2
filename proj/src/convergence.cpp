#include "vpmcf/convergence.hpp"

#include <algorithm>
#include <cmath>

namespace vpmcf {

CmcDeviation cmc_deviation(const FlowState& state, const FrameSet& f) {
    const ProfileCurve& c = state.curve;
    const int N = c.size();
    const int n = c.dim;
    CmcDeviation dev;
    Scalar wsum = 0.0, acc = 0.0;
    for (int i = 0; i < N; ++i) {
        const Scalar d = std::abs(f[i].H - state.h);
        dev.sup = std::max(dev.sup, d);
        const Scalar hm = (i > 0) ? dist(c.nodes[i], c.nodes[i - 1]) : 0.0;
        const Scalar hp = (i + 1 < N) ? dist(c.nodes[i + 1], c.nodes[i]) : 0.0;
        const Scalar w = ipow(c.nodes[i].r, n - 1) * 0.5 * (hm + hp);
        acc += w * d * d;
        wsum += w;
    }
    dev.l2 = wsum > 0.0 ? std::sqrt(acc / wsum) : 0.0;
    return dev;
}

LimitShape fit_limit_shape(const FlowState& state) {
    const ProfileCurve& c = state.curve;
    const int n = c.dim;
    const Scalar omega_np1 = unit_ball_volume(n + 1);
    LimitShape shape;
    if (c.topology == Topology::FreeBoundary) {
        shape.radius = std::pow(2.0 * state.volume / omega_np1, 1.0 / (n + 1));
        shape.center_x = 0.0;
    } else {
        shape.radius = std::pow(state.volume / omega_np1, 1.0 / (n + 1));
        // Volume-weighted axial centroid: integral of x r^n dx / integral of r^n dx.
        Scalar num = 0.0, den = 0.0;
        for (int i = 0; i + 1 < c.size(); ++i) {
            const Scalar dx = c.nodes[i + 1].x - c.nodes[i].x;
            const Scalar f0 = ipow(c.nodes[i].r, n), f1 = ipow(c.nodes[i + 1].r, n);
            num += 0.5 * dx * (c.nodes[i].x * f0 + c.nodes[i + 1].x * f1);
            den += 0.5 * dx * (f0 + f1);
        }
        shape.center_x = den != 0.0 ? num / den : 0.0;
    }
    const Vec2 center{shape.center_x, 0.0};
    Scalar dev = 0.0;
    for (const auto& p : c.nodes) dev = std::max(dev, std::abs(dist(p, center) - shape.radius));
    shape.shape_dev = dev;
    return shape;
}

ConvergenceReport is_converged(const FlowState& state, const FrameSet& f, Scalar tol_cmc,
                               Scalar tol_shape) {
    if (!(tol_cmc > 0.0) || !(tol_shape > 0.0))
        throw Error("is_converged: tolerances must be positive");
    ConvergenceReport rep;
    rep.t = state.t;
    const CmcDeviation dev = cmc_deviation(state, f);
    rep.sup_dev_H = dev.sup;
    rep.l2_dev_H = dev.l2;
    const LimitShape shape = fit_limit_shape(state);
    rep.fitted_radius = shape.radius;
    rep.fitted_center_x = shape.center_x;
    rep.shape_dev = shape.shape_dev;
    rep.converged = rep.sup_dev_H <= tol_cmc && rep.shape_dev <= tol_shape * rep.fitted_radius;
    return rep;
}

Scalar resolve_tol_cmc(const ConvergenceTols& tols, const FlowState& state) {
    if (tols.tol_cmc_abs > 0.0) return tols.tol_cmc_abs;
    const LimitShape shape = fit_limit_shape(state);
    return tols.tol_cmc_factor * state.curve.dim / shape.radius;
}

}  // namespace vpmcf
