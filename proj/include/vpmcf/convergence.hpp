#pragma once

#include "vpmcf/flow.hpp"
#include "vpmcf/geometry.hpp"

namespace vpmcf {

// Constant-mean-curvature limit detection. The limit radius is predicted from
// the conserved volume, not fitted: a free-boundary surface limits on the
// half-sphere of volume V centered on the axis in Pi, a closed surface on the
// sphere of volume V centered at the volume centroid.
struct ConvergenceReport {
    Scalar t = 0.0;
    Scalar sup_dev_H = 0.0;  // max_i |H_i - h|
    Scalar l2_dev_H = 0.0;   // area-weighted RMS of H - h
    Scalar fitted_radius = 0.0;
    Scalar fitted_center_x = 0.0;
    Scalar shape_dev = 0.0;  // max_i | |node_i - center| - radius |
    bool converged = false;
};

struct CmcDeviation {
    Scalar sup = 0.0;
    Scalar l2 = 0.0;
};

CmcDeviation cmc_deviation(const FlowState& state, const FrameSet& f);

struct LimitShape {
    Scalar radius = 0.0;
    Scalar center_x = 0.0;
    Scalar shape_dev = 0.0;
};

LimitShape fit_limit_shape(const FlowState& state);

ConvergenceReport is_converged(const FlowState& state, const FrameSet& f, Scalar tol_cmc,
                               Scalar tol_shape);

// tol_cmc from the factor rule: factor * (n / fitted_radius).
Scalar resolve_tol_cmc(const ConvergenceTols& tols, const FlowState& state);

}  // namespace vpmcf
