#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vpmcf/geometry.hpp"

namespace vpmcf {

enum class FlowMode { VolumePreserving, PlainMcf };

struct StepPolicy {
    Scalar cfl_safety = 0.2;  // in (0, 1]
    Scalar dt_max = 1e-3;
    int redistribution_period = 10;  // resample every k steps; 0 = never
    bool volume_projection = true;
    FlowMode mode = FlowMode::VolumePreserving;
    Scalar pinch_epsilon_rel = 1e-3;  // pinch threshold relative to initial max r
};

struct FlowState {
    ProfileCurve curve;
    Scalar t = 0.0;
    long step_index = 0;
    Scalar area = 0.0;
    Scalar volume = 0.0;
    Scalar h = 0.0;
    Scalar target_volume = 0.0;
    Scalar r0_max = 0.0;  // max radius of the initial curve (pinch scale)
    bool last_step_redistributed = false;
};

FlowState make_flow_state(ProfileCurve curve);
void refresh_caches(FlowState& state);

// Normal speed per node: -(H_i - h) in volume-preserving mode, -H_i in plain
// MCF mode. Positive speed moves a node along its outward normal.
std::vector<Scalar> normal_velocity(const FlowState& state, const FrameSet& f,
                                    FlowMode mode = FlowMode::VolumePreserving);

// Parabolic step bound:
//   dt = min(dt_max, cfl_safety * ds_min^2 / (2 + max_i A2_i * ds_min^2)).
Scalar choose_dt(const FlowState& state, const FrameSet& f, const StepPolicy& policy);

// One explicit midpoint update of the node positions along their normals,
// followed by endpoint re-projection, optional resampling, and optional exact
// discrete volume projection (Newton on a uniform normal offset).
FlowState step(const FlowState& state, const StepPolicy& policy);

enum class Termination { Converged, HorizonReached, PinchDetected, MonitorHardFail, NumericsFailure };

std::string to_string(Termination t);

struct RunSummary {
    Termination reason = Termination::HorizonReached;
    FlowState final_state;
    long steps = 0;
    std::string message;
    int fail_node = -1;
};

enum class ObserverAction { Continue, HardFail };

// Called at every observation (step 0, every observe_every steps, and the
// final step) with the current state and its frames.
using Observer = std::function<ObserverAction(const FlowState&, const FrameSet&)>;

struct ConvergenceTols {
    Scalar tol_cmc_abs = 0.0;        // absolute sup|H - h| threshold; 0 = use factor rule
    Scalar tol_cmc_factor = 1e-4;    // tol_cmc = factor * (n / fitted_radius)
    Scalar tol_shape = 1e-3;         // shape_dev <= tol_shape * fitted_radius
};

RunSummary run(FlowState state, const StepPolicy& policy, Scalar horizon, int observe_every,
               const ConvergenceTols& conv, const std::vector<Observer>& observers);

// Evolution equations of the flow, checked as discrete residuals
//   (f_after - f_before)/dt - Delta f - RHS(f)
// on the states of one redistribution-free step.
enum class EvolvedQuantity { U, UTilde, V, VTilde, H, A2, P, K };

struct ResidualOptions {
    // Nodes closer than this many nodes to an endpoint are excluded
    // (one-sided effects dominate there).
    int end_margin_nodes = 3;
    // Near a pole, q^2 ~ r^{-2} amplifies discretization error; exclude a
    // fixed arc-length fraction so the measured norms converge under refinement.
    Scalar pole_margin_fraction = 0.05;
    // V is a cylindrical-part quantity and VTilde a cap quantity; residuals
    // for them are restricted to the respective region at this alpha.
    Scalar alpha = std::sqrt(2.0);
    int cut_margin_nodes = 3;
};

struct ResidualReport {
    EvolvedQuantity quantity;
    std::vector<Scalar> residual;  // NaN on excluded nodes
    Scalar max_norm = 0.0;
    Scalar l2_norm = 0.0;
    int sample_count = 0;
    // For A2 only: the same residual with the corrected |grad A|^2 reduction
    // (k')^2 + 3(n-1)(p')^2.
    Scalar max_norm_corrected = quiet_nan();
};

ResidualReport evolution_residual(const FlowState& before, const FlowState& after,
                                  EvolvedQuantity quantity, const FrameSet& frames_before,
                                  const FrameSet& frames_after,
                                  const ResidualOptions& opts = {});

}  // namespace vpmcf
