#include "vpmcf/flow.hpp"

#include <algorithm>
#include <cmath>

#include "vpmcf/convergence.hpp"

namespace vpmcf {

FlowState make_flow_state(ProfileCurve curve) {
    FlowState s;
    s.curve = std::move(curve);
    refresh_caches(s);
    s.target_volume = s.volume;
    for (const auto& p : s.curve.nodes) s.r0_max = std::max(s.r0_max, p.r);
    return s;
}

void refresh_caches(FlowState& state) {
    state.area = surface_area(state.curve);
    state.volume = enclosed_volume(state.curve);
    state.h = mean_h(state.curve);
}

std::vector<Scalar> normal_velocity(const FlowState& state, const FrameSet& f, FlowMode mode) {
    std::vector<Scalar> vel(f.size());
    const Scalar h = (mode == FlowMode::VolumePreserving) ? state.h : 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) vel[i] = -(f[i].H - h);
    return vel;
}

Scalar choose_dt(const FlowState& state, const FrameSet& f, const StepPolicy& policy) {
    const ProfileCurve& c = state.curve;
    Scalar ds_min = infinity();
    for (int i = 0; i + 1 < c.size(); ++i)
        ds_min = std::min(ds_min, dist(c.nodes[i + 1], c.nodes[i]));
    Scalar a2_max = 0.0;
    for (const auto& fr : f) a2_max = std::max(a2_max, fr.A2);
    const Scalar dt = policy.cfl_safety * ds_min * ds_min / (2.0 + a2_max * ds_min * ds_min);
    return std::min(policy.dt_max, dt);
}

namespace {

void enforce_endpoints(ProfileCurve& c) {
    if (c.topology == Topology::FreeBoundary) {
        c.nodes.front().x = 0.0;  // Neumann contact: r stays free
        c.nodes.back().r = 0.0;
    } else {
        c.nodes.front().r = 0.0;
        c.nodes.back().r = 0.0;
    }
}

int interior_pinch_node(const ProfileCurve& c, Scalar eps) { return neck_node(c, eps); }

// Uniform offset along fixed normals until the discrete volume matches the
// target. Plane and pole nodes move along (0,+-1) and (+-1,0) respectively,
// so the endpoint constraints survive the offset.
void project_volume(ProfileCurve& c, const FrameSet& f, Scalar target, Scalar t_now) {
    const Scalar tol = 1e-12 * std::abs(target);
    Scalar V = enclosed_volume(c);
    for (int it = 0; it < 5; ++it) {
        if (std::abs(V - target) <= tol) return;
        const std::vector<Scalar> w = volume_gradient_weights(c, f);
        Scalar dVdeps = 0.0;
        for (Scalar wi : w) dVdeps += wi;
        if (!(std::abs(dVdeps) > 0.0)) throw ProjectionError("vanishing volume gradient");
        const Scalar eps = (target - V) / dVdeps;
        for (std::size_t i = 0; i < c.nodes.size(); ++i) c.nodes[i] = c.nodes[i] + eps * f[i].normal;
        enforce_endpoints(c);
        V = enclosed_volume(c);
    }
    if (std::abs(V - target) > tol)
        throw ProjectionError("Newton did not converge in 5 iterations at t = " +
                              std::to_string(t_now));
}

}  // namespace

FlowState step(const FlowState& state, const StepPolicy& policy) {
    const Scalar pinch_eps = policy.pinch_epsilon_rel * state.r0_max;
    {
        const int node = interior_pinch_node(state.curve, pinch_eps);
        if (node >= 0) throw PinchError(node, state.curve.nodes[node].r, state.t);
    }

    thread_local FrameSet f0, fh, fn;
    frames_into(state.curve, f0);
    const Scalar dt = choose_dt(state, f0, policy);
    const Scalar h0 = (policy.mode == FlowMode::VolumePreserving) ? state.h : 0.0;

    // Midpoint stage.
    ProfileCurve half = state.curve;
    for (int i = 0; i < half.size(); ++i)
        half.nodes[i] = half.nodes[i] + (0.5 * dt * (h0 - f0[i].H)) * f0[i].normal;
    enforce_endpoints(half);
    {
        const int node = interior_pinch_node(half, 0.0);
        if (node >= 0) throw PinchError(node, half.nodes[node].r, state.t);
    }
    frames_into(half, fh);
    const Scalar hh =
        (policy.mode == FlowMode::VolumePreserving) ? mean_h(half, fh) : 0.0;

    FlowState next = state;
    for (int i = 0; i < next.curve.size(); ++i)
        next.curve.nodes[i] = next.curve.nodes[i] + (dt * (hh - fh[i].H)) * fh[i].normal;
    enforce_endpoints(next.curve);
    {
        const int node = interior_pinch_node(next.curve, pinch_eps);
        if (node >= 0) throw PinchError(node, next.curve.nodes[node].r, state.t + dt);
    }

    next.last_step_redistributed = false;
    if (policy.redistribution_period > 0 &&
        (state.step_index + 1) % policy.redistribution_period == 0) {
        next.curve = resample(next.curve, next.curve.size());
        next.last_step_redistributed = true;
    }
    frames_into(next.curve, fn);
    if (policy.volume_projection)
        project_volume(next.curve, fn, state.target_volume, state.t + dt);

    next.area = surface_area(next.curve);
    next.volume = enclosed_volume(next.curve);
    next.h = mean_h(next.curve, fn);
    next.t = state.t + dt;
    next.step_index = state.step_index + 1;
    return next;
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::Converged: return "converged";
        case Termination::HorizonReached: return "horizon-reached";
        case Termination::PinchDetected: return "pinch-detected";
        case Termination::MonitorHardFail: return "monitor-hard-fail";
        case Termination::NumericsFailure: return "numerics-failure";
    }
    return "unknown";
}

RunSummary run(FlowState state, const StepPolicy& policy, Scalar horizon, int observe_every,
               const ConvergenceTols& conv, const std::vector<Observer>& observers) {
    RunSummary summary;
    if (observe_every < 1) observe_every = 1;

    auto observe = [&](const FlowState& s) -> ObserverAction {
        const FrameSet f = frames(s.curve);
        for (const auto& obs : observers)
            if (obs(s, f) == ObserverAction::HardFail) return ObserverAction::HardFail;
        const Scalar tol_cmc = resolve_tol_cmc(conv, s);
        const ConvergenceReport rep = is_converged(s, f, tol_cmc, conv.tol_shape);
        if (rep.converged) {
            summary.reason = Termination::Converged;
            summary.message = "sup|H - h| = " + std::to_string(rep.sup_dev_H);
        }
        return ObserverAction::Continue;
    };

    try {
        if (observe(state) == ObserverAction::HardFail) {
            summary.reason = Termination::MonitorHardFail;
        } else if (summary.reason != Termination::Converged) {
            while (state.t < horizon) {
                state = step(state, policy);
                ++summary.steps;
                const bool at_observation =
                    (state.step_index % observe_every == 0) || state.t >= horizon;
                if (at_observation) {
                    const ObserverAction act = observe(state);
                    if (act == ObserverAction::HardFail) {
                        summary.reason = Termination::MonitorHardFail;
                        break;
                    }
                    if (summary.reason == Termination::Converged) break;
                }
            }
        }
    } catch (const PinchError& e) {
        summary.reason = Termination::PinchDetected;
        summary.message = e.what();
        summary.fail_node = e.node();
    } catch (const ProjectionError& e) {
        summary.reason = Termination::NumericsFailure;
        summary.message = e.what();
    }
    summary.final_state = std::move(state);
    return summary;
}

namespace {

std::vector<Scalar> gradient_arclength(const ProfileCurve& c, const std::vector<Scalar>& field) {
    const int N = c.size();
    std::vector<Scalar> g(N, quiet_nan());
    for (int i = 1; i + 1 < N; ++i) {
        const Scalar hm = dist(c.nodes[i], c.nodes[i - 1]);
        const Scalar hp = dist(c.nodes[i + 1], c.nodes[i]);
        g[i] = (hm * hm * field[i + 1] - hp * hp * field[i - 1] +
                (hp * hp - hm * hm) * field[i]) /
               (hm * hp * (hm + hp));
    }
    return g;
}

std::vector<Scalar> extract(const FrameSet& f, EvolvedQuantity q) {
    std::vector<Scalar> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        switch (q) {
            case EvolvedQuantity::U: out[i] = f[i].u; break;
            case EvolvedQuantity::UTilde: out[i] = f[i].u_tilde; break;
            case EvolvedQuantity::V: out[i] = f[i].v; break;
            case EvolvedQuantity::VTilde: out[i] = f[i].v_tilde; break;
            case EvolvedQuantity::H: out[i] = f[i].H; break;
            case EvolvedQuantity::A2: out[i] = f[i].A2; break;
            case EvolvedQuantity::P: out[i] = f[i].p; break;
            case EvolvedQuantity::K: out[i] = f[i].k; break;
        }
    }
    return out;
}

}  // namespace

ResidualReport evolution_residual(const FlowState& before, const FlowState& after,
                                  EvolvedQuantity quantity, const FrameSet& fb,
                                  const FrameSet& fa, const ResidualOptions& opts) {
    if (after.last_step_redistributed)
        throw Error(
            "evolution_residual: tangential redistribution was active during the step; "
            "the material derivative is not purely normal");
    const ProfileCurve& c = before.curve;
    const int N = c.size();
    if (after.curve.size() != N) throw Error("evolution_residual: node count changed");
    const Scalar dt = after.t - before.t;
    if (!(dt > 0.0)) throw Error("evolution_residual: states must be one step apart");
    const int n = c.dim;
    const Scalar h = before.h;

    const std::vector<Scalar> field_b = extract(fb, quantity);
    const std::vector<Scalar> field_a = extract(fa, quantity);
    const std::vector<Scalar> lap = laplace_beltrami(c, field_b);
    const std::vector<Scalar> grad = gradient_arclength(c, field_b);

    std::vector<Scalar> kgrad, pgrad;
    if (quantity == EvolvedQuantity::A2) {
        kgrad = gradient_arclength(c, extract(fb, EvolvedQuantity::K));
        pgrad = gradient_arclength(c, extract(fb, EvolvedQuantity::P));
    }

    // Admissible node window.
    const Scalar L = total_length(before.curve);
    const std::vector<Scalar> s = arc_lengths(before.curve);
    const Scalar ds_mean = L / (N - 1);
    const Scalar pole_margin = std::max(opts.end_margin_nodes * ds_mean, opts.pole_margin_fraction * L);
    const bool start_is_pole = (c.topology == Topology::Closed);

    Decomposition dec;
    const bool region_limited =
        quantity == EvolvedQuantity::V || quantity == EvolvedQuantity::VTilde;
    if (region_limited) dec = decompose(c, fb, opts.alpha);

    ResidualReport rep;
    rep.quantity = quantity;
    rep.residual.assign(N, quiet_nan());
    Scalar l2 = 0.0;
    Scalar max_corr = 0.0;
    for (int i = 0; i < N; ++i) {
        if (i < opts.end_margin_nodes || i >= N - opts.end_margin_nodes) continue;
        if (s[i] > L - pole_margin) continue;
        if (start_is_pole && s[i] < pole_margin) continue;
        if (region_limited) {
            const int cmargin = opts.cut_margin_nodes;
            bool ok;
            if (quantity == EvolvedQuantity::V) {
                ok = i >= dec.cylinder_begin() + cmargin && i < dec.cylinder_end() - cmargin;
            } else {
                ok = (i >= dec.right_cap_begin + cmargin) ||
                     (dec.left_cap_end >= 0 && i <= dec.left_cap_end - cmargin);
            }
            if (!ok) continue;
        }

        const PointFrame& f = fb[i];
        Scalar rhs = 0.0;
        switch (quantity) {
            case EvolvedQuantity::U:
                rhs = h * f.nu_r - (n - 1) / f.u;
                break;
            case EvolvedQuantity::UTilde:
                rhs = h * f.nu_x;
                break;
            case EvolvedQuantity::V:
                rhs = -f.A2 * f.v + (n - 1) * f.v / (f.u * f.u) -
                      2.0 / f.v * grad[i] * grad[i];
                break;
            case EvolvedQuantity::VTilde:
                rhs = -f.A2 * f.v_tilde - 2.0 / f.v_tilde * grad[i] * grad[i];
                break;
            case EvolvedQuantity::H:
                rhs = (f.H - h) * f.A2;
                break;
            case EvolvedQuantity::A2: {
                // Stated axisymmetric reduction of |grad A|^2:
                //   (k')^2 + (n-1)(p')^2 + (n-1) q^2 (k-p)^2.
                const Scalar qq = f.q * f.q;
                const Scalar grad_a2 = kgrad[i] * kgrad[i] + (n - 1) * pgrad[i] * pgrad[i] +
                                       (n - 1) * qq * (f.k - f.p) * (f.k - f.p);
                rhs = -2.0 * grad_a2 + 2.0 * f.A2 * f.A2 - 2.0 * h * f.C3;
                break;
            }
            case EvolvedQuantity::P:
                rhs = f.A2 * f.p + 2.0 * f.q * f.q * (f.k - f.p) - h * f.p * f.p;
                break;
            case EvolvedQuantity::K:
                rhs = f.A2 * f.k - 2.0 * (n - 1) * f.q * f.q * (f.k - f.p) - h * f.k * f.k;
                break;
        }
        const Scalar res = (field_a[i] - field_b[i]) / dt - lap[i] - rhs;
        rep.residual[i] = res;
        rep.max_norm = std::max(rep.max_norm, std::abs(res));
        l2 += res * res;
        ++rep.sample_count;

        if (quantity == EvolvedQuantity::A2) {
            const Scalar grad_a2c =
                kgrad[i] * kgrad[i] + 3.0 * (n - 1) * pgrad[i] * pgrad[i];
            const Scalar rhs_c = -2.0 * grad_a2c + 2.0 * f.A2 * f.A2 - 2.0 * h * f.C3;
            const Scalar res_c = (field_a[i] - field_b[i]) / dt - lap[i] - rhs_c;
            max_corr = std::max(max_corr, std::abs(res_c));
        }
    }
    rep.l2_norm = rep.sample_count > 0 ? std::sqrt(l2 / rep.sample_count) : 0.0;
    if (quantity == EvolvedQuantity::A2) rep.max_norm_corrected = max_corr;
    return rep;
}

}  // namespace vpmcf
