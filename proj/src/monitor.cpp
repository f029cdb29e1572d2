#include "vpmcf/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace vpmcf {

const AlphaConstants* BoundLedger::find(Scalar alpha) const {
    for (const auto& a : per_alpha)
        if (std::abs(a.alpha - alpha) <= 1e-12 * std::max(Scalar(1), alpha)) return &a;
    return nullptr;
}

const MonitorCheck* MonitorReport::find(const std::string& id) const {
    for (const auto& c : checks)
        if (c.id == id) return &c;
    return nullptr;
}

Scalar isoperimetric_floor(Scalar volume, int n, Topology topology) {
    const Scalar c = (n + 1) * std::pow(unit_ball_volume(n + 1), 1.0 / (n + 1));
    Scalar floor = c * std::pow(volume, static_cast<Scalar>(n) / (n + 1));
    if (topology == Topology::FreeBoundary) floor *= std::pow(2.0, -1.0 / (n + 1));
    return floor;
}

BoundLedger ledger_from_initial(const FlowState& state0, const std::vector<Scalar>& alpha_list,
                                const std::vector<Scalar>& c_alpha_override) {
    const ProfileCurve& c = state0.curve;
    const int n = c.dim;
    const FrameSet f = frames(c);
    BoundLedger led;
    led.n = n;
    led.topology = c.topology;
    led.area0 = surface_area(c);
    led.V = state0.target_volume > 0.0 ? state0.target_volume : state0.volume;
    const Scalar omega = unit_ball_volume(n);
    const Scalar sigma = unit_sphere_area(n);
    led.R = (c.topology == Topology::FreeBoundary)
                ? std::pow(led.area0 / omega, 1.0 / n)
                : std::pow(led.area0 / (2.0 * omega), 1.0 / n);

    led.l = infinity();
    led.c_star = infinity();
    for (std::size_t a = 0; a < alpha_list.size(); ++a) {
        const Scalar alpha = alpha_list[a];
        if (!(alpha > 1.0)) throw Error("monitor: alpha values must exceed 1");
        AlphaConstants ac;
        ac.alpha = alpha;
        const Decomposition dec = decompose(c, f, alpha);
        Scalar override_c = quiet_nan();
        if (a < c_alpha_override.size()) override_c = c_alpha_override[a];
        if (std::isfinite(override_c) && override_c > 0.0) {
            ac.c_alpha = override_c;
        } else {
            if (dec.cylinder_empty())
                throw Error("monitor: missing threshold c(alpha) for alpha = " +
                            std::to_string(alpha) + " (cylindrical part empty at t = 0)");
            Scalar umin = infinity();
            for (int i = dec.cylinder_begin(); i < dec.cylinder_end(); ++i)
                umin = std::min(umin, f[i].u);
            ac.c_alpha = 0.5 * umin;
        }
        for (int i = dec.cylinder_begin(); i < dec.cylinder_end(); ++i)
            if (std::isfinite(f[i].v)) ac.v0_max_cyl = std::max(ac.v0_max_cyl, f[i].v);

        const Scalar cap_run = led.R * std::sqrt(alpha * alpha - 1.0);
        const Scalar cyl_bound = led.area0 / (n * omega * std::pow(ac.c_alpha, n - 1));
        ac.l = cyl_bound + (c.topology == Topology::Closed ? 2.0 : 1.0) * cap_run;
        const Scalar len_cyl = led.area0 / (sigma * std::pow(ac.c_alpha, n - 1));
        ac.c_star = (c.topology == Topology::Closed) ? len_cyl + 2.0 * ac.l + 2.0 * led.R
                                                     : len_cyl + ac.l + led.R;
        led.l = std::min(led.l, ac.l);
        led.c_star = std::min(led.c_star, ac.c_star);
        led.per_alpha.push_back(ac);
    }
    if (led.per_alpha.empty()) throw Error("monitor: alpha_list must not be empty");

    const Scalar floor = isoperimetric_floor(led.V, n, c.topology);
    led.c1 = (n - 1) * std::pow(led.R, n - 2) * (led.l + 0.5 * kPi * led.c_star) / floor;

    led.kp0 = 1.0;
    for (const auto& fr : f)
        if (fr.p > 1e-8) led.kp0 = std::max(led.kp0, fr.k / fr.p);
    return led;
}

Monitor::Monitor(BoundLedger ledger, MonitorOptions opts)
    : ledger_(std::move(ledger)), opts_(opts) {}

namespace {

MonitorCheck upper(const std::string& id, Scalar measured, Scalar bound, int node = -1,
                   std::string note = "") {
    MonitorCheck c{id, measured <= bound, measured, bound, 0.0, node, std::move(note)};
    c.margin = (bound - measured) / std::max(std::abs(bound), Scalar(1e-300));
    return c;
}

MonitorCheck lower(const std::string& id, Scalar measured, Scalar bound, int node = -1,
                   std::string note = "") {
    MonitorCheck c{id, measured >= bound, measured, bound, 0.0, node, std::move(note)};
    const Scalar ref = std::max(std::max(std::abs(bound), std::abs(measured)), Scalar(1e-300));
    c.margin = (measured - bound) / ref;
    return c;
}

std::string alpha_tag(Scalar alpha) {
    if (std::abs(alpha - std::sqrt(2.0)) < 1e-9) return "sqrt2";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", alpha);
    return buf;
}

// H linearly interpolated at the inclination cut; also v at the cut for the
// boundary-value relation v = alpha / sqrt(alpha^2 - 1).
struct CutSample {
    Scalar H = quiet_nan();
    Scalar v = quiet_nan();
    bool valid = false;
};

CutSample sample_cut(const FrameSet& f, int cyl, int cap, Scalar alpha, bool left) {
    CutSample out;
    if (cyl < 0 || cap < 0 || cyl >= static_cast<int>(f.size()) ||
        cap >= static_cast<int>(f.size()))
        return out;
    const Scalar target = left ? -1.0 / alpha : 1.0 / alpha;
    const Scalar a = f[cyl].nu_x, b = f[cap].nu_x;
    const Scalar den = b - a;
    const Scalar w = std::abs(den) > 0.0 ? std::clamp((target - a) / den, 0.0, 1.0) : 0.0;
    out.H = (1.0 - w) * f[cyl].H + w * f[cap].H;
    if (std::isfinite(f[cyl].v) && std::isfinite(f[cap].v))
        out.v = (1.0 - w) * f[cyl].v + w * f[cap].v;
    out.valid = true;
    return out;
}

}  // namespace

MonitorReport Monitor::check(const FlowState& state, const FrameSet& f) {
    const ProfileCurve& c = state.curve;
    const int N = c.size();
    const int n = c.dim;
    MonitorReport rep;
    rep.t = state.t;
    rep.step = state.step_index;

    // (a) height bound u < R
    {
        Scalar umax = 0.0;
        int at = -1;
        for (int i = 0; i < N; ++i)
            if (c.nodes[i].r > umax) umax = c.nodes[i].r, at = i;
        rep.checks.push_back(upper("a_max_u", umax, ledger_.R, at));
    }
    // (b) axial extent
    {
        if (c.topology == Topology::FreeBoundary) {
            Scalar xmax = 0.0;
            int at = -1;
            for (int i = 0; i < N; ++i)
                if (c.nodes[i].x > xmax) xmax = c.nodes[i].x, at = i;
            rep.checks.push_back(upper("b_axial_extent", xmax, ledger_.l, at));
        } else {
            rep.checks.push_back(
                upper("b_axial_extent", c.nodes.back().x - c.nodes.front().x, ledger_.l));
        }
    }
    // (c) generating-curve length
    rep.checks.push_back(upper("c_curve_length", total_length(c), ledger_.c_star));
    // (d) 0 <= h <= c1
    rep.checks.push_back(lower("d_h_lower", state.h, -opts_.tol_h_rel * ledger_.c1));
    rep.checks.push_back(upper("d_h_upper", state.h, ledger_.c1));

    Scalar Hmax_abs = 0.0;
    for (const auto& fr : f) Hmax_abs = std::max(Hmax_abs, std::abs(fr.H));

    // (e), (f) and the cut samples, per monitored alpha.
    for (const auto& ac : ledger_.per_alpha) {
        const Decomposition dec = decompose(c, f, ac.alpha);
        const std::string tag = alpha_tag(ac.alpha);

        Scalar vt_max = 0.0;
        int vt_at = -1;
        for (int i = 0; i < N; ++i) {
            if (!dec.in_cap(i)) continue;
            const Scalar vt = std::abs(f[i].v_tilde);
            if (std::isfinite(vt) && vt > vt_max) vt_max = vt, vt_at = i;
        }
        rep.checks.push_back(
            upper("e_vtilde_cap_" + tag, vt_max, ac.alpha * (1.0 + opts_.slack), vt_at));

        const Scalar v_boundary = ac.alpha / std::sqrt(ac.alpha * ac.alpha - 1.0);
        const Scalar v_bound = std::max({2.0 * ledger_.c1 * ledger_.R / (n - 1), v_boundary,
                                         Scalar(1.0), ac.v0_max_cyl}) *
                               (1.0 + opts_.slack);
        Scalar v_max = 0.0, u_min = infinity();
        int v_at = -1, u_at = -1;
        bool v_finite = true;
        for (int i = dec.cylinder_begin(); i < dec.cylinder_end(); ++i) {
            if (!std::isfinite(f[i].v)) v_finite = false;
            if (std::isfinite(f[i].v) && f[i].v > v_max) v_max = f[i].v, v_at = i;
            if (f[i].u < u_min) u_min = f[i].u, u_at = i;
        }
        if (dec.cylinder_empty()) {
            rep.checks.push_back({"e_v_cylinder_" + tag, true, quiet_nan(), v_bound, 0.0, -1,
                                  "cylindrical part empty"});
            rep.checks.push_back({"f_assumption_" + tag, true, quiet_nan(), ac.c_alpha, 0.0, -1,
                                  "cylindrical part empty"});
        } else {
            MonitorCheck vcheck = upper("e_v_cylinder_" + tag, v_max, v_bound, v_at);
            if (!v_finite) {
                vcheck.pass = false;
                vcheck.note = "v not finite on the cylindrical part";
            }
            rep.checks.push_back(vcheck);
            MonitorCheck fcheck = lower("f_assumption_" + tag, u_min, ac.c_alpha, u_at);
            fcheck.pass = u_min > ac.c_alpha;  // strict
            rep.checks.push_back(fcheck);
        }

        if (std::abs(ac.alpha - std::sqrt(2.0)) < 1e-9) {
            // (h) sign condition at the sqrt(2)-inclination point(s)
            CutSample right = sample_cut(f, dec.right_cap_begin - 1, dec.right_cap_begin,
                                         ac.alpha, false);
            Scalar Hcut = right.valid ? right.H : quiet_nan();
            if (c.topology == Topology::Closed && dec.left_cap_end >= 0) {
                CutSample left_cut =
                    sample_cut(f, dec.left_cap_end + 1, dec.left_cap_end, ac.alpha, true);
                if (left_cut.valid) Hcut = std::min(Hcut, left_cut.H);
            }
            MonitorCheck hc = lower("h_H_at_cut", Hcut, -opts_.tol_H_rel * Hmax_abs);
            if (!right.valid) {
                hc.pass = true;
                hc.note = "no cut available";
            }
            rep.checks.push_back(hc);
            // Boundary-value relation v|_cut = alpha/sqrt(alpha^2-1), verified at
            // the interpolated cut point.
            if (right.valid && std::isfinite(right.v)) {
                MonitorCheck vc{"e_v_cut_relation", true, right.v, v_boundary, 0.0, -1, ""};
                vc.margin = 1.0 - std::abs(right.v - v_boundary) / v_boundary;
                vc.pass = std::abs(right.v - v_boundary) <= opts_.slack * v_boundary;
                rep.checks.push_back(vc);
            }
        }
    }

    // (g) lower bound on the axial extent from the enclosed volume
    {
        const Scalar bound = ledger_.V / (unit_ball_volume(n) * std::pow(ledger_.R, n));
        const Scalar extent = (c.topology == Topology::FreeBoundary)
                                  ? c.nodes.back().x
                                  : c.nodes.back().x - c.nodes.front().x;
        rep.checks.push_back(lower("g_d_lower_bound", extent, bound));
    }
    // (i) k/p running max
    {
        Scalar ratio = -infinity();
        int at = -1;
        for (int i = 0; i < N; ++i) {
            if (f[i].p > 1e-8 && f[i].k / f[i].p > ratio) ratio = f[i].k / f[i].p, at = i;
        }
        rep.checks.push_back(
            upper("i_kp_ratio", ratio, ledger_.kp0 * (1.0 + opts_.ratio_tol), at));
    }
    // (j) |A|^2 non-divergence over the trailing window
    {
        Scalar a2max = 0.0;
        int at = -1;
        for (int i = 0; i < N; ++i)
            if (f[i].A2 > a2max) a2max = f[i].A2, at = i;
        MonitorCheck jc{"j_A2_nondivergent", true, a2max, quiet_nan(), quiet_nan(), at, ""};
        const A2Sample* reference = nullptr;
        for (const auto& s : a2_history_) {
            if (state.step_index - s.step >= opts_.a2_window_steps && s.t > opts_.t_burn)
                reference = &s;
        }
        if (reference && state.t > opts_.t_burn) {
            jc.bound = 2.0 * reference->max_a2;
            jc.pass = a2max <= jc.bound;
            jc.margin = (jc.bound - a2max) / jc.bound;
        }
        rep.checks.push_back(jc);
        a2_history_.push_back({state.step_index, state.t, a2max});
        while (a2_history_.size() > 4096) a2_history_.pop_front();
    }
    // (k) max |grad A|, recorded only (true reduction (k')^2 + 3(n-1)(p')^2)
    {
        Scalar gmax = 0.0;
        for (int i = 1; i + 1 < N; ++i) {
            const Scalar hm = dist(c.nodes[i], c.nodes[i - 1]);
            const Scalar hp = dist(c.nodes[i + 1], c.nodes[i]);
            const Scalar kp = (f[i + 1].k - f[i - 1].k) / (hm + hp);
            const Scalar pp = (f[i + 1].p - f[i - 1].p) / (hm + hp);
            gmax = std::max(gmax, std::sqrt(kp * kp + 3.0 * (n - 1) * pp * pp));
        }
        rep.checks.push_back({"k_grad_A_max", true, gmax, quiet_nan(), quiet_nan(), -1, "recorded only"});
    }

    rep.worst_margin = infinity();
    for (const auto& chk : rep.checks) {
        if (std::isfinite(chk.margin)) rep.worst_margin = std::min(rep.worst_margin, chk.margin);
        if (!chk.pass && rep.all_pass) {
            rep.all_pass = false;
            rep.first_fail_id = chk.id;
            rep.first_fail_node = chk.node;
        }
    }
    return rep;
}

PinchGuardResult pinch_guard(const FlowState& state, Scalar epsilon) {
    PinchGuardResult res;
    const int node = neck_node(state.curve, epsilon);
    if (node >= 0) {
        res.ok = false;
        res.node = node;
        res.r_min = state.curve.nodes[node].r;
    }
    return res;
}

}  // namespace vpmcf
