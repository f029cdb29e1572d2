#include "vpmcf/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "json.hpp"
#include "vpmcf/convergence.hpp"
#include "vpmcf/output.hpp"

namespace vpmcf {

namespace fs = std::filesystem;

namespace {

std::vector<Scalar> with_sqrt2(std::vector<Scalar> alphas) {
    const Scalar s2 = std::sqrt(2.0);
    for (Scalar a : alphas)
        if (std::abs(a - s2) < 1e-9) return alphas;
    alphas.insert(alphas.begin(), s2);
    return alphas;
}

std::string svg_name(long step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "profile_%08ld.svg", step);
    return buf;
}

}  // namespace

int run_scenario(const RunConfig& config) {
    config.validate_config();
    fs::create_directories(config.output_dir);
    const fs::path outdir(config.output_dir);

    auto write_diagnostic = [&](const std::string& reason, const nlohmann::json& extra) {
        nlohmann::json j;
        j["reason"] = reason;
        j["extra"] = extra;
        write_json_file((outdir / "diagnostic.json").string(), j.dump(2));
    };

    // Build and validate the initial profile.
    ProfileCurve curve;
    try {
        curve = build_profile(config.scenario);
    } catch (const Error& e) {
        write_diagnostic(e.what(), {});
        return kExitUsage;
    }
    const ValidationReport vr = validate(curve);
    if (!vr.all_pass()) {
        nlohmann::json extra;
        for (const auto& c : vr.checks)
            if (!c.pass) extra[c.name] = c.detail;
        write_diagnostic("initial profile failed validation", extra);
        return kExitUsage;
    }

    FlowState state = make_flow_state(std::move(curve));

    // Ledger and monitoring.
    const std::vector<Scalar> alphas = with_sqrt2(config.alpha_list);
    std::vector<Scalar> c_alpha = config.c_alpha;
    if (!c_alpha.empty() && alphas.size() != config.alpha_list.size())
        c_alpha.insert(c_alpha.begin(), quiet_nan());  // auto threshold for the added sqrt2
    BoundLedger ledger;
    try {
        ledger = ledger_from_initial(state, alphas, c_alpha);
    } catch (const Error& e) {
        write_diagnostic(e.what(), {});
        return kExitUsage;
    }
    Monitor monitor(ledger, config.monitor);
    const bool hard_fail = config.monitor_hard_fail_set
                               ? config.monitor_hard_fail
                               : (config.policy.mode == FlowMode::VolumePreserving);

    SeriesWriter series((outdir / "series.csv").string());
    MonitorJsonlWriter jsonl((outdir / "monitor.jsonl").string());

    MonitorReport last_monitor;
    ConvergenceReport last_conv;

    Observer observer = [&](const FlowState& s, const FrameSet& f) -> ObserverAction {
        last_monitor = monitor.check(s, f);
        const Scalar tol_cmc = resolve_tol_cmc(config.convergence, s);
        last_conv = is_converged(s, f, tol_cmc, config.convergence.tol_shape);
        series.write(make_series_row(s, f, last_monitor, last_conv));
        jsonl.write(last_monitor);
        if (config.emit_svg && (s.step_index % config.svg_every == 0)) {
            std::vector<Decomposition> decs;
            for (Scalar a : alphas) decs.push_back(decompose(s.curve, f, a));
            write_profile_svg((outdir / svg_name(s.step_index)).string(), s.curve, decs,
                              last_conv);
        }
        if (hard_fail && !last_monitor.all_pass) return ObserverAction::HardFail;
        return ObserverAction::Continue;
    };

    RunSummary summary = run(std::move(state), config.policy, config.horizon,
                             config.observe_every, config.convergence, {observer});

    // Final snapshot and summary.
    {
        const FrameSet f = frames(summary.final_state.curve);
        std::vector<Decomposition> decs;
        for (Scalar a : alphas) decs.push_back(decompose(summary.final_state.curve, f, a));
        write_profile_svg((outdir / "profile_final.svg").string(), summary.final_state.curve,
                          decs, last_conv);
    }
    nlohmann::json j;
    j["termination"] = to_string(summary.reason);
    j["steps"] = summary.final_state.step_index;
    j["t"] = summary.final_state.t;
    j["area"] = summary.final_state.area;
    j["volume"] = summary.final_state.volume;
    j["h"] = summary.final_state.h;
    j["converged"] = (summary.reason == Termination::Converged);
    j["sup_H_minus_h"] = last_conv.sup_dev_H;
    j["shape_dev"] = last_conv.shape_dev;
    j["fitted_radius"] = last_conv.fitted_radius;
    if (!summary.message.empty()) j["message"] = summary.message;
    if (summary.fail_node >= 0) j["fail_node"] = summary.fail_node;
    write_json_file((outdir / "summary.json").string(), j.dump(2));

    switch (summary.reason) {
        case Termination::Converged:
            return kExitConverged;
        case Termination::PinchDetected: {
            nlohmann::json extra;
            extra["node"] = summary.fail_node;
            extra["message"] = summary.message;
            extra["t"] = summary.final_state.t;
            write_diagnostic("pinch-detected", extra);
            return kExitPinch;
        }
        case Termination::MonitorHardFail: {
            nlohmann::json extra;
            extra["first_fail_id"] = last_monitor.first_fail_id;
            extra["first_fail_node"] = last_monitor.first_fail_node;
            extra["t"] = last_monitor.t;
            write_diagnostic("monitor-hard-fail", extra);
            return kExitMonitorFail;
        }
        case Termination::NumericsFailure: {
            nlohmann::json extra;
            extra["message"] = summary.message;
            write_diagnostic("numerics-failure", extra);
            return kExitNumerics;
        }
        case Termination::HorizonReached:
        default: {
            nlohmann::json extra;
            extra["t"] = summary.final_state.t;
            extra["sup_H_minus_h"] = last_conv.sup_dev_H;
            write_diagnostic("horizon-reached-without-convergence", extra);
            return kExitHorizon;
        }
    }
}

}  // namespace vpmcf
