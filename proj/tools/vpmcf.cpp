#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vpmcf/config.hpp"
#include "vpmcf/oracle.hpp"
#include "vpmcf/runner.hpp"

namespace {

using namespace vpmcf;

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides) {
    RunConfig cfg = load_config(config_path, overrides);
    return run_scenario(cfg);
}

int cmd_validate(const std::string& config_path, const std::vector<std::string>& overrides) {
    RunConfig cfg = load_config(config_path, overrides);
    const ProfileCurve curve = build_profile(cfg.scenario);
    const ValidationReport rep = validate(curve);
    for (const auto& c : rep.checks) {
        std::printf("%-26s %s", c.name.c_str(), c.pass ? "pass" : "FAIL");
        if (!c.pass) std::printf("  (node %d: %s)", c.node, c.detail.c_str());
        std::printf("\n");
    }
    return rep.all_pass() ? 0 : 1;
}

void print_shape_report(const ReferenceSurface& ref, int n, int node_count) {
    const FrameSet f = frames(ref.curve);
    std::printf("closed forms:   area %.6f   volume %.6f   h %.6f\n", ref.area, ref.volume,
                ref.mean_curvature_avg);
    std::printf("discrete (N=%d): area %.6f   volume %.6f   h %.6f\n", node_count,
                surface_area(ref.curve), enclosed_volume(ref.curve), mean_h(ref.curve, f));
    const Scalar kdg = k_integral_direct(ref.curve, f);
    std::printf("int k dg:       direct %.6f", kdg);
    if (ref.curve.topology == Topology::FreeBoundary &&
        std::abs(ref.curve.nodes.back().r) < 1e-12) {
        try {
            std::printf("   by-parts %.6f", k_integral_by_parts(ref.curve));
        } catch (const NotAGraphError&) {
            std::printf("   by-parts n/a (not a graph)");
        }
    }
    std::printf("\n");
    (void)n;
}

int cmd_oracle_shape(const std::string& kind, Scalar radius, Scalar length, Scalar center_x,
                     int n, int node_count) {
    ReferenceParams params;
    params.radius = radius;
    params.length = length;
    params.center_x = center_x;
    ReferenceKind rk;
    if (kind == "sphere")
        rk = ReferenceKind::Sphere;
    else if (kind == "hemisphere")
        rk = ReferenceKind::Hemisphere;
    else if (kind == "cylinder")
        rk = ReferenceKind::CylinderSegment;
    else {
        std::fprintf(stderr, "unknown shape '%s' (expected sphere|hemisphere|cylinder)\n",
                     kind.c_str());
        return 1;
    }
    print_shape_report(reference_surface(rk, params, n, node_count), n, node_count);
    return 0;
}

int cmd_oracle_refine(const std::string& config_path, const std::vector<std::string>& overrides,
                      const std::string& quantity, int base_n, int levels) {
    RunConfig cfg = load_config(config_path, overrides);
    CurveGenerator gen = [&cfg](int N) {
        InitialShapeSpec s = cfg.scenario;
        s.node_count = N;
        return build_profile(s);
    };
    CurveQuantity q;
    if (quantity == "volume")
        q = [](const ProfileCurve& c) { return enclosed_volume(c); };
    else if (quantity == "area")
        q = [](const ProfileCurve& c) { return surface_area(c); };
    else if (quantity == "h")
        q = [](const ProfileCurve& c) { return mean_h(c); };
    else if (quantity == "length")
        q = [](const ProfileCurve& c) { return total_length(c); };
    else {
        std::fprintf(stderr, "unknown quantity '%s' (expected volume|area|h|length)\n",
                     quantity.c_str());
        return 1;
    }
    const RefineReport rep = refine(q, gen, base_n, levels);
    for (std::size_t l = 0; l < rep.values.size(); ++l)
        std::printf("N = %6d   value %.12g\n", base_n << l, rep.values[l]);
    if (rep.exact)
        std::printf("extrapolated %.12g   observed order exact\n", rep.extrapolated);
    else
        std::printf("extrapolated %.12g   observed order %.2f\n", rep.extrapolated,
                    rep.observed_order);
    if (!rep.converging && !rep.exact) {
        std::fprintf(stderr, "warning: quantity is not converging at second order\n");
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"axisymmetric volume-preserving mean curvature flow simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;

    auto* run_cmd = app.add_subcommand("run", "run a scenario from a TOML config");
    run_cmd->add_option("--config", config_path, "scenario file")->required();
    run_cmd->add_option("--set", overrides, "override config keys (section.key=value)");

    auto* val_cmd = app.add_subcommand("validate", "validate the initial profile of a scenario");
    val_cmd->add_option("--config", config_path, "scenario file")->required();
    val_cmd->add_option("--set", overrides, "override config keys");

    auto* oracle_cmd = app.add_subcommand("oracle", "closed-form and refined reference values");
    std::string shape;
    double radius = 1.0, length = 2.0, center_x = 2.0;
    int n = 2, node_count = 400;
    oracle_cmd->add_option("shape", shape, "sphere|hemisphere|cylinder|refine")->required();
    oracle_cmd->add_option("--radius", radius, "radius");
    oracle_cmd->add_option("--length", length, "cylinder length");
    oracle_cmd->add_option("--center-x", center_x, "sphere center");
    oracle_cmd->add_option("--n", n, "hypersurface dimension");
    oracle_cmd->add_option("--N", node_count, "node count");
    std::string quantity = "volume";
    int levels = 3;
    oracle_cmd->add_option("--config", config_path, "scenario file (refine mode)");
    oracle_cmd->add_option("--set", overrides, "override config keys (refine mode)");
    oracle_cmd->add_option("--quantity", quantity, "volume|area|h|length (refine mode)");
    oracle_cmd->add_option("--levels", levels, "refinement levels (refine mode)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(config_path, overrides);
        if (val_cmd->parsed()) return cmd_validate(config_path, overrides);
        if (oracle_cmd->parsed()) {
            if (shape == "refine") {
                if (config_path.empty()) {
                    std::fprintf(stderr, "oracle refine requires --config\n");
                    return 1;
                }
                return cmd_oracle_refine(config_path, overrides, quantity, node_count, levels);
            }
            return cmd_oracle_shape(shape, radius, length, center_x, n, node_count);
        }
    } catch (const vpmcf::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return 1;
}
