#include "vpmcf/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace vpmcf {

const char* kSeriesHeader =
    "t,step,area,volume,h,sup_H_minus_h,l2_H_minus_h,max_u,max_u_tilde,curve_length,d,e,"
    "max_kp_ratio,max_A2,min_cyl_u_alpha_sqrt2,v_tilde_max_cap_sqrt2,H_at_sqrt2_cut,shape_dev,"
    "converged";

std::string format_scalar(Scalar v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SeriesRow make_series_row(const FlowState& state, const FrameSet& f, const MonitorReport& mon,
                          const ConvergenceReport& conv) {
    SeriesRow row;
    row.t = state.t;
    row.step = state.step_index;
    row.area = state.area;
    row.volume = state.volume;
    row.h = state.h;
    row.sup_H_minus_h = conv.sup_dev_H;
    row.l2_H_minus_h = conv.l2_dev_H;
    const ProfileCurve& c = state.curve;
    for (const auto& p : c.nodes) {
        row.max_u = std::max(row.max_u, p.r);
        row.max_u_tilde = std::max(row.max_u_tilde, p.x);
    }
    row.curve_length = total_length(c);
    row.d = c.nodes.back().x;
    row.e = c.nodes.front().x;
    auto measured = [&](const char* id, Scalar fallback) {
        const MonitorCheck* chk = mon.find(id);
        return chk ? chk->measured : fallback;
    };
    row.max_kp_ratio = measured("i_kp_ratio", quiet_nan());
    row.max_A2 = measured("j_A2_nondivergent", quiet_nan());
    row.min_cyl_u_alpha_sqrt2 = measured("f_assumption_sqrt2", quiet_nan());
    row.v_tilde_max_cap_sqrt2 = measured("e_vtilde_cap_sqrt2", quiet_nan());
    row.H_at_sqrt2_cut = measured("h_H_at_cut", quiet_nan());
    row.shape_dev = conv.shape_dev;
    row.converged = conv.converged;
    (void)f;
    return row;
}

SeriesWriter::SeriesWriter(const std::string& path) : out_(path) {
    if (!out_) throw Error("cannot open '" + path + "' for writing");
    out_ << kSeriesHeader << "\n";
}

void SeriesWriter::write(const SeriesRow& r) {
    out_ << format_scalar(r.t) << ',' << r.step << ',' << format_scalar(r.area) << ','
         << format_scalar(r.volume) << ',' << format_scalar(r.h) << ','
         << format_scalar(r.sup_H_minus_h) << ',' << format_scalar(r.l2_H_minus_h) << ','
         << format_scalar(r.max_u) << ',' << format_scalar(r.max_u_tilde) << ','
         << format_scalar(r.curve_length) << ',' << format_scalar(r.d) << ','
         << format_scalar(r.e) << ',' << format_scalar(r.max_kp_ratio) << ','
         << format_scalar(r.max_A2) << ',' << format_scalar(r.min_cyl_u_alpha_sqrt2) << ','
         << format_scalar(r.v_tilde_max_cap_sqrt2) << ',' << format_scalar(r.H_at_sqrt2_cut)
         << ',' << format_scalar(r.shape_dev) << ',' << (r.converged ? 1 : 0) << "\n";
    out_.flush();
}

MonitorJsonlWriter::MonitorJsonlWriter(const std::string& path) : out_(path) {
    if (!out_) throw Error("cannot open '" + path + "' for writing");
}

namespace {

nlohmann::json finite_or_null(Scalar v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

void MonitorJsonlWriter::write(const MonitorReport& rep) {
    nlohmann::json j;
    j["t"] = rep.t;
    j["step"] = rep.step;
    j["all_pass"] = rep.all_pass;
    j["worst_margin"] = finite_or_null(rep.worst_margin);
    if (!rep.all_pass) {
        j["first_fail_id"] = rep.first_fail_id;
        j["first_fail_node"] = rep.first_fail_node;
    }
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks) {
        nlohmann::json cj;
        cj["id"] = c.id;
        cj["pass"] = c.pass;
        cj["measured"] = finite_or_null(c.measured);
        cj["bound"] = finite_or_null(c.bound);
        cj["margin"] = finite_or_null(c.margin);
        if (c.node >= 0) cj["node"] = c.node;
        if (!c.note.empty()) cj["note"] = c.note;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    out_ << j.dump() << "\n";
    out_.flush();
}

void write_profile_svg(const std::string& path, const ProfileCurve& curve,
                       const std::vector<Decomposition>& decompositions,
                       const ConvergenceReport& conv) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");

    Scalar xmin = 0.0, xmax = 0.0, rmax = 0.0;
    for (const auto& p : curve.nodes) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        rmax = std::max(rmax, p.r);
    }
    xmax = std::max(xmax, conv.fitted_center_x + conv.fitted_radius);
    rmax = std::max(rmax, conv.fitted_radius);
    const Scalar pad = 0.1 * std::max(xmax - xmin, rmax);
    const Scalar x0 = xmin - pad, x1 = xmax + pad, r1 = rmax + pad;
    const Scalar w = 640.0;
    const Scalar scale = w / (x1 - x0);
    const Scalar hgt = (r1 + pad) * scale;
    auto X = [&](Scalar x) { return (x - x0) * scale; };
    auto Y = [&](Scalar r) { return hgt - (r + pad * 0.5) * scale; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << hgt
        << "\" viewBox=\"0 0 " << w << " " << hgt << "\">\n";
    out << "  <line x1=\"" << X(x0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(x1) << "\" y2=\""
        << Y(0) << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";  // axis of rotation
    out << "  <line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(0) << "\" y2=\""
        << Y(r1) << "\" stroke=\"#888\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";  // Pi

    // Fitted limit arc.
    out << "  <circle cx=\"" << X(conv.fitted_center_x) << "\" cy=\"" << Y(0) << "\" r=\""
        << conv.fitted_radius * scale
        << "\" fill=\"none\" stroke=\"#2a9d8f\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";

    for (const auto& dec : decompositions) {
        out << "  <line x1=\"" << X(dec.L_right_x) << "\" y1=\"" << Y(0) << "\" x2=\""
            << X(dec.L_right_x) << "\" y2=\"" << Y(r1)
            << "\" stroke=\"#e76f51\" stroke-width=\"0.8\" stroke-dasharray=\"2 3\"/>\n";
        if (std::isfinite(dec.L_left_x))
            out << "  <line x1=\"" << X(dec.L_left_x) << "\" y1=\"" << Y(0) << "\" x2=\""
                << X(dec.L_left_x) << "\" y2=\"" << Y(r1)
                << "\" stroke=\"#e76f51\" stroke-width=\"0.8\" stroke-dasharray=\"2 3\"/>\n";
    }

    out << "  <polyline fill=\"none\" stroke=\"#264653\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : curve.nodes) out << X(p.x) << ',' << Y(p.r) << ' ';
    out << "\"/>\n</svg>\n";
}

void write_json_file(const std::string& path, const std::string& json_text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << json_text << "\n";
}

}  // namespace vpmcf
