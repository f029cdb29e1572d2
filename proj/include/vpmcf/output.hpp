#pragma once

#include <fstream>
#include <string>

#include "vpmcf/convergence.hpp"
#include "vpmcf/flow.hpp"
#include "vpmcf/monitor.hpp"

namespace vpmcf {

// One observation row of series.csv. Column order is part of the file format:
//   t,step,area,volume,h,sup_H_minus_h,l2_H_minus_h,max_u,max_u_tilde,
//   curve_length,d,e,max_kp_ratio,max_A2,min_cyl_u_alpha_sqrt2,
//   v_tilde_max_cap_sqrt2,H_at_sqrt2_cut,shape_dev,converged
struct SeriesRow {
    Scalar t = 0;
    long step = 0;
    Scalar area = 0, volume = 0, h = 0;
    Scalar sup_H_minus_h = 0, l2_H_minus_h = 0;
    Scalar max_u = 0, max_u_tilde = 0, curve_length = 0;
    Scalar d = 0, e = 0;
    Scalar max_kp_ratio = 0, max_A2 = 0;
    Scalar min_cyl_u_alpha_sqrt2 = 0, v_tilde_max_cap_sqrt2 = 0, H_at_sqrt2_cut = 0;
    Scalar shape_dev = 0;
    bool converged = false;
};

extern const char* kSeriesHeader;

SeriesRow make_series_row(const FlowState& state, const FrameSet& f, const MonitorReport& mon,
                          const ConvergenceReport& conv);

class SeriesWriter {
  public:
    explicit SeriesWriter(const std::string& path);
    void write(const SeriesRow& row);

  private:
    std::ofstream out_;
};

class MonitorJsonlWriter {
  public:
    explicit MonitorJsonlWriter(const std::string& path);
    void write(const MonitorReport& report);

  private:
    std::ofstream out_;
};

// Static snapshot of the meridian curve: axis, plane Pi, L_alpha markers and
// the fitted limit arc.
void write_profile_svg(const std::string& path, const ProfileCurve& curve,
                       const std::vector<Decomposition>& decompositions,
                       const ConvergenceReport& conv);

void write_json_file(const std::string& path, const std::string& json_text);

std::string format_scalar(Scalar v);  // deterministic shortest round-trip formatting

}  // namespace vpmcf
