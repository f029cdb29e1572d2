#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "vpmcf/flow.hpp"
#include "vpmcf/geometry.hpp"

namespace vpmcf {

// Constants derived from the initial surface that bound the flow for all time.
//   R     : height bound, (|M0|/omega_n)^{1/n} (free boundary) or
//           (|M0|/(2 omega_n))^{1/n} (closed)
//   l     : axial-extent bound, per alpha |M0|/(n omega_n c(alpha)^{n-1}) +
//           R sqrt(alpha^2-1) (doubled sqrt term when closed); ledger keeps the min
//   c_star: generating-curve length bound, |M0|/(sigma_{n-1} c(alpha)^{n-1}) + l + R
//           (closed: + 2l + 2R); min over alpha
//   c1    : upper bound for h, (n-1) R^{n-2} (l + (pi/2) c_star) / |M|_min with
//           |M|_min the isoperimetric floor
//   kp0   : max(1, max over the initial surface of k/p)
struct AlphaConstants {
    Scalar alpha = 0.0;
    Scalar c_alpha = 0.0;      // Assumption threshold c(alpha)
    Scalar l = 0.0;
    Scalar c_star = 0.0;
    Scalar v0_max_cyl = 1.0;   // max v over the cylindrical part at t = 0
};

struct BoundLedger {
    int n = 2;
    Topology topology = Topology::FreeBoundary;
    Scalar area0 = 0.0;
    Scalar V = 0.0;
    Scalar R = 0.0;
    Scalar l = 0.0;
    Scalar c_star = 0.0;
    Scalar c1 = 0.0;
    Scalar kp0 = 1.0;
    std::vector<AlphaConstants> per_alpha;

    const AlphaConstants* find(Scalar alpha) const;
};

// Isoperimetric floor |M| >= (n+1) omega_{n+1}^{1/(n+1)} V^{n/(n+1)} for closed
// surfaces; free-boundary surfaces reflect across Pi, giving a 2^{-1/(n+1)} factor.
Scalar isoperimetric_floor(Scalar volume, int n, Topology topology);

// c_alpha_override: per-alpha Assumption 2.1 threshold; NaN (or missing) means
// the default rule: half the measured min of u on the cylindrical part at t=0.
BoundLedger ledger_from_initial(const FlowState& state0, const std::vector<Scalar>& alpha_list,
                                const std::vector<Scalar>& c_alpha_override = {});

struct MonitorOptions {
    Scalar slack = 0.05;       // relative slack on assembled bounds
    Scalar ratio_tol = 1e-3;   // slack on the k/p running-max check
    Scalar tol_h_rel = 1e-8;   // h >= -tol_h_rel * c1
    Scalar tol_H_rel = 1e-6;   // H(cut) >= -tol_H_rel * max|H|
    long a2_window_steps = 1000;
    Scalar t_burn = 0.1;
};

struct MonitorCheck {
    std::string id;
    bool pass = true;
    Scalar measured = 0.0;
    Scalar bound = 0.0;
    Scalar margin = 0.0;  // (bound - measured)/|bound| for upper bounds, mirrored for lower
    int node = -1;
    std::string note;
};

struct MonitorReport {
    Scalar t = 0.0;
    long step = 0;
    std::vector<MonitorCheck> checks;
    Scalar worst_margin = infinity();
    bool all_pass = true;
    std::string first_fail_id;
    int first_fail_node = -1;

    const MonitorCheck* find(const std::string& id) const;
};

// Evaluates the full bound suite at one observed state. Stateful only in the
// |A|^2 non-divergence window (check j).
class Monitor {
  public:
    explicit Monitor(BoundLedger ledger, MonitorOptions opts = {});

    MonitorReport check(const FlowState& state, const FrameSet& f);
    const BoundLedger& ledger() const { return ledger_; }

  private:
    BoundLedger ledger_;
    MonitorOptions opts_;
    struct A2Sample {
        long step;
        Scalar t;
        Scalar max_a2;
    };
    std::deque<A2Sample> a2_history_;
};

struct PinchGuardResult {
    bool ok = true;
    int node = -1;
    Scalar r_min = infinity();
};

PinchGuardResult pinch_guard(const FlowState& state, Scalar epsilon);

}  // namespace vpmcf
