#pragma once

#include <string>

#include "vpmcf/config.hpp"

namespace vpmcf {

// Exit codes of `vpmcf run`:
//   0 converged, 1 usage/config error, 2 pinch detected, 3 monitor hard fail,
//   4 horizon reached without convergence, 5 numerical failure.
enum ExitCode {
    kExitConverged = 0,
    kExitUsage = 1,
    kExitPinch = 2,
    kExitMonitorFail = 3,
    kExitHorizon = 4,
    kExitNumerics = 5,
};

int run_scenario(const RunConfig& config);

}  // namespace vpmcf
