#pragma once

#include <map>
#include <string>
#include <vector>

#include "vpmcf/curve.hpp"
#include "vpmcf/flow.hpp"
#include "vpmcf/monitor.hpp"

namespace vpmcf {

// Scenario configuration, read from a TOML file with dotted-key overrides
// (--set section.key=value). Only the TOML subset needed by scenario files is
// supported: [section] tables, scalars, and flat arrays.
struct RunConfig {
    InitialShapeSpec scenario;
    StepPolicy policy;
    Scalar horizon = 1.0;
    int observe_every = 10;
    std::vector<Scalar> alpha_list{std::sqrt(2.0), 2.0};
    std::vector<Scalar> c_alpha;  // per-alpha overrides, NaN/absent = auto
    MonitorOptions monitor;
    bool monitor_hard_fail = true;  // defaults to false in plain MCF mode
    bool monitor_hard_fail_set = false;
    ConvergenceTols convergence;
    std::string output_dir = "out";
    bool emit_svg = false;
    int svg_every = 100;
    std::uint64_t seed = 0;

    void validate_config() const;  // throws ConfigError
};

// Flat TOML value store with dotted keys ("policy.cfl_safety" -> raw token).
class TomlTable {
  public:
    static TomlTable parse_file(const std::string& path);
    static TomlTable parse_string(const std::string& text);

    void set_raw(const std::string& dotted_key, const std::string& raw_value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    Scalar get_scalar(const std::string& key, Scalar fallback) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<Scalar> get_scalar_list(const std::string& key,
                                        const std::vector<Scalar>& fallback) const;

    const std::map<std::string, std::string>& raw() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

RunConfig config_from_toml(const TomlTable& table);
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

}  // namespace vpmcf
