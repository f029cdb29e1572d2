#include "vpmcf/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace vpmcf {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// Strips a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

std::string unquote(const std::string& raw) {
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"')
        return raw.substr(1, raw.size() - 2);
    return raw;
}

}  // namespace

TomlTable TomlTable::parse_string(const std::string& text) {
    TomlTable t;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed table header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty table name");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (!section.empty()) key = section + "." + key;
        t.values_[key] = value;
    }
    return t;
}

TomlTable TomlTable::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

void TomlTable::set_raw(const std::string& dotted_key, const std::string& raw_value) {
    values_[dotted_key] = trim(raw_value);
}

bool TomlTable::has(const std::string& key) const { return values_.count(key) > 0; }

std::string TomlTable::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : unquote(it->second);
}

Scalar TomlTable::get_scalar(const std::string& key, Scalar fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    char* end = nullptr;
    const Scalar v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || !trim(end).empty())
        throw ConfigError("key '" + key + "': not a number: " + it->second);
    return v;
}

long TomlTable::get_int(const std::string& key, long fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    char* end = nullptr;
    const long v = std::strtol(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || !trim(end).empty())
        throw ConfigError("key '" + key + "': not an integer: " + it->second);
    return v;
}

bool TomlTable::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw ConfigError("key '" + key + "': not a boolean: " + it->second);
}

std::vector<Scalar> TomlTable::get_scalar_list(const std::string& key,
                                               const std::vector<Scalar>& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::string raw = trim(it->second);
    if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']')
        throw ConfigError("key '" + key + "': expected an array");
    raw = raw.substr(1, raw.size() - 2);
    std::vector<Scalar> out;
    std::istringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        char* end = nullptr;
        const Scalar v = std::strtod(item.c_str(), &end);
        if (end == item.c_str()) throw ConfigError("key '" + key + "': bad array element");
        out.push_back(v);
    }
    return out;
}

namespace {

ShapeKind parse_kind(const std::string& s) {
    if (s == "hemisphere") return ShapeKind::Hemisphere;
    if (s == "sphere") return ShapeKind::Sphere;
    if (s == "perturbed_hemisphere") return ShapeKind::PerturbedHemisphere;
    if (s == "perturbed_sphere") return ShapeKind::PerturbedSphere;
    if (s == "cosine_bump_cylinder") return ShapeKind::CosineBumpCylinder;
    if (s == "dumbbell") return ShapeKind::Dumbbell;
    throw ConfigError("unknown scenario kind '" + s + "'");
}

}  // namespace

RunConfig config_from_toml(const TomlTable& t) {
    RunConfig cfg;
    cfg.scenario.kind = parse_kind(t.get_string("scenario.kind", "hemisphere"));
    cfg.scenario.radius = t.get_scalar("scenario.radius", cfg.scenario.radius);
    cfg.scenario.center_x = t.get_scalar("scenario.center_x", cfg.scenario.center_x);
    cfg.scenario.amplitude = t.get_scalar("scenario.amplitude", cfg.scenario.amplitude);
    cfg.scenario.mode_count = static_cast<int>(t.get_int("scenario.mode_count", cfg.scenario.mode_count));
    cfg.scenario.base_radius = t.get_scalar("scenario.base_radius", cfg.scenario.base_radius);
    cfg.scenario.length = t.get_scalar("scenario.length", cfg.scenario.length);
    cfg.scenario.bulb_radius = t.get_scalar("scenario.bulb_radius", cfg.scenario.bulb_radius);
    cfg.scenario.neck_radius = t.get_scalar("scenario.neck_radius", cfg.scenario.neck_radius);
    cfg.scenario.n = static_cast<int>(t.get_int("scenario.n", cfg.scenario.n));
    cfg.scenario.node_count = static_cast<int>(t.get_int("scenario.N", cfg.scenario.node_count));
    cfg.scenario.phase_from_seed = t.get_bool("scenario.phase_from_seed", false);

    cfg.policy.cfl_safety = t.get_scalar("policy.cfl_safety", cfg.policy.cfl_safety);
    cfg.policy.dt_max = t.get_scalar("policy.dt_max", cfg.policy.dt_max);
    cfg.policy.redistribution_period =
        static_cast<int>(t.get_int("policy.redistribution_period", cfg.policy.redistribution_period));
    cfg.policy.volume_projection = t.get_bool("policy.volume_projection", cfg.policy.volume_projection);
    cfg.policy.pinch_epsilon_rel = t.get_scalar("policy.pinch_epsilon_rel", cfg.policy.pinch_epsilon_rel);
    const std::string mode = t.get_string("policy.mode", "volume_preserving");
    if (mode == "volume_preserving")
        cfg.policy.mode = FlowMode::VolumePreserving;
    else if (mode == "plain_mcf")
        cfg.policy.mode = FlowMode::PlainMcf;
    else
        throw ConfigError("unknown policy mode '" + mode + "'");

    cfg.horizon = t.get_scalar("run.horizon", cfg.horizon);
    cfg.observe_every = static_cast<int>(t.get_int("run.observe_every", cfg.observe_every));
    cfg.seed = static_cast<std::uint64_t>(t.get_int("run.seed", 0));
    cfg.scenario.seed = cfg.seed;
    cfg.output_dir = t.get_string("run.output_dir", cfg.output_dir);
    cfg.emit_svg = t.get_bool("run.emit_svg", cfg.emit_svg);
    cfg.svg_every = static_cast<int>(t.get_int("run.svg_every", cfg.svg_every));

    cfg.alpha_list = t.get_scalar_list("monitor.alpha_list", cfg.alpha_list);
    cfg.c_alpha = t.get_scalar_list("monitor.c_alpha", cfg.c_alpha);
    cfg.monitor.slack = t.get_scalar("monitor.slack", cfg.monitor.slack);
    cfg.monitor.ratio_tol = t.get_scalar("monitor.ratio_tol", cfg.monitor.ratio_tol);
    cfg.monitor.tol_h_rel = t.get_scalar("monitor.tol_h_rel", cfg.monitor.tol_h_rel);
    cfg.monitor.tol_H_rel = t.get_scalar("monitor.tol_H_rel", cfg.monitor.tol_H_rel);
    cfg.monitor.a2_window_steps = t.get_int("monitor.a2_window_steps", cfg.monitor.a2_window_steps);
    cfg.monitor.t_burn = t.get_scalar("monitor.t_burn", cfg.monitor.t_burn);
    cfg.monitor_hard_fail_set = t.has("monitor.hard_fail");
    cfg.monitor_hard_fail = t.get_bool("monitor.hard_fail", true);

    cfg.convergence.tol_cmc_abs = t.get_scalar("convergence.tol_cmc", cfg.convergence.tol_cmc_abs);
    cfg.convergence.tol_cmc_factor =
        t.get_scalar("convergence.tol_cmc_factor", cfg.convergence.tol_cmc_factor);
    cfg.convergence.tol_shape = t.get_scalar("convergence.tol_shape", cfg.convergence.tol_shape);

    if (const char* env = std::getenv("VPMCF_OUTPUT_DIR"); env && *env) cfg.output_dir = env;
    return cfg;
}

void RunConfig::validate_config() const {
    if (!(horizon > 0.0)) throw ConfigError("run.horizon must be positive");
    if (observe_every < 1) throw ConfigError("run.observe_every must be at least 1");
    if (!(policy.cfl_safety > 0.0 && policy.cfl_safety <= 1.0))
        throw ConfigError("policy.cfl_safety must lie in (0, 1]");
    if (policy.redistribution_period < 0)
        throw ConfigError("policy.redistribution_period must be non-negative");
    if (!(policy.dt_max > 0.0)) throw ConfigError("policy.dt_max must be positive");
    for (Scalar a : alpha_list)
        if (!(a > 1.0)) throw ConfigError("monitor.alpha_list entries must exceed 1");
    if (!c_alpha.empty() && c_alpha.size() != alpha_list.size())
        throw ConfigError("monitor.c_alpha must match monitor.alpha_list in length");
    if (svg_every < 1) throw ConfigError("run.svg_every must be at least 1");
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    TomlTable t = TomlTable::parse_file(path);
    for (const std::string& ov : overrides) {
        const std::size_t eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + ov + "'");
        t.set_raw(trim(ov.substr(0, eq)), ov.substr(eq + 1));
    }
    RunConfig cfg = config_from_toml(t);
    cfg.validate_config();
    return cfg;
}

}  // namespace vpmcf
