#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fcl/errors.hpp"
#include "fcl/experiments.hpp"
#include "json.hpp"

namespace fcl {

/// One scenario as written in a run configuration.
struct ScenarioConfig {
    std::string name;
    int L = 100;
    std::string model = "tb";          // tb | lr
    std::optional<double> alpha;       // required for lr
    std::string boundary = "open";     // open | periodic
    std::string state = "neel";
    std::optional<int> N;
    std::optional<std::uint64_t> seed; // falls back to RunConfig::seed
    std::optional<double> tmax;        // defaults to 4L
    double dt = 0.25;
    bool allow_odd_L = false;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Declarative description of a batch of scenarios and the run-wide knobs.
struct RunConfig {
    std::vector<ScenarioConfig> scenarios;
    std::string out = "results";
    std::uint64_t seed = 0;
    int quadrature_points = 8192;
    bool quasiparticle = false;
    bool verify = false;
    double c = kDefaultEntanglingRate;
    std::string profile_method = "direct";  // direct | pure

    bool operator==(const RunConfig&) const = default;
};

namespace config_detail {

using nlohmann::json;

inline void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where, "expected a JSON object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ValidationError(where + "." + key, "unknown field");
}

template <class T>
void read_field(const json& j, const char* key, T& dst, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(where + "." + key, e.what());
    }
}

template <class T>
void read_optional(const json& j, const char* key, std::optional<T>& dst, const std::string& where) {
    if (!j.contains(key) || j.at(key).is_null()) return;
    T v{};
    read_field(j, key, v, where);
    dst = v;
}

}  // namespace config_detail

inline nlohmann::json to_json(const ScenarioConfig& s) {
    nlohmann::json j{{"name", s.name}, {"L", s.L}, {"model", s.model}, {"boundary", s.boundary}, {"state", s.state},
                     {"dt", s.dt}, {"allow_odd_L", s.allow_odd_L}};
    if (s.alpha) j["alpha"] = *s.alpha;
    if (s.N) j["N"] = *s.N;
    if (s.seed) j["seed"] = *s.seed;
    if (s.tmax) j["tmax"] = *s.tmax;
    return j;
}

inline nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json scenarios = nlohmann::json::array();
    for (const auto& s : c.scenarios) scenarios.push_back(to_json(s));
    return {{"scenarios", scenarios},
            {"out", c.out},
            {"seed", c.seed},
            {"quadrature_points", c.quadrature_points},
            {"quasiparticle", c.quasiparticle},
            {"verify", c.verify},
            {"c", c.c},
            {"profile_method", c.profile_method}};
}

inline ScenarioConfig scenario_config_from_json(const nlohmann::json& j, const std::string& where) {
    using namespace config_detail;
    reject_unknown(j, {"name", "L", "model", "alpha", "boundary", "state", "N", "seed", "tmax", "dt", "allow_odd_L"}, where);
    ScenarioConfig s;
    read_field(j, "name", s.name, where);
    read_field(j, "L", s.L, where);
    read_field(j, "model", s.model, where);
    read_optional(j, "alpha", s.alpha, where);
    read_field(j, "boundary", s.boundary, where);
    read_field(j, "state", s.state, where);
    read_optional(j, "N", s.N, where);
    read_optional(j, "seed", s.seed, where);
    read_optional(j, "tmax", s.tmax, where);
    read_field(j, "dt", s.dt, where);
    read_field(j, "allow_odd_L", s.allow_odd_L, where);
    return s;
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
    using namespace config_detail;
    reject_unknown(j, {"scenarios", "out", "seed", "quadrature_points", "quasiparticle", "verify", "c", "profile_method"},
                   "config");
    RunConfig c;
    if (j.contains("scenarios")) {
        const auto& arr = j.at("scenarios");
        if (!arr.is_array()) throw ValidationError("config.scenarios", "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i)
            c.scenarios.push_back(scenario_config_from_json(arr[i], "config.scenarios[" + std::to_string(i) + "]"));
    }
    read_field(j, "out", c.out, "config");
    read_field(j, "seed", c.seed, "config");
    read_field(j, "quadrature_points", c.quadrature_points, "config");
    read_field(j, "quasiparticle", c.quasiparticle, "config");
    read_field(j, "verify", c.verify, "config");
    read_field(j, "c", c.c, "config");
    read_field(j, "profile_method", c.profile_method, "config");
    return c;
}

/// Parses a config file; JSON syntax errors carry the parser's line/column.
inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path, "cannot open config file");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path, e.what());
    }
    return run_config_from_json(j);
}

inline ProfileMethod parse_profile_method(const std::string& s) {
    if (s == "direct") return ProfileMethod::Direct;
    if (s == "pure") return ProfileMethod::PureComplement;
    throw ValidationError("profile_method", "expected direct|pure, got '" + s + "'");
}

inline Boundary parse_boundary(const std::string& s) {
    if (s == "open") return Boundary::Open;
    if (s == "periodic") return Boundary::Periodic;
    throw ValidationError("boundary", "expected open|periodic, got '" + s + "'");
}

inline ModelSpec to_model_spec(const ScenarioConfig& s) {
    ModelSpec m;
    m.L = s.L;
    m.boundary = parse_boundary(s.boundary);
    m.N = s.N;
    m.allow_odd_L = s.allow_odd_L;
    if (s.model == "tb") {
        m.hopping = NearestNeighbor{};
    } else if (s.model == "lr") {
        if (!s.alpha) throw ValidationError("alpha", "long-range model requires alpha");
        m.hopping = PowerLaw{*s.alpha};
    } else {
        throw ValidationError("model", "expected tb|lr, got '" + s.model + "'");
    }
    m.validate();
    return m;
}

inline Scenario to_scenario(const ScenarioConfig& s, const RunConfig& run) {
    Scenario scn;
    scn.model = to_model_spec(s);
    scn.state = StateSpec::parse(s.state, s.seed.value_or(run.seed));
    scn.t_grid = uniform_time_grid(s.tmax.value_or(4.0 * s.L), s.dt);
    scn.quasiparticle_overlay = run.quasiparticle;
    scn.c = run.c;
    scn.quadrature_points = run.quadrature_points;
    scn.method = parse_profile_method(run.profile_method);
    scn.validate();
    return scn;
}

}  // namespace fcl
