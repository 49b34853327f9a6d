#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fcl/fcl.hpp"
#include "json.hpp"

namespace fcl::cli {

namespace fs = std::filesystem;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kVerifyBreach = 1, kConfigError = 2, kNumericalError = 3 };

/// Runs a command body and maps library errors to exit codes.
template <class Fn>
int guarded(Fn&& fn, std::ostream& err = std::cerr) {
    try {
        return fn();
    } catch (const ValidationError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ResourceError& e) {
        err << "resource guard: " << e.what() << '\n';
        return kConfigError;
    } catch (const NumericalHealthError& e) {
        err << "numerical health failure: " << e.what() << '\n';
        return kNumericalError;
    } catch (const json::exception& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }
}

inline json software_info() {
    return {{"name", "fcl"},
            {"version", kVersion},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"compiler", __VERSION__}};
}

inline json model_json(const ModelSpec& m) {
    json j{{"L", m.L}, {"N", m.particles()}, {"boundary", to_string(m.boundary)}};
    if (is_nearest_neighbor(m.hopping)) {
        j["model"] = "tb";
        j["alpha"] = nullptr;
    } else {
        j["model"] = "lr";
        j["alpha"] = std::get<PowerLaw>(m.hopping).alpha;
    }
    return j;
}

inline void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

/// Writes gec.csv, entropy_profile.csv and, for random families, the
/// per-realization series and envelope.
inline std::vector<std::string> write_scenario_outputs(const ScenarioResult& res, const fs::path& dir) {
    std::vector<std::string> files = {"gec.csv", "entropy_profile.csv"};
    {
        csv::Writer w((dir / "gec.csv").string(), "t,E_g,E_g_upper,E_g_qp");
        for (const auto& r : res.records) w.row(r.t, r.E_g, r.E_g_upper, r.E_g_qp);
    }
    {
        csv::Writer w((dir / "entropy_profile.csv").string(), "t,ell,S_nats");
        for (const auto& r : res.records)
            for (int ell = 1; ell <= res.scenario.model.L - 1; ++ell) w.row(r.t, ell, r.profile.at(ell));
    }
    if (res.scenario.state.is_random()) {
        csv::Writer w((dir / "gec_realizations.csv").string(), "realization,t,E_g");
        for (std::size_t k = 0; k < res.realization_gec.size(); ++k)
            for (std::size_t i = 0; i < res.records.size(); ++i)
                w.row(static_cast<int>(k), res.records[i].t, res.realization_gec[k][i]);
        csv::Writer e((dir / "gec_envelope.csv").string(), "t,E_g_mean,E_g_min,E_g_max");
        for (std::size_t i = 0; i < res.records.size(); ++i)
            e.row(res.records[i].t, res.records[i].E_g, res.gec_min[i], res.gec_max[i]);
        files.push_back("gec_realizations.csv");
        files.push_back("gec_envelope.csv");
    }
    return files;
}

inline int simulate(const RunConfig& cfg, std::ostream& log = std::cout) {
    if (cfg.scenarios.empty()) throw ValidationError("config.scenarios", "no scenarios to run");
    std::vector<Scenario> scenarios;
    for (std::size_t i = 0; i < cfg.scenarios.size(); ++i) scenarios.push_back(to_scenario(cfg.scenarios[i], cfg));

    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const auto& sc = cfg.scenarios[i];
        fs::path dir = cfg.out;
        if (scenarios.size() > 1) dir /= sc.name.empty() ? "scenario_" + std::to_string(i) : sc.name;
        fs::create_directories(dir);

        const auto start = std::chrono::steady_clock::now();
        const ScenarioResult res = run_scenario(scenarios[i]);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        auto files = write_scenario_outputs(res, dir);
        files.push_back("manifest.json");
        json states = json::array();
        for (const auto& st : res.states) states.push_back(st.bits());
        const auto& t = scenarios[i].t_grid;
        json manifest{{"command", "simulate"},
                      {"scenario", sc.name},
                      {"model", model_json(scenarios[i].model)},
                      {"boundary", to_string(scenarios[i].model.boundary)},
                      {"state", {{"spec", scenarios[i].state.name()}, {"realizations", states}}},
                      {"seed", scenarios[i].state.seed},
                      {"c", scenarios[i].c},
                      {"quadrature_points", scenarios[i].quadrature_points},
                      {"quasiparticle_overlay", scenarios[i].quasiparticle_overlay},
                      {"profile_method", cfg.profile_method},
                      {"t_grid", {{"t_min", t.front()}, {"t_max", t.back()}, {"dt", sc.dt}, {"points", t.size()}}},
                      {"upper_bound", {{"form", "c*(L-1)*t"}, {"saturation", "caps at t = 4^L (symbolic)"}}},
                      {"versions", software_info()},
                      {"timings", {{"wall_seconds", wall}, {"threads", worker_count()}}},
                      {"outputs", files}};
        write_json(dir / "manifest.json", manifest);
        log << "wrote " << dir.string() << " (" << t.size() << " times, " << wall << " s)\n";
    }
    return kOk;
}

/// Quasiparticle predictions on the same grid a paired `simulate` run would use.
inline int quasiparticle(const ScenarioConfig& sc, const RunConfig& cfg, std::optional<int> only_ell,
                         std::ostream& log = std::cout) {
    if (sc.model != "tb")
        throw ValidationError("model", "the quasiparticle picture does not apply to long-range hopping; use --model tb");
    const ModelSpec model = to_model_spec(sc);
    const StateSpec spec = StateSpec::parse(sc.state, sc.seed.value_or(cfg.seed));
    const ProductState st = generate_state(spec, model.L, model.particles());
    const QuasiparticleModel qp(product_state_quasiparticle_input(st, model.boundary, cfg.quadrature_points));
    const auto ts = uniform_time_grid(sc.tmax.value_or(4.0 * sc.L), sc.dt);
    const int L = model.L;
    if (only_ell && (*only_ell < 1 || *only_ell > L - 1)) throw ValidationError("ell", "cut outside [1, L-1]");

    fs::create_directories(cfg.out);
    {
        csv::Writer w((fs::path(cfg.out) / "qp_entropy.csv").string(), "t,ell,S_scaling_nats,S_finite_nats");
        for (double t : ts) {
            for (int ell = 1; ell <= L - 1; ++ell) {
                if (only_ell && ell != *only_ell) continue;
                w.row(t, ell, qp.entropy_scaling(std::min(ell, L - ell), t), qp.entropy_finite_size(ell, t));
            }
        }
    }
    {
        csv::Writer w((fs::path(cfg.out) / "qp_gec.csv").string(), "t,E_g_qp,E_g_qp_scaling");
        for (double t : ts) w.row(t, qp.gec_prediction(t), qp.gec_prediction_scaling(t));
    }
    write_json(fs::path(cfg.out) / "manifest.json",
               json{{"command", "quasiparticle"},
                    {"model", model_json(model)},
                    {"boundary", to_string(model.boundary)},
                    {"state", {{"spec", spec.name()}, {"bits", st.bits()}}},
                    {"seed", spec.seed},
                    {"quadrature_points", cfg.quadrature_points},
                    {"t_grid", {{"t_min", ts.front()}, {"t_max", ts.back()}, {"dt", sc.dt}, {"points", ts.size()}}},
                    {"versions", software_info()},
                    {"outputs", {"qp_entropy.csv", "qp_gec.csv", "manifest.json"}}});
    log << "wrote quasiparticle predictions to " << cfg.out << '\n';
    return kOk;
}

inline constexpr double kOracleTolerance = 1e-9;

inline int verify(int max_L, bool inject_fault, std::ostream& log = std::cout) {
    if (max_L > fock::kMaxSites)
        throw ResourceError("verify supports max_L <= 14", 1LL << std::min(max_L, 62));
    if (max_L < 4) throw ValidationError("max-L", "need max_L >= 4");
    OracleSuite suite = OracleSuite::up_to(max_L);
    if (inject_fault) suite.fault_time_scale = 1.001;
    const OracleReport rep = verify_against_oracle(suite);
    log << "checks: " << rep.checks.size() << '\n';
    log << "max |S_gaussian - S_oracle| = " << csv::number(rep.max_deviation) << '\n';
    if (rep.max_deviation > kOracleTolerance) {
        const auto& w = rep.worst;
        log << "FAIL at L=" << w.L << " model=" << w.model << " state=" << w.state << " t=" << csv::number(w.t)
            << " ell=" << w.ell << " gaussian=" << csv::number(w.gaussian) << " oracle=" << csv::number(w.oracle) << '\n';
        return kVerifyBreach;
    }
    log << "PASS (tolerance " << csv::number(kOracleTolerance) << ")\n";
    return kOk;
}

inline std::optional<json> read_manifest(const fs::path& dir) {
    const fs::path p = dir / "manifest.json";
    if (!fs::exists(p)) return std::nullopt;
    std::ifstream in(p);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(p.string(), e.what());
    }
}

inline ModelSpec model_from_manifest(const json& m) {
    const auto& model = m.at("model");
    ModelSpec spec;
    spec.L = model.at("L").get<int>();
    spec.N = model.at("N").get<int>();
    spec.allow_odd_L = true;
    spec.boundary = parse_boundary(model.at("boundary").get<std::string>());
    if (model.at("model").get<std::string>() == "lr") spec.hopping = PowerLaw{model.at("alpha").get<double>()};
    return spec;
}

struct FitOptions {
    std::string input;
    std::string column = "E_g";
    std::optional<int> ell;  // when fitting entropy_profile.csv
    std::optional<double> t_min;
    std::optional<double> t_max;
    std::string out = ".";
};

/// Reads a (t, value) series from gec.csv or, with `ell`, from entropy_profile.csv.
inline std::pair<std::vector<double>, std::vector<double>> read_series(const FitOptions& o) {
    const csv::Table tab = csv::read(o.input);
    const int tc = tab.require_column("t", o.input);
    std::vector<double> ts, ys;
    if (o.ell) {
        const int lc = tab.require_column("ell", o.input);
        const int sc = tab.require_column("S_nats", o.input);
        for (const auto& r : tab.rows)
            if (r[lc] && static_cast<int>(*r[lc]) == *o.ell) {
                ts.push_back(r[tc].value());
                ys.push_back(r[sc].value_or(0.0));
            }
    } else {
        const int vc = tab.require_column(o.column, o.input);
        for (std::size_t i = 0; i < tab.rows.size(); ++i) {
            if (!tab.rows[i][tc]) throw ValidationError(o.input, "row " + std::to_string(i + 1) + " has no time");
            ts.push_back(*tab.rows[i][tc]);
            ys.push_back(tab.rows[i][vc].value_or(0.0));
        }
    }
    if (ts.empty()) throw ValidationError(o.input, "no data rows");
    return {ts, ys};
}

inline int fit(const FitOptions& o, std::ostream& log = std::cout) {
    const auto [ts, ys] = read_series(o);
    double lo, hi;
    if (o.t_min && o.t_max) {
        lo = *o.t_min;
        hi = *o.t_max;
    } else {
        const auto manifest = read_manifest(fs::path(o.input).parent_path());
        if (!manifest) throw ValidationError("window", "pass --t-min and --t-max or keep manifest.json beside the input");
        const auto [dlo, dhi] = default_fit_window(model_from_manifest(*manifest), ts, ys);
        lo = o.t_min.value_or(dlo);
        hi = o.t_max.value_or(dhi);
    }
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (ts[i] >= lo && ts[i] <= hi && !(ys[i] > 0.0))
            throw ValidationError("window", "row " + std::to_string(i + 1) + " (t=" + csv::number(ts[i]) +
                                                ") has nonpositive value inside the fit window");
    const FitResult f = fit_growth_exponent(ts, ys, lo, hi);
    fs::create_directories(o.out);
    write_json(fs::path(o.out) / "fit.json", json{{"gamma", f.gamma},
                                                  {"intercept", f.intercept},
                                                  {"t_min", f.t_min},
                                                  {"t_max", f.t_max},
                                                  {"r_squared", f.r_squared}});
    log << "gamma = " << csv::number(f.gamma) << " over [" << csv::number(lo) << ", " << csv::number(hi)
        << "], r^2 = " << csv::number(f.r_squared) << '\n';
    return kOk;
}

struct CollapseOptions {
    std::vector<std::string> inputs;  // run directories holding gec.csv + manifest.json
    double t_over_L_max = 0.5;
    std::string out = ".";
};

inline int collapse(const CollapseOptions& o, std::ostream& log = std::cout) {
    if (o.inputs.empty()) throw ValidationError("inputs", "no run directories supplied");
    std::vector<CollapseSeries> series;
    for (const auto& dir : o.inputs) {
        const auto manifest = read_manifest(dir);
        if (!manifest) throw ValidationError(dir, "missing manifest.json");
        const int L = manifest->at("model").at("L").get<int>();
        const std::string gec_path = (fs::path(dir) / "gec.csv").string();
        const csv::Table tab = csv::read(gec_path);
        const int tc = tab.require_column("t", gec_path);
        const int gc = tab.require_column("E_g", gec_path);
        CollapseSeries s;
        s.L = L;
        for (std::size_t i = 0; i < tab.rows.size(); ++i) {
            if (!tab.rows[i][tc] || !tab.rows[i][gc]) throw ValidationError(gec_path, "row " + std::to_string(i + 1) + " is incomplete");
            s.t_over_L.push_back(*tab.rows[i][tc] / L);
            s.gec_over_L2.push_back(*tab.rows[i][gc] / (static_cast<double>(L) * L));
        }
        series.push_back(std::move(s));
    }
    const double spread = collapse_spread(series, o.t_over_L_max);
    fs::create_directories(o.out);
    {
        csv::Writer w((fs::path(o.out) / "collapse.csv").string(), "L,t_over_L,Eg_over_L2");
        for (const auto& s : series)
            for (std::size_t i = 0; i < s.t_over_L.size(); ++i) w.row(s.L, s.t_over_L[i], s.gec_over_L2[i]);
    }
    json sizes = json::array();
    for (const auto& s : series) sizes.push_back(s.L);
    write_json(fs::path(o.out) / "manifest.json", json{{"command", "collapse"},
                                                       {"sizes", sizes},
                                                       {"inputs", o.inputs},
                                                       {"t_over_L_max", o.t_over_L_max},
                                                       {"collapse_spread", spread},
                                                       {"versions", software_info()},
                                                       {"outputs", {"collapse.csv", "manifest.json"}}});
    log << "collapse spread = " << csv::number(spread) << '\n';
    return kOk;
}

}  // namespace fcl::cli
