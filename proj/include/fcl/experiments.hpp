#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fcl/complexity_measures.hpp"
#include "fcl/errors.hpp"
#include "fcl/gaussian_dynamics.hpp"
#include "fcl/lattice_model.hpp"
#include "fcl/parallel.hpp"
#include "fcl/quasiparticle.hpp"

namespace fcl {

/// Which family of initial product states a scenario uses.
struct StateSpec {
    StateKind kind = StateKind::Neel;
    int prefix = 0;            // AlternatingPrefix
    int realizations = 1;      // random kinds
    std::uint64_t seed = 0;

    static StateSpec neel() { return {}; }
    static StateSpec domain_wall() { return {StateKind::DomainWall, 0, 1, 0}; }
    static StateSpec alternating_prefix(int p, std::uint64_t seed, int realizations = 1) {
        return {StateKind::AlternatingPrefix, p, realizations, seed};
    }
    static StateSpec uniform_random(int realizations, std::uint64_t seed) {
        return {StateKind::UniformRandom, 0, realizations, seed};
    }

    bool is_random() const { return kind == StateKind::AlternatingPrefix || kind == StateKind::UniformRandom; }
    int count() const { return is_random() ? realizations : 1; }

    /// CLI spelling: neel | domainwall | altprefix:<p> | random:<n>.
    std::string name() const {
        switch (kind) {
            case StateKind::Neel: return "neel";
            case StateKind::DomainWall: return "domainwall";
            case StateKind::AlternatingPrefix:
                return "altprefix:" + std::to_string(prefix) + (realizations != 1 ? ":" + std::to_string(realizations) : "");
            case StateKind::UniformRandom: return "random:" + std::to_string(realizations);
            case StateKind::Custom: break;
        }
        return "custom";
    }

    static StateSpec parse(const std::string& text, std::uint64_t seed = 0) {
        auto number = [&](const std::string& s) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(s, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != s.size() || s.empty()) throw ValidationError("state", "malformed state '" + text + "'");
            return v;
        };
        if (text == "neel") return neel();
        if (text == "domainwall") return domain_wall();
        if (text.rfind("altprefix:", 0) == 0) {
            const std::string rest = text.substr(10);
            const auto colon = rest.find(':');
            if (colon == std::string::npos) return alternating_prefix(number(rest), seed);
            return alternating_prefix(number(rest.substr(0, colon)), seed, number(rest.substr(colon + 1)));
        }
        if (text.rfind("random:", 0) == 0) {
            const int n = number(text.substr(7));
            if (n < 1) throw ValidationError("state", "random:<n> needs n >= 1");
            return uniform_random(n, seed);
        }
        throw ValidationError("state", "unknown state '" + text + "' (neel|domainwall|altprefix:<p>|random:<n>)");
    }
};

namespace detail {

/// Uniform integer in [0, bound) by rejection; portable across standard libraries.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

/// `count` distinct values from `pool` by a partial Fisher-Yates shuffle.
inline std::vector<int> sample_without_replacement(std::vector<int> pool, int count, std::mt19937_64& rng) {
    for (int i = 0; i < count; ++i) {
        const auto j = i + static_cast<int>(bounded(rng, pool.size() - static_cast<std::size_t>(i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(count));
    return pool;
}

}  // namespace detail

/// Generator for realization `index` of a seeded family; independent of execution order.
inline std::mt19937_64 realization_rng(std::uint64_t seed, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
}

inline ProductState generate_state(const StateSpec& spec, int L, int N, std::mt19937_64& rng) {
    if (N < 0 || N > L) throw ValidationError("N", "particle count outside [0, L]");
    ProductState st;
    switch (spec.kind) {
        case StateKind::Neel:
            st = ProductState::neel(L);
            if (st.particles() != N)
                throw ValidationError("state", "Neel state holds " + std::to_string(st.particles()) + " fermions, N = " + std::to_string(N));
            return st;
        case StateKind::DomainWall: return ProductState::domain_wall(L, N);
        case StateKind::AlternatingPrefix: {
            const int p = spec.prefix;
            if (p < 0 || p % 2 != 0 || p > L) throw ValidationError("state", "prefix length must be even and within [0, L]");
            const int rest = N - p / 2;
            if (rest < 0 || rest > L - p)
                throw ValidationError("state", "cannot place " + std::to_string(N) + " fermions with alternating prefix " + std::to_string(p));
            st.occupations.assign(static_cast<std::size_t>(L), 0);
            for (int i = 0; i < p; i += 2) st.occupations[i] = 1;
            std::vector<int> pool(static_cast<std::size_t>(L - p));
            std::iota(pool.begin(), pool.end(), p);
            for (int site : detail::sample_without_replacement(std::move(pool), rest, rng)) st.occupations[site] = 1;
            break;
        }
        case StateKind::UniformRandom: {
            st.occupations.assign(static_cast<std::size_t>(L), 0);
            std::vector<int> pool(static_cast<std::size_t>(L));
            std::iota(pool.begin(), pool.end(), 0);
            for (int site : detail::sample_without_replacement(std::move(pool), N, rng)) st.occupations[site] = 1;
            break;
        }
        case StateKind::Custom: throw ValidationError("state", "custom states are supplied directly, not generated");
    }
    st.kind = spec.kind;
    st.prefix = spec.prefix;
    st.seed = spec.seed;
    return st;
}

inline ProductState generate_state(const StateSpec& spec, int L, int N, int realization = 0) {
    auto rng = realization_rng(spec.seed, realization);
    return generate_state(spec, L, N, rng);
}

/// 0, dt, 2 dt, ... up to t_max inclusive (within dt * 1e-9).
inline std::vector<double> uniform_time_grid(double t_max, double dt) {
    if (!(dt > 0.0)) throw ValidationError("dt", "time step must be positive");
    if (!(t_max >= 0.0)) throw ValidationError("tmax", "final time must be nonnegative");
    std::vector<double> ts;
    const auto steps = static_cast<long long>(std::floor(t_max / dt + 1e-9));
    for (long long i = 0; i <= steps; ++i) ts.push_back(static_cast<double>(i) * dt);
    return ts;
}

struct Scenario {
    ModelSpec model;
    StateSpec state;
    std::vector<double> t_grid;
    bool quasiparticle_overlay = false;
    double c = kDefaultEntanglingRate;
    int quadrature_points = 8192;
    ProfileMethod method = ProfileMethod::Direct;

    void validate() const {
        model.validate();
        if (t_grid.empty()) throw ValidationError("t_grid", "time grid is empty");
        if (!(t_grid.front() >= 0.0)) throw ValidationError("t_grid", "times must be nonnegative");
        for (std::size_t i = 1; i < t_grid.size(); ++i)
            if (!(t_grid[i] > t_grid[i - 1])) throw ValidationError("t_grid", "times must be strictly increasing");
        if (!(c > 0.0)) throw ValidationError("c", "entangling-rate constant must be positive");
        if (state.count() < 1) throw ValidationError("state", "need at least one realization");
        if (quasiparticle_overlay && !is_nearest_neighbor(model.hopping))
            throw ValidationError("quasiparticle", "quasiparticle picture does not apply to long-range hopping");
    }
};

struct Record {
    double t = 0.0;
    EntropyProfile profile;
    double E_g = 0.0;
    double E_g_upper = 0.0;
    std::optional<double> E_g_qp;
};

/// Time-indexed output. For random families `records` holds the realization
/// mean; per-realization GEC and the min/max envelope are kept alongside.
struct ScenarioResult {
    Scenario scenario;
    std::vector<ProductState> states;
    std::vector<Record> records;
    std::vector<std::vector<double>> realization_gec;  // [realization][time]
    std::vector<double> gec_min;
    std::vector<double> gec_max;

    std::vector<double> times() const {
        std::vector<double> t;
        for (const auto& r : records) t.push_back(r.t);
        return t;
    }
    std::vector<double> gec_series() const {
        std::vector<double> g;
        for (const auto& r : records) g.push_back(r.E_g);
        return g;
    }
    std::vector<double> entropy_series(int ell) const {
        std::vector<double> s;
        for (const auto& r : records) s.push_back(r.profile.at(ell));
        return s;
    }
};

/// Profiles of one initial state at every grid time, each evolved directly from t = 0.
inline std::vector<EntropyProfile> evolve_profiles(const SingleParticleHamiltonian& h, const ProductState& state,
                                                   const std::vector<double>& t_grid, ProfileMethod method) {
    const CorrelationMatrix c0 = initial_correlation(state);
    std::vector<EntropyProfile> out(t_grid.size());
    parallel_for(t_grid.size(), [&](std::size_t i) { out[i] = entropy_profile(evolve(c0, h, t_grid[i]), method); });
    return out;
}

inline ScenarioResult run_scenario(const Scenario& scn) {
    scn.validate();
    const auto h = build_hamiltonian(scn.model);
    const int L = scn.model.L;
    const int N = scn.model.particles();
    const std::size_t nt = scn.t_grid.size();
    const int count = scn.state.count();

    ScenarioResult res;
    res.scenario = scn;
    for (int r = 0; r < count; ++r) res.states.push_back(generate_state(scn.state, L, N, r));

    std::vector<std::vector<EntropyProfile>> profiles(static_cast<std::size_t>(count));
    for (int r = 0; r < count; ++r) profiles[r] = evolve_profiles(h, res.states[r], scn.t_grid, scn.method);

    res.realization_gec.assign(static_cast<std::size_t>(count), std::vector<double>(nt));
    for (int r = 0; r < count; ++r)
        for (std::size_t i = 0; i < nt; ++i) res.realization_gec[r][i] = gec_value(profiles[r][i]);

    std::optional<QuasiparticleModel> qp;
    if (scn.quasiparticle_overlay)
        qp.emplace(product_state_quasiparticle_input(res.states.front(), scn.model.boundary, scn.quadrature_points));

    res.records.resize(nt);
    res.gec_min.assign(nt, std::numeric_limits<double>::infinity());
    res.gec_max.assign(nt, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < nt; ++i) {
        Record& rec = res.records[i];
        rec.t = scn.t_grid[i];
        rec.profile.time = rec.t;
        rec.profile.entropies.assign(static_cast<std::size_t>(L - 1), 0.0);
        for (int r = 0; r < count; ++r) {
            for (int ell = 0; ell < L - 1; ++ell) rec.profile.entropies[ell] += profiles[r][i].entropies[ell];
            res.gec_min[i] = std::min(res.gec_min[i], res.realization_gec[r][i]);
            res.gec_max[i] = std::max(res.gec_max[i], res.realization_gec[r][i]);
        }
        for (double& s : rec.profile.entropies) s /= count;
        rec.E_g = gec_value(rec.profile);
        rec.E_g_upper = gec_upper_bound(L, rec.t, scn.c);
        if (qp) rec.E_g_qp = qp->gec_prediction(rec.t);
    }
    return res;
}

struct FitResult {
    double gamma = 0.0;
    double intercept = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    double r_squared = 0.0;
    int points = 0;
};

/// Least-squares line through (ln t, ln y) for t in [t_min, t_max]; gamma is the slope.
inline FitResult fit_growth_exponent(const std::vector<double>& ts, const std::vector<double>& ys, double t_min, double t_max) {
    if (ts.size() != ys.size()) throw ValidationError("series", "time and value columns differ in length");
    if (!(t_min > 0.0) || !(t_max > t_min)) throw ValidationError("window", "need 0 < t_min < t_max");
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] < t_min || ts[i] > t_max) continue;
        if (!(ys[i] > 0.0))
            throw ValidationError("series", "nonpositive value " + std::to_string(ys[i]) + " at row " + std::to_string(i) +
                                                " inside the fit window");
        x.push_back(std::log(ts[i]));
        y.push_back(std::log(ys[i]));
    }
    if (x.size() < 8)
        throw ValidationError("window", "fit window holds " + std::to_string(x.size()) + " points, need at least 8");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0) throw ValidationError("window", "degenerate window: all times equal");
    FitResult f;
    f.gamma = sxy / sxx;
    f.intercept = my - f.gamma * mx;
    f.t_min = t_min;
    f.t_max = t_max;
    f.points = static_cast<int>(x.size());
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.gamma * x[i]);
        ss_res += r * r;
    }
    f.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return f;
}

/// Growth window: [1, L/(2 v_M)] for nearest-neighbor hopping; otherwise [1, t*]
/// with t* the first time the series exceeds half its final value.
inline std::pair<double, double> default_fit_window(const ModelSpec& model, const std::vector<double>& ts,
                                                    const std::vector<double>& ys) {
    if (ts.empty() || ts.size() != ys.size()) throw ValidationError("series", "empty or ragged series");
    if (is_nearest_neighbor(model.hopping)) return {1.0, model.L / (2.0 * kMaxGroupVelocity)};
    const double half = 0.5 * ys.back();
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (ys[i] > half) return {1.0, std::max(ts[i], 1.0)};
    return {1.0, ts.back()};
}

inline FitResult fit_growth_exponent(const ModelSpec& model, const std::vector<double>& ts, const std::vector<double>& ys) {
    const auto [lo, hi] = default_fit_window(model, ts, ys);
    return fit_growth_exponent(ts, ys, lo, hi);
}

struct CollapseSeries {
    int L = 0;
    std::vector<double> t_over_L;
    std::vector<double> gec_over_L2;
};

struct CollapseResult {
    std::vector<CollapseSeries> series;
    double spread = 0.0;
    double t_over_L_max = 0.0;
};

namespace detail {

inline double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + w * (ys[hi] - ys[lo]);
}

}  // namespace detail

/// Max over a common t/L grid on [0, t_over_L_max] of the spread (max - min)
/// of linearly interpolated E_g/L^2 across sizes.
inline double collapse_spread(const std::vector<CollapseSeries>& series, double t_over_L_max, int grid_points = 201) {
    if (series.empty()) throw ValidationError("L_list", "no system sizes supplied");
    if (series.size() == 1) return 0.0;
    double hi = t_over_L_max;
    for (const auto& s : series) {
        if (s.t_over_L.size() < 2) throw ValidationError("series", "collapse series needs at least two points");
        hi = std::min(hi, s.t_over_L.back());
    }
    double spread = 0.0;
    for (int g = 0; g < grid_points; ++g) {
        const double x = hi * g / (grid_points - 1);
        double mn = std::numeric_limits<double>::infinity();
        double mx = -mn;
        for (const auto& s : series) {
            const double v = detail::interpolate(s.t_over_L, s.gec_over_L2, x);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        spread = std::max(spread, mx - mn);
    }
    return spread;
}

inline CollapseSeries rescale(const ScenarioResult& r) {
    CollapseSeries s;
    s.L = r.scenario.model.L;
    const double L = s.L;
    for (const auto& rec : r.records) {
        s.t_over_L.push_back(rec.t / L);
        s.gec_over_L2.push_back(rec.E_g / (L * L));
    }
    return s;
}

/// Runs `family` at each size with t in [0, t_over_L_max * L] and rescales to (t/L, E_g/L^2).
inline CollapseResult collapse_set(const std::vector<int>& L_list, const ModelSpec& family, const StateSpec& state,
                                   double t_over_L_max = 0.5, double dt = 0.25,
                                   ProfileMethod method = ProfileMethod::Direct) {
    if (L_list.empty()) throw ValidationError("L_list", "no system sizes supplied");
    CollapseResult out;
    out.t_over_L_max = t_over_L_max;
    for (int L : L_list) {
        Scenario scn;
        scn.model = family;
        scn.model.L = L;
        scn.model.N.reset();
        scn.state = state;
        scn.t_grid = uniform_time_grid(t_over_L_max * L, dt);
        scn.method = method;
        out.series.push_back(rescale(run_scenario(scn)));
    }
    out.spread = collapse_spread(out.series, t_over_L_max);
    return out;
}

}  // namespace fcl
