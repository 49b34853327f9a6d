// fcl: free-fermion circuit-cost laboratory command line.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

struct ScenarioFlags {
    int L = 100;
    std::string model = "tb";
    std::optional<double> alpha;
    std::string boundary = "open";
    std::string state = "neel";
    std::optional<int> N;
    std::uint64_t seed = 0;
    std::optional<double> tmax;
    double dt = 0.25;
    std::string out = "results";
    bool allow_odd_L = false;
    double c = fcl::kDefaultEntanglingRate;
    int quadrature_points = 8192;

    void attach(CLI::App* app) {
        app->add_option("--L", L, "lattice size (even unless --allow-odd-L)");
        app->add_option("--model", model, "tb (nearest neighbor) or lr (power law)")->check(CLI::IsMember({"tb", "lr"}));
        app->add_option("--alpha", alpha, "hopping exponent for --model lr");
        app->add_option("--boundary", boundary, "open or periodic")->check(CLI::IsMember({"open", "periodic"}));
        app->add_option("--state", state, "neel | domainwall | altprefix:<p> | random:<n>");
        app->add_option("--N", N, "particle count (default L/2)");
        app->add_option("--seed", seed, "seed for random states");
        app->add_option("--tmax", tmax, "final time (default 4L)");
        app->add_option("--dt", dt, "time step");
        app->add_option("--out", out, "output directory");
        app->add_flag("--allow-odd-L", allow_odd_L, "permit odd lattice sizes");
        app->add_option("--c", c, "entangling-rate constant of the upper bound");
        app->add_option("--quadrature-points", quadrature_points, "k-grid size for quasiparticle integrals");
    }

    fcl::RunConfig to_config() const {
        fcl::ScenarioConfig s;
        s.L = L;
        s.model = model;
        s.alpha = alpha;
        s.boundary = boundary;
        s.state = state;
        s.N = N;
        s.tmax = tmax;
        s.dt = dt;
        s.allow_odd_L = allow_odd_L;
        fcl::RunConfig cfg;
        cfg.scenarios.push_back(s);
        cfg.out = out;
        cfg.seed = seed;
        cfg.c = c;
        cfg.quadrature_points = quadrature_points;
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free-fermion entanglement and circuit-cost bounds"};
    app.require_subcommand(1);

    ScenarioFlags sim_flags;
    std::string config_path;
    bool overlay = false;
    std::string profile_method = "direct";
    auto* sim = app.add_subcommand("simulate", "evolve product states and write GEC series");
    sim_flags.attach(sim);
    sim->add_option("--config", config_path, "JSON run configuration (replaces the scenario flags)");
    sim->add_flag("--quasiparticle", overlay, "fill the E_g_qp column (tight-binding only)");
    sim->add_option("--profile-method", profile_method, "direct or pure (complement blocks past L/2)")
        ->check(CLI::IsMember({"direct", "pure"}));

    ScenarioFlags qp_flags;
    std::optional<int> qp_ell;
    auto* qp = app.add_subcommand("quasiparticle", "quasiparticle predictions for S_ell(t) and E_g(t)");
    qp_flags.attach(qp);
    qp->add_option("--ell", qp_ell, "restrict qp_entropy.csv to one cut");

    int max_L = 8;
    bool inject_fault = false;
    auto* ver = app.add_subcommand("verify", "cross-check the Gaussian engine against the Fock oracle");
    ver->add_option("--max-L", max_L, "largest lattice size checked (<= 14)");
    ver->add_flag("--inject-fault", inject_fault, "corrupt the propagator (test hook)")->group("");

    fcl::cli::FitOptions fit_opts;
    auto* fit = app.add_subcommand("fit", "power-law exponent of a growth series");
    fit->add_option("--input", fit_opts.input, "gec.csv or entropy_profile.csv")->required();
    fit->add_option("--column", fit_opts.column, "value column of gec.csv");
    fit->add_option("--ell", fit_opts.ell, "fit S at this cut from entropy_profile.csv");
    fit->add_option("--t-min", fit_opts.t_min, "window start");
    fit->add_option("--t-max", fit_opts.t_max, "window end");
    fit->add_option("--out", fit_opts.out, "output directory for fit.json");

    fcl::cli::CollapseOptions col_opts;
    auto* col = app.add_subcommand("collapse", "rescale runs of several sizes to E_g/L^2 vs t/L");
    col->add_option("inputs", col_opts.inputs, "run directories produced by simulate")->required();
    col->add_option("--t-over-L-max", col_opts.t_over_L_max, "upper end of the common t/L grid");
    col->add_option("--out", col_opts.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return fcl::cli::kConfigError;
    }

    if (*sim) {
        return fcl::cli::guarded([&] {
            fcl::RunConfig cfg;
            if (!config_path.empty()) {
                cfg = fcl::load_run_config(config_path);
                if (sim->count("--out")) cfg.out = sim_flags.out;
            } else {
                cfg = sim_flags.to_config();
                cfg.quasiparticle = overlay;
                cfg.profile_method = profile_method;
            }
            if (overlay) cfg.quasiparticle = true;
            if (cfg.verify) {
                const int rc = fcl::cli::verify(8, false);
                if (rc != fcl::cli::kOk) return rc;
            }
            return fcl::cli::simulate(cfg);
        });
    }
    if (*qp) {
        return fcl::cli::guarded([&] {
            const auto cfg = qp_flags.to_config();
            return fcl::cli::quasiparticle(cfg.scenarios.front(), cfg, qp_ell);
        });
    }
    if (*ver) return fcl::cli::guarded([&] { return fcl::cli::verify(max_L, inject_fault); });
    if (*fit) return fcl::cli::guarded([&] { return fcl::cli::fit(fit_opts); });
    if (*col) return fcl::cli::guarded([&] { return fcl::cli::collapse(col_opts); });
    return fcl::cli::kConfigError;
}
