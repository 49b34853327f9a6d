#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fcl/csv.hpp"
#include "fcl/experiments.hpp"
#include "fcl/fock_oracle.hpp"
#include "fcl/gaussian_dynamics.hpp"
#include "fcl/lattice_model.hpp"

namespace fcl {

struct OracleCheck {
    int L = 0;
    std::string model;
    std::string state;
    double t = 0.0;
    int ell = 0;
    double gaussian = 0.0;
    double oracle = 0.0;

    double deviation() const { return std::abs(gaussian - oracle); }
};

struct OracleReport {
    std::vector<OracleCheck> checks;
    OracleCheck worst;
    double max_deviation = 0.0;
};

struct OracleSuite {
    std::vector<int> sizes = {4, 6, 8};
    std::vector<double> times = {0.3, 1.1, 2.7, 5.0};
    int random_seeds = 5;
    /// Multiplies the Gaussian-side evolution time; anything but 1 corrupts the propagator.
    double fault_time_scale = 1.0;

    static OracleSuite up_to(int max_L) {
        OracleSuite s;
        s.sizes.clear();
        for (int L = 4; L <= max_L; L += 2) s.sizes.push_back(L);
        return s;
    }
};

inline std::string describe(const ModelSpec& m) {
    std::string s = is_nearest_neighbor(m.hopping) ? "tb" : "lr(alpha=" + csv::number(std::get<PowerLaw>(m.hopping).alpha) + ")";
    return s + "/" + to_string(m.boundary);
}

/// Compares correlation-matrix entropies with the brute-force Fock oracle over
/// Neel, domain-wall and seeded uniform-random states, every cut and time.
inline OracleReport verify_against_oracle(const OracleSuite& suite) {
    OracleReport report;
    for (int L : suite.sizes) {
        std::vector<ModelSpec> models;
        for (Boundary b : {Boundary::Open, Boundary::Periodic}) {
            ModelSpec tb;
            tb.L = L;
            tb.boundary = b;
            models.push_back(tb);
            ModelSpec lr = tb;
            lr.hopping = PowerLaw{b == Boundary::Open ? 0.5 : 3.0};
            models.push_back(lr);
        }
        std::vector<std::pair<std::string, ProductState>> states = {{"neel", ProductState::neel(L)},
                                                                    {"domainwall", ProductState::domain_wall(L, L / 2)}};
        for (int seed = 1; seed <= suite.random_seeds; ++seed)
            states.emplace_back("random(seed=" + std::to_string(seed) + ")",
                                generate_state(StateSpec::uniform_random(1, static_cast<std::uint64_t>(seed)), L, L / 2));

        for (const auto& model : models) {
            const auto h = build_hamiltonian(model);
            const auto hmb = fock::build_manybody_hamiltonian(h, L / 2);
            for (const auto& [name, st] : states) {
                const auto c0 = initial_correlation(st);
                const auto psi0 = fock::from_product_state(st);
                for (double t : suite.times) {
                    const auto c = evolve(c0, h, t * suite.fault_time_scale);
                    const auto psi = fock::evolve_fock(psi0, hmb, t);
                    for (int ell = 1; ell < L; ++ell) {
                        OracleCheck chk{L, describe(model), name, t, ell, block_entropy(c, ell), fock::entropy_partial_trace(psi, ell)};
                        if (report.checks.empty() || chk.deviation() > report.max_deviation) {
                            report.max_deviation = chk.deviation();
                            report.worst = chk;
                        }
                        report.checks.push_back(chk);
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace fcl
