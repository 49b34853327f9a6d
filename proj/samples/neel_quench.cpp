// Half-chain entropy and GEC after a Neel quench on a tight-binding ring,
// printed next to the quasiparticle prediction.
#include <cstdio>
#include <numbers>

#include "fcl/fcl.hpp"

int main() {
    fcl::ModelSpec model;
    model.L = 100;
    model.boundary = fcl::Boundary::Periodic;
    const auto h = fcl::build_hamiltonian(model);
    const auto c0 = fcl::initial_correlation(fcl::ProductState::neel(model.L));
    const fcl::QuasiparticleModel qp(fcl::neel_quasiparticle_input(model.L));

    std::printf("%6s %12s %12s %12s %12s\n", "t", "S(L/2)", "S_qp(L/2)", "E_g/L^2", "E_g_qp/L^2");
    for (double t = 0.0; t <= 60.0; t += 5.0) {
        const auto profile = fcl::entropy_profile(fcl::evolve(c0, h, t), fcl::ProfileMethod::PureComplement);
        const double l2 = model.L * model.L;
        std::printf("%6.1f %12.6f %12.6f %12.6f %12.6f\n", t, profile.at(50), qp.entropy_finite_size(50, t),
                    fcl::gec_value(profile) / l2, qp.gec_prediction(t) / l2);
    }
}
