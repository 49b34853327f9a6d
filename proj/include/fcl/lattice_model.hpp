#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "fcl/errors.hpp"

namespace fcl {

enum class Boundary { Open, Periodic };

inline std::string to_string(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }

/// alpha -> infinity limit of the power-law chain.
struct NearestNeighbor {};

/// Couplings -1/d^alpha between every pair of sites at lattice distance d.
struct PowerLaw {
    double alpha;
};

using Hopping = std::variant<NearestNeighbor, PowerLaw>;

inline bool is_nearest_neighbor(const Hopping& h) { return std::holds_alternative<NearestNeighbor>(h); }

struct ModelSpec {
    int L = 2;
    Hopping hopping = NearestNeighbor{};
    Boundary boundary = Boundary::Open;
    std::optional<int> N;  // defaults to half filling
    bool allow_odd_L = false;

    int particles() const { return N.value_or(L / 2); }

    void validate() const {
        if (L < 2) throw ValidationError("L", "lattice size must be at least 2, got " + std::to_string(L));
        if (L % 2 != 0 && !allow_odd_L)
            throw ValidationError("L", "odd lattice size " + std::to_string(L) + " requires allow_odd_L");
        if (const auto* pl = std::get_if<PowerLaw>(&hopping)) {
            if (!(pl->alpha > 0.0) || !std::isfinite(pl->alpha))
                throw ValidationError("alpha", "hopping exponent must be finite and positive");
        }
        const int n = particles();
        if (n < 0 || n > L)
            throw ValidationError("N", "particle count " + std::to_string(n) + " outside [0, " + std::to_string(L) + "]");
    }
};

/// Site distance used by the couplings: |i-j| on an open chain, minimal image on a ring.
inline int lattice_distance(int i, int j, int L, Boundary b) {
    const int d = std::abs(i - j);
    return b == Boundary::Periodic ? std::min(d, L - d) : d;
}

/// Real symmetric hopping matrix together with its cached eigendecomposition
/// h = V diag(E) V^T. Immutable once built.
class SingleParticleHamiltonian {
public:
    SingleParticleHamiltonian(ModelSpec spec, Eigen::MatrixXd matrix) : spec_(std::move(spec)), matrix_(std::move(matrix)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix_);
        if (solver.info() != Eigen::Success) throw NumericalHealthError("single-particle eigendecomposition failed");
        energies_ = solver.eigenvalues();
        modes_ = solver.eigenvectors();
    }

    const ModelSpec& spec() const { return spec_; }
    int sites() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXd& matrix() const { return matrix_; }
    const Eigen::VectorXd& energies() const { return energies_; }
    const Eigen::MatrixXd& modes() const { return modes_; }

    /// e^{iht} = V e^{iEt} V^T. Its adjoint is the Schroedinger propagator e^{-iht}.
    Eigen::MatrixXcd heisenberg_propagator(double t) const {
        const Eigen::VectorXcd phases = (std::complex<double>(0.0, t) * energies_.cast<std::complex<double>>()).array().exp();
        const Eigen::MatrixXcd v = modes_.cast<std::complex<double>>();
        return v * phases.asDiagonal() * v.transpose();
    }

private:
    ModelSpec spec_;
    Eigen::MatrixXd matrix_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXd modes_;
};

inline SingleParticleHamiltonian build_hamiltonian(const ModelSpec& spec) {
    spec.validate();
    const int L = spec.L;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(L, L);
    if (is_nearest_neighbor(spec.hopping)) {
        for (int i = 0; i + 1 < L; ++i) h(i, i + 1) = h(i + 1, i) = -1.0;
        if (spec.boundary == Boundary::Periodic && L > 2) h(0, L - 1) = h(L - 1, 0) = -1.0;
    } else {
        const double alpha = std::get<PowerLaw>(spec.hopping).alpha;
        for (int i = 0; i < L; ++i) {
            for (int j = i + 1; j < L; ++j) {
                const int d = lattice_distance(i, j, L, spec.boundary);
                h(i, j) = h(j, i) = -1.0 / std::pow(static_cast<double>(d), alpha);
            }
        }
    }
    return SingleParticleHamiltonian(spec, std::move(h));
}

/// Tight-binding band, epsilon_k = -2 cos k.
inline double dispersion(double k) { return -2.0 * std::cos(k); }

/// d epsilon_k / dk = 2 sin k; peaks at v_M = 2 for k = pi/2.
inline double group_velocity(double k) { return 2.0 * std::sin(k); }

inline constexpr double kMaxGroupVelocity = 2.0;

}  // namespace fcl
