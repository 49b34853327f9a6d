#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "fcl/errors.hpp"
#include "fcl/gaussian_dynamics.hpp"
#include "fcl/lattice_model.hpp"

// Brute-force many-body reference for small chains. Site i is bit i of a
// configuration, and Fock states are ordered c_0^dag c_1^dag ... |0>, so site 0
// is leftmost in the Jordan-Wigner string.

namespace fcl::fock {

inline constexpr int kMaxSites = 14;
inline constexpr long long kMaxSectorDimension = 10000;

using Config = std::uint32_t;

/// All L-site configurations with N particles, ascending as integers.
class Basis {
public:
    Basis(int L, int N) : L_(L), N_(N) {
        if (L < 1 || L > kMaxSites) throw ResourceError("Fock oracle supports at most 14 sites", 1LL << std::min(L, 62));
        if (N < 0 || N > L) throw ValidationError("N", "particle count outside [0, L]");
        for (Config c = 0; c < (Config{1} << L); ++c)
            if (std::popcount(c) == N) configs_.push_back(c);
    }

    int sites() const { return L_; }
    int particles() const { return N_; }
    long long dimension() const { return static_cast<long long>(configs_.size()); }
    Config config(long long i) const { return configs_[static_cast<std::size_t>(i)]; }
    const std::vector<Config>& configs() const { return configs_; }

    long long index_of(Config c) const {
        auto it = std::lower_bound(configs_.begin(), configs_.end(), c);
        if (it == configs_.end() || *it != c) return -1;
        return it - configs_.begin();
    }

private:
    int L_;
    int N_;
    std::vector<Config> configs_;
};

/// (-1)^{occupied sites strictly between i and j}: sign of c_i^dag c_j on c.
inline int hop_sign(Config c, int i, int j) {
    const int lo = std::min(i, j);
    const int hi = std::max(i, j);
    if (hi - lo < 2) return 1;
    const Config mask = ((Config{1} << hi) - 1) & ~((Config{1} << (lo + 1)) - 1);
    return (std::popcount(c & mask) % 2) ? -1 : 1;
}

struct State {
    std::shared_ptr<const Basis> basis;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
};

inline State from_product_state(const ProductState& st) {
    auto basis = std::make_shared<const Basis>(st.sites(), st.particles());
    Config c = 0;
    for (int i = 0; i < st.sites(); ++i)
        if (st.occupations[i]) c |= Config{1} << i;
    State s{basis, Eigen::VectorXcd::Zero(basis->dimension())};
    s.amplitudes[basis->index_of(c)] = 1.0;
    return s;
}

/// sum_{ij} h_ij c_i^dag c_j restricted to a fixed-N sector, with its eigendecomposition.
class ManyBodyHamiltonian {
public:
    ManyBodyHamiltonian(const SingleParticleHamiltonian& h, int N) {
        const int L = h.sites();
        if (L > kMaxSites) throw ResourceError("Fock oracle supports at most 14 sites", 1LL << L);
        basis_ = std::make_shared<const Basis>(L, N);
        const long long dim = basis_->dimension();
        if (dim > kMaxSectorDimension) throw ResourceError("Fock sector too large", dim);

        const Eigen::MatrixXd& t = h.matrix();
        std::vector<Eigen::Triplet<double>> entries;
        for (long long col = 0; col < dim; ++col) {
            const Config c = basis_->config(col);
            double diag = 0.0;
            for (int i = 0; i < L; ++i)
                if (c >> i & 1U) diag += t(i, i);
            if (diag != 0.0) entries.emplace_back(col, col, diag);
            for (int j = 0; j < L; ++j) {
                if (!(c >> j & 1U)) continue;
                for (int i = 0; i < L; ++i) {
                    if (i == j || (c >> i & 1U) || t(i, j) == 0.0) continue;
                    const Config target = (c & ~(Config{1} << j)) | (Config{1} << i);
                    entries.emplace_back(basis_->index_of(target), col, hop_sign(c, i, j) * t(i, j));
                }
            }
        }
        sparse_.resize(dim, dim);
        sparse_.setFromTriplets(entries.begin(), entries.end());

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver{Eigen::MatrixXd(sparse_)};
        if (solver.info() != Eigen::Success) throw NumericalHealthError("many-body eigendecomposition failed");
        energies_ = solver.eigenvalues();
        states_ = solver.eigenvectors();
    }

    const std::shared_ptr<const Basis>& basis() const { return basis_; }
    long long dimension() const { return basis_->dimension(); }
    const Eigen::SparseMatrix<double>& sparse() const { return sparse_; }
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(sparse_); }
    const Eigen::VectorXd& energies() const { return energies_; }
    const Eigen::MatrixXd& eigenstates() const { return states_; }

    double expectation(const State& psi) const {
        return (psi.amplitudes.adjoint() * (sparse_.cast<std::complex<double>>() * psi.amplitudes)).value().real();
    }

private:
    std::shared_ptr<const Basis> basis_;
    Eigen::SparseMatrix<double> sparse_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXd states_;
};

inline ManyBodyHamiltonian build_manybody_hamiltonian(const SingleParticleHamiltonian& h, int N) {
    return ManyBodyHamiltonian(h, N);
}

/// e^{-iHt} psi0 through the cached eigendecomposition.
inline State evolve_fock(const State& psi0, const ManyBodyHamiltonian& H, double t) {
    if (psi0.basis->dimension() != H.dimension() || psi0.basis->sites() != H.basis()->sites())
        throw ValidationError("psi0", "state sector does not match the Hamiltonian sector");
    if (H.dimension() > kMaxSectorDimension) throw ResourceError("Fock sector too large", H.dimension());
    if (t == 0.0) return psi0;
    const Eigen::MatrixXcd v = H.eigenstates().cast<std::complex<double>>();
    Eigen::VectorXcd coeffs = v.adjoint() * psi0.amplitudes;
    for (Eigen::Index m = 0; m < coeffs.size(); ++m) coeffs[m] *= std::polar(1.0, -H.energies()[m] * t);
    return State{psi0.basis, v * coeffs};
}

/// Von Neumann entropy (nats) of sites {0..ell-1} by explicit partial trace.
inline double entropy_partial_trace(const State& psi, int ell) {
    const int L = psi.basis->sites();
    if (L > kMaxSites) throw ResourceError("Fock oracle supports at most 14 sites", 1LL << L);
    if (ell < 1 || ell > L - 1) throw ValidationError("ell", "cut outside [1, L-1]");
    const Eigen::Index dim_a = Eigen::Index{1} << ell;
    const Eigen::Index dim_b = Eigen::Index{1} << (L - ell);
    // Subsystem A is leftmost in the string, so psi(a, b) factorizes with no sign.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_a, dim_b);
    const Config mask_a = (Config{1} << ell) - 1;
    for (long long i = 0; i < psi.basis->dimension(); ++i) {
        const Config c = psi.basis->config(i);
        m(c & mask_a, c >> ell) = psi.amplitudes[i];
    }
    const Eigen::MatrixXcd rho = dim_a <= dim_b ? Eigen::MatrixXcd(m * m.adjoint()) : Eigen::MatrixXcd(m.adjoint() * m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const double p = solver.eigenvalues()[k];
        if (p > 1e-300) s -= p * std::log(p);
    }
    return s;
}

/// <c_j^dag c_l> of a sector state.
inline Eigen::MatrixXcd correlation_matrix(const State& psi) {
    const int L = psi.basis->sites();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(L, L);
    for (long long col = 0; col < psi.basis->dimension(); ++col) {
        const Config n = psi.basis->config(col);
        const std::complex<double> amp = psi.amplitudes[col];
        for (int l = 0; l < L; ++l) {
            if (!(n >> l & 1U)) continue;
            for (int j = 0; j < L; ++j) {
                if (j != l && (n >> j & 1U)) continue;
                const Config target = (n & ~(Config{1} << l)) | (Config{1} << j);
                const long long row = psi.basis->index_of(target);
                c(j, l) += std::conj(psi.amplitudes[row]) * amp * static_cast<double>(j == l ? 1 : hop_sign(n, j, l));
            }
        }
    }
    return c;
}

}  // namespace fcl::fock
