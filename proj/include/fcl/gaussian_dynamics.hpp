#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "fcl/errors.hpp"
#include "fcl/lattice_model.hpp"

namespace fcl {

enum class StateKind { Neel, DomainWall, AlternatingPrefix, UniformRandom, Custom };

/// Occupation-basis product state: occupations[i] = 1 if site i carries a fermion.
struct ProductState {
    std::vector<std::uint8_t> occupations;
    StateKind kind = StateKind::Custom;
    int prefix = 0;           // AlternatingPrefix only
    std::uint64_t seed = 0;   // random kinds only

    int sites() const { return static_cast<int>(occupations.size()); }
    int particles() const { return std::accumulate(occupations.begin(), occupations.end(), 0); }

    std::string bits() const {
        std::string s;
        s.reserve(occupations.size());
        for (auto o : occupations) s.push_back(o ? '1' : '0');
        return s;
    }

    static ProductState from_bits(const std::string& bits) {
        ProductState st;
        for (char c : bits) {
            if (c != '0' && c != '1') throw ValidationError("state", "occupation pattern must be a 0/1 string");
            st.occupations.push_back(c == '1');
        }
        return st;
    }

    /// 1010...: fermions on the odd sites of the 1-based labeling.
    static ProductState neel(int L) {
        ProductState st;
        st.kind = StateKind::Neel;
        st.occupations.resize(static_cast<std::size_t>(L));
        for (int i = 0; i < L; ++i) st.occupations[i] = (i % 2 == 0);
        return st;
    }

    /// First N sites filled.
    static ProductState domain_wall(int L, int N) {
        if (N < 0 || N > L) throw ValidationError("N", "particle count outside [0, L]");
        ProductState st;
        st.kind = StateKind::DomainWall;
        st.occupations.assign(static_cast<std::size_t>(L), 0);
        std::fill_n(st.occupations.begin(), N, 1);
        return st;
    }
};

/// C_{jl} = <c_j^dagger c_l> of a fermionic Gaussian state at time `time`.
struct CorrelationMatrix {
    Eigen::MatrixXcd matrix;
    double time = 0.0;

    int sites() const { return static_cast<int>(matrix.rows()); }
    double particle_number() const { return matrix.trace().real(); }
};

/// Bipartite entropies (nats) of the prefix blocks {1..ell}, ell = 1..L-1.
struct EntropyProfile {
    double time = 0.0;
    std::vector<double> entropies;

    int sites() const { return static_cast<int>(entropies.size()) + 1; }
    double at(int ell) const { return entropies.at(static_cast<std::size_t>(ell - 1)); }
};

inline constexpr double kEigenvalueHealth = 1e-8;

inline CorrelationMatrix initial_correlation(const ProductState& state) {
    CorrelationMatrix c;
    const int L = state.sites();
    c.matrix = Eigen::MatrixXcd::Zero(L, L);
    for (int i = 0; i < L; ++i) c.matrix(i, i) = state.occupations[i] ? 1.0 : 0.0;
    c.time = 0.0;
    return c;
}

/// C(t) = e^{iht} C0 e^{-iht}, built from the cached spectral decomposition.
/// `t` is the elapsed time; the result is stamped with C0.time + t.
inline CorrelationMatrix evolve(const CorrelationMatrix& c0, const SingleParticleHamiltonian& h, double t) {
    if (c0.sites() != h.sites())
        throw ValidationError("C0", "dimension " + std::to_string(c0.sites()) + " does not match Hamiltonian dimension " +
                                        std::to_string(h.sites()));
    if (!(t >= 0.0)) throw ValidationError("t", "evolution time must be nonnegative");
    CorrelationMatrix out;
    out.time = c0.time + t;
    if (t == 0.0) {
        out.matrix = c0.matrix;
        return out;
    }
    const Eigen::MatrixXcd p = h.heisenberg_propagator(t);
    out.matrix.noalias() = p * c0.matrix * p.adjoint();
    return out;
}

/// Binary (Fermi-Dirac) entropy -n ln n - (1-n) ln(1-n), with 0 ln 0 = 0.
inline double mode_entropy(double n) {
    double s = 0.0;
    if (n > 0.0) s -= n * std::log(n);
    if (n < 1.0) s -= (1.0 - n) * std::log1p(-n);
    return s;
}

namespace detail {

inline double entropy_from_spectrum(const Eigen::VectorXd& nu) {
    double s = 0.0;
    for (Eigen::Index m = 0; m < nu.size(); ++m) {
        const double v = nu[m];
        if (v < -kEigenvalueHealth || v > 1.0 + kEigenvalueHealth)
            throw NumericalHealthError("correlation eigenvalue " + std::to_string(v) + " outside [0, 1]");
        s += mode_entropy(std::clamp(v, 0.0, 1.0));
    }
    return s;
}

inline double hermitian_block_entropy(const Eigen::Ref<const Eigen::MatrixXcd>& block) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalHealthError("block eigensolver did not converge");
    return entropy_from_spectrum(solver.eigenvalues());
}

}  // namespace detail

/// Entanglement entropy (nats) of sites {1..ell} from the leading ell x ell block of C.
inline double block_entropy(const CorrelationMatrix& c, int ell) {
    const int L = c.sites();
    if (ell < 1 || ell > L - 1)
        throw ValidationError("ell", "cut " + std::to_string(ell) + " outside [1, " + std::to_string(L - 1) + "]");
    return detail::hermitian_block_entropy(c.matrix.topLeftCorner(ell, ell));
}

enum class ProfileMethod {
    /// Diagonalize the leading ell x ell block for every cut.
    Direct,
    /// For a globally pure state S(A) = S(complement), so cuts past L/2 use the
    /// smaller trailing block. Only valid for pure Gaussian states.
    PureComplement,
};

inline EntropyProfile entropy_profile(const CorrelationMatrix& c, ProfileMethod method = ProfileMethod::Direct) {
    const int L = c.sites();
    EntropyProfile p;
    p.time = c.time;
    p.entropies.resize(static_cast<std::size_t>(std::max(L - 1, 0)));
    for (int ell = 1; ell <= L - 1; ++ell) {
        double s;
        if (method == ProfileMethod::PureComplement && ell > L / 2)
            s = detail::hermitian_block_entropy(c.matrix.bottomRightCorner(L - ell, L - ell));
        else
            s = detail::hermitian_block_entropy(c.matrix.topLeftCorner(ell, ell));
        p.entropies[static_cast<std::size_t>(ell - 1)] = s;
    }
    return p;
}

}  // namespace fcl
