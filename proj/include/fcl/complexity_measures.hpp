#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fcl/errors.hpp"
#include "fcl/gaussian_dynamics.hpp"

namespace fcl {

/// Entangling-rate constant of the linear cost bound.
inline constexpr double kDefaultEntanglingRate = 2.0;

/// One sample of the geometric entanglement capacity (lower cost bound) and
/// the linear circuit-cost upper bound at the same time.
///
/// The upper bound saturates once the linear form reaches c (L-1) 4^L, the
/// generic two-qubit gate count of an arbitrary unitary on L qubits. That
/// horizon is never reached at simulated times, so `E_g_upper` carries the
/// linear form and `upper_bound_saturated()` reports the symbolic cap.
struct GecPoint {
    double time = 0.0;
    int L = 0;
    double E_g = 0.0;
    double E_g_upper = 0.0;
    double c = kDefaultEntanglingRate;
    int local_dimension = 2;

    /// log_4 of the saturation time; the cap applies when t >= 4^L.
    double log4_saturation_time() const { return static_cast<double>(L); }
    bool upper_bound_saturated() const { return std::log(time) / std::log(4.0) >= log4_saturation_time(); }
};

/// Largest attainable GEC for L qubits, L^2/4.
inline double gec_max(int L) { return 0.25 * static_cast<double>(L) * static_cast<double>(L); }

/// c (L-1) t.
inline double gec_upper_bound(int L, double t, double c = kDefaultEntanglingRate) {
    if (L < 2) throw ValidationError("L", "lattice size must be at least 2");
    if (!(t >= 0.0)) throw ValidationError("t", "time must be nonnegative");
    if (!(c > 0.0)) throw ValidationError("c", "entangling-rate constant must be positive");
    return c * static_cast<double>(L - 1) * t;
}

/// Sum of all L-1 cut entropies in units of ln 2.
inline double gec_value(const EntropyProfile& profile) {
    double sum = 0.0;
    for (double s : profile.entropies) sum += s;
    return sum / std::numbers::ln2;
}

/// Same sum reading only ell <= L/2. Prefix and suffix cuts of equal length
/// agree only for reflection-symmetric settings (e.g. Neel on a ring); for
/// anything else use gec_value.
inline double gec_value_symmetric(const EntropyProfile& profile) {
    const int L = profile.sites();
    double sum = 0.0;
    for (int ell = 1; ell <= L - 1; ++ell) sum += profile.at(std::min(ell, L - ell));
    return sum / std::numbers::ln2;
}

inline GecPoint gec(const EntropyProfile& profile, double c = kDefaultEntanglingRate) {
    GecPoint g;
    g.time = profile.time;
    g.L = profile.sites();
    g.c = c;
    g.E_g = gec_value(profile);
    g.E_g_upper = gec_upper_bound(g.L, profile.time, c);
    return g;
}

/// Momentum occupations n_k and GGE entropy densities s_k.
struct OccupationSpectrum {
    std::vector<double> k;
    std::vector<double> n_k;
    std::vector<double> s_k;
};

/// n_k = (1/L) sum_{jl} e^{i(j-l)k} <c_j^dagger c_l>.
inline OccupationSpectrum occupation_spectrum(const CorrelationMatrix& c, const std::vector<double>& k_grid) {
    const int L = c.sites();
    OccupationSpectrum out;
    out.k = k_grid;
    out.n_k.reserve(k_grid.size());
    out.s_k.reserve(k_grid.size());
    for (double k : k_grid) {
        Eigen::VectorXcd phase(L);
        for (int j = 0; j < L; ++j) phase[j] = std::polar(1.0, k * j);
        // sum_{jl} e^{ikj} C_jl e^{-ikl} = phase^T C conj(phase)
        const std::complex<double> acc = phase.transpose() * c.matrix * phase.conjugate();
        double n = acc.real() / L;
        if (n < -kEigenvalueHealth || n > 1.0 + kEigenvalueHealth)
            throw NumericalHealthError("momentum occupation outside [0, 1]");
        n = std::clamp(n, 0.0, 1.0);
        out.n_k.push_back(n);
        out.s_k.push_back(mode_entropy(n));
    }
    return out;
}

/// For occupation-basis states <c_j^dagger c_l> = delta_jl occ_j, so n_k = N/L for every k.
inline OccupationSpectrum occupation_spectrum(const ProductState& state, const std::vector<double>& k_grid) {
    return occupation_spectrum(initial_correlation(state), k_grid);
}

/// Uniform grid k_m = -pi + 2 pi m / n, m = 0..n-1.
inline std::vector<double> uniform_k_grid(int n) {
    if (n < 1) throw ValidationError("quadrature_points", "grid needs at least one point");
    std::vector<double> k(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) k[m] = -std::numbers::pi + 2.0 * std::numbers::pi * m / n;
    return k;
}

}  // namespace fcl
