#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fcl/complexity_measures.hpp"
#include "fcl/errors.hpp"
#include "fcl/lattice_model.hpp"

namespace fcl {

/// Fractional part, frac(1.42) = 0.42.
inline double frac(double x) { return x - std::floor(x); }

/// Single-species quasiparticle data for the tight-binding chain.
struct QuasiparticleInput {
    int L = 2;
    std::function<double(double)> velocity = group_velocity;
    std::function<double(double)> entropy_density = [](double) { return std::numbers::ln2; };
    int quadrature_points = 8192;
    /// Periodic: pairs travel on a ring of L sites, blocks have two endpoints.
    /// Open: reflecting walls; an edge block of ell sites on L sites behaves as
    /// half of a 2*ell block on a ring of 2L sites.
    Boundary boundary = Boundary::Periodic;
};

/// Quasiparticle entanglement predictions evaluated by the trapezoidal rule on
/// a uniform periodic k grid over [-pi, pi). Velocities and entropy densities
/// are sampled once at construction.
class QuasiparticleModel {
public:
    explicit QuasiparticleModel(const QuasiparticleInput& in) : L_(in.L), boundary_(in.boundary) {
        if (in.L < 2) throw ValidationError("L", "lattice size must be at least 2");
        if (in.quadrature_points < 256)
            throw ValidationError("quadrature_points", "need at least 256 points, got " + std::to_string(in.quadrature_points));
        const auto grid = uniform_k_grid(in.quadrature_points);
        speed_.reserve(grid.size());
        density_.reserve(grid.size());
        for (double k : grid) {
            const double s = in.entropy_density(k);
            if (!(s >= 0.0 && s <= std::numbers::ln2 + 1e-12))
                throw ValidationError("entropy_density", "s(k) must lie in [0, ln 2]");
            speed_.push_back(std::abs(in.velocity(k)));
            density_.push_back(s);
        }
    }

    int sites() const { return L_; }
    Boundary boundary() const { return boundary_; }

    /// Space-time scaling form: 2t * int_{2|v|t<ell} dk/2pi |v| s + ell * int_{2|v|t>=ell} dk/2pi s.
    double entropy_scaling(int ell, double t) const {
        if (ell < 1 || 2 * ell > L_)
            throw ValidationError("ell", "scaling form needs 1 <= ell <= L/2, got " + std::to_string(ell));
        if (!(t >= 0.0)) throw ValidationError("t", "time must be nonnegative");
        if (boundary_ == Boundary::Open) return 0.5 * interval_scaling(2.0 * ell, t);
        return interval_scaling(static_cast<double>(ell), t);
    }

    /// Finite-size form: each pair contributes s_k * min(L f, ell, L (1 - f)) with
    /// f = frac(2|v_k| t / L). Periodic in t, with revivals when pairs reunite.
    double entropy_finite_size(int ell, double t) const {
        if (ell < 1 || ell > L_ - 1)
            throw ValidationError("ell", "cut " + std::to_string(ell) + " outside [1, " + std::to_string(L_ - 1) + "]");
        if (!(t >= 0.0)) throw ValidationError("t", "time must be nonnegative");
        // Complement symmetry; the three-region formula is stated for ell <= L/2.
        const int block = std::min(ell, L_ - ell);
        const double lf = static_cast<double>(L_);
        const double x = static_cast<double>(block) / lf;
        const double travel = boundary_ == Boundary::Open ? t / lf : 2.0 * t / lf;
        double acc = 0.0;
        for (std::size_t m = 0; m < speed_.size(); ++m) {
            const double f = frac(speed_[m] * travel);
            double weight;
            if (f <= x)
                weight = lf * f;
            else if (f <= 1.0 - x)
                weight = static_cast<double>(block);
            else
                weight = lf * (1.0 - f);
            acc += density_[m] * weight;
        }
        return acc / static_cast<double>(speed_.size());
    }

    /// (1/ln 2) sum_{ell=1}^{L-1} entropy_finite_size(ell, t).
    double gec_prediction(double t) const {
        double sum = 0.0;
        for (int ell = 1; ell <= L_ - 1; ++ell) sum += entropy_finite_size(ell, t);
        return sum / std::numbers::ln2;
    }

    /// GEC from the scaling form, using S(ell) = S(L - ell).
    double gec_prediction_scaling(double t) const {
        double sum = 0.0;
        for (int ell = 1; ell <= L_ - 1; ++ell) sum += entropy_scaling(std::min(ell, L_ - ell), t);
        return sum / std::numbers::ln2;
    }

private:
    double interval_scaling(double ell, double t) const {
        double ramp = 0.0;
        double plateau = 0.0;
        for (std::size_t m = 0; m < speed_.size(); ++m) {
            if (2.0 * speed_[m] * t <= ell)
                ramp += speed_[m] * density_[m];
            else
                plateau += density_[m];
        }
        const double n = static_cast<double>(speed_.size());
        return (2.0 * t * ramp + ell * plateau) / n;
    }

    int L_;
    Boundary boundary_;
    std::vector<double> speed_;
    std::vector<double> density_;
};

/// Tight-binding quench from the Neel state: v_k = 2 sin k, s_k = ln 2.
inline QuasiparticleInput neel_quasiparticle_input(int L, Boundary boundary = Boundary::Periodic, int points = 8192) {
    QuasiparticleInput in;
    in.L = L;
    in.boundary = boundary;
    in.quadrature_points = points;
    return in;
}

/// Quasiparticle data for an occupation-basis product state, s_k from its momentum occupations.
inline QuasiparticleInput product_state_quasiparticle_input(const ProductState& state, Boundary boundary = Boundary::Periodic,
                                                            int points = 8192) {
    QuasiparticleInput in = neel_quasiparticle_input(state.sites(), boundary, points);
    // n_k is flat for product states, so one sample fixes s_k.
    const double s = occupation_spectrum(state, {0.0}).s_k.front();
    in.entropy_density = [s](double) { return s; };
    return in;
}

}  // namespace fcl
