#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "gbbm/spectral.hpp"

namespace gbbm {

class RealFft;

// Evolve u^ (physical) or the profile f^ = exp(i omega t) u^ (profile).
enum class Formulation { physical, profile };

struct SolverConfig {
    Grid grid;
    double dt = 0.01;
    double t0 = 1.0;
    double t_end = 2.0;
    std::size_t pad = 3;  // zero-padding factor for the quartic product; 1 disables dealiasing
    bool nonlinear = true;
    Formulation formulation = Formulation::physical;
    // Times at which the recorder fires; the integrator lands on each
    // exactly by shortening the steps of the segment leading up to it.
    std::vector<double> record_times;

    void validate() const;  // throws ValidationError naming the field
};

// Called with u^ at t0, at every record time, and at t_end.
using Recorder = std::function<void(const SpectralField& u)>;

// Pseudo-spectral RK4 integrator for u^_t = -i omega(xi) (u^ + (u^4)^).
class GbbmSolver {
public:
    explicit GbbmSolver(const Grid& g, std::size_t pad = 3, bool nonlinear = true,
                        Formulation formulation = Formulation::physical);
    ~GbbmSolver();
    GbbmSolver(const GbbmSolver&) = delete;
    GbbmSolver& operator=(const GbbmSolver&) = delete;

    const Grid& grid() const { return grid_; }

    // Dealiased transform of u^4 restricted to the grid modes (Nyquist zeroed).
    SpectralField quartic(const SpectralField& u) const;
    // Time derivative of u^ in the physical formulation. Throws BlowUpError
    // when a coefficient is non-finite or exceeds 1e10 in modulus.
    SpectralField rhs(const SpectralField& u) const;
    // One classical RK4 step of size dt (negative dt integrates backwards).
    // `state` holds u^ or f^ according to the formulation; its time advances.
    void step(SpectralField& state, double dt) const;

    SpectralField evolve(const SpectralField& u0, const SolverConfig& cfg, const Recorder& rec = {}) const;

private:
    void derivative(const std::vector<cplx>& state, double t, Formulation form, std::vector<cplx>& out) const;

    Grid grid_;
    std::size_t pad_;
    bool nonlinear_;
    Formulation formulation_;
    std::vector<double> omega_;
    std::unique_ptr<RealFft> fft_;
};

SpectralField to_profile(const SpectralField& u);
SpectralField from_profile(const SpectralField& f);
// max_m |Im u(x_m)| of the physical field.
double realness_defect(const SpectralField& u);
// Sum of |u^_j|^2 dxi over |xi_j| >= cutoff.
double band_energy(const SpectralField& u, double cutoff);

}  // namespace gbbm
