#include "gbbm/nonlinear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gbbm/dispersion.hpp"
#include "gbbm/errors.hpp"
#include "gbbm/fft.hpp"

namespace gbbm {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kBlowUp = 1e10;

cplx phase_factor(double arg) { return {std::cos(arg), std::sin(arg)}; }

}  // namespace

void SolverConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive");
    if (dt > 0.1) throw ValidationError("dt must not exceed 0.1");
    if (!std::isfinite(t0)) throw ValidationError("t0 must be finite");
    if (!(t_end > t0)) throw ValidationError("t_end must exceed t0");
    if (pad < 1) throw ValidationError("pad must be at least 1");
    Grid check(grid.n, grid.half_length);
    for (double t : record_times) {
        if (!(t >= t0 && t <= t_end)) throw ValidationError("record_times must lie in [t0, t_end]");
    }
}

GbbmSolver::GbbmSolver(const Grid& g, std::size_t pad, bool nonlinear, Formulation formulation)
    : grid_(g), pad_(pad), nonlinear_(nonlinear), formulation_(formulation), omega_(g.n) {
    if (pad_ < 1) throw ValidationError("pad must be at least 1");
    for (std::size_t i = 0; i < g.n; ++i) omega_[i] = omega(g.frequency(i));
    fft_ = std::make_unique<RealFft>(pad_ * g.n);
}

GbbmSolver::~GbbmSolver() = default;

SpectralField GbbmSolver::quartic(const SpectralField& u) const {
    const std::size_t n = grid_.n;
    const std::size_t m = fft_->size();
    cplx* spec = fft_->spectrum();
    std::fill(spec, spec + m / 2 + 1, cplx(0.0));
    const double in_scale = grid_.dxi() * kInvSqrt2Pi;
    for (std::size_t j = 0; j < n / 2; ++j) {
        spec[j] = (j % 2 == 0 ? in_scale : -in_scale) * u.coeffs[j];
    }
    fft_->backward();
    double* v = fft_->real();
    for (std::size_t i = 0; i < m; ++i) {
        const double s = v[i] * v[i];
        v[i] = s * s;
    }
    fft_->forward();
    SpectralField out(grid_, u.time);
    const double out_scale = 2.0 * grid_.half_length / static_cast<double>(m) * kInvSqrt2Pi;
    for (std::size_t j = 0; j < n / 2; ++j) {
        const cplx c = (j % 2 == 0 ? out_scale : -out_scale) * spec[j];
        out.coeffs[j] = c;
        if (j > 0) out.coeffs[n - j] = std::conj(c);
    }
    out.coeffs[0] = out.coeffs[0].real();
    return out;
}

void GbbmSolver::derivative(const std::vector<cplx>& state, double t, Formulation form,
                            std::vector<cplx>& out) const {
    const std::size_t n = grid_.n;
    for (const auto& c : state) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > kBlowUp) {
            throw BlowUpError("spectral coefficient exceeded 1e10 at t = " + std::to_string(t));
        }
    }
    out.assign(n, 0.0);
    SpectralField u(grid_, t);
    if (form == Formulation::physical) {
        u.coeffs = state;
    } else {
        if (!nonlinear_) return;
        for (std::size_t i = 0; i < n; ++i) u.coeffs[i] = phase_factor(-omega_[i] * t) * state[i];
    }
    const SpectralField nl = nonlinear_ ? quartic(u) : SpectralField(grid_, t);
    for (std::size_t i = 0; i < n; ++i) {
        if (form == Formulation::physical) {
            out[i] = cplx(0.0, -omega_[i]) * (state[i] + nl.coeffs[i]);
        } else {
            out[i] = cplx(0.0, -omega_[i]) * phase_factor(omega_[i] * t) * nl.coeffs[i];
        }
    }
    out[n / 2] = 0.0;
}

SpectralField GbbmSolver::rhs(const SpectralField& u) const {
    SpectralField out(grid_, u.time);
    derivative(u.coeffs, u.time, Formulation::physical, out.coeffs);
    return out;
}

void GbbmSolver::step(SpectralField& state, double dt) const {
    const std::size_t n = grid_.n;
    const double t = state.time;
    std::vector<cplx> k1, k2, k3, k4, tmp(n);
    derivative(state.coeffs, t, formulation_, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = state.coeffs[i] + 0.5 * dt * k1[i];
    derivative(tmp, t + 0.5 * dt, formulation_, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = state.coeffs[i] + 0.5 * dt * k2[i];
    derivative(tmp, t + 0.5 * dt, formulation_, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = state.coeffs[i] + dt * k3[i];
    derivative(tmp, t + dt, formulation_, k4);
    for (std::size_t i = 0; i < n; ++i) {
        state.coeffs[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    state.time = t + dt;
}

SpectralField GbbmSolver::evolve(const SpectralField& u0, const SolverConfig& cfg, const Recorder& rec) const {
    cfg.validate();
    if (u0.grid.n != grid_.n || u0.grid.half_length != grid_.half_length) {
        throw ValidationError("initial data grid does not match the solver grid");
    }
    std::vector<double> stops = cfg.record_times;
    stops.push_back(cfg.t_end);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    SpectralField state = u0;
    state.time = cfg.t0;
    const bool profile = formulation_ == Formulation::profile;
    if (profile) state = to_profile(state);
    auto emit = [&]() {
        if (rec) rec(profile ? from_profile(state) : state);
    };
    emit();
    double t = cfg.t0;
    for (double stop : stops) {
        if (stop <= t) continue;
        const auto steps = static_cast<long>(std::ceil((stop - t) / cfg.dt - 1e-9));
        const double h = (stop - t) / static_cast<double>(steps);
        for (long s = 0; s < steps; ++s) {
            step(state, h);
            state.time = t + static_cast<double>(s + 1) * h;
        }
        state.time = stop;
        t = stop;
        emit();
    }
    return profile ? from_profile(state) : state;
}

SpectralField to_profile(const SpectralField& u) {
    SpectralField f(u.grid, u.time);
    for (std::size_t i = 0; i < u.grid.n; ++i) {
        f.coeffs[i] = phase_factor(omega(u.grid.frequency(i)) * u.time) * u.coeffs[i];
    }
    return f;
}

SpectralField from_profile(const SpectralField& f) {
    SpectralField u(f.grid, f.time);
    for (std::size_t i = 0; i < f.grid.n; ++i) {
        u.coeffs[i] = phase_factor(-omega(f.grid.frequency(i)) * f.time) * f.coeffs[i];
    }
    return u;
}

double realness_defect(const SpectralField& u) {
    double m = 0.0;
    for (const auto& v : to_physical(u)) m = std::max(m, std::abs(v.imag()));
    return m;
}

double band_energy(const SpectralField& u, double cutoff) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.grid.n; ++i) {
        if (std::abs(u.grid.frequency(i)) >= cutoff) s += std::norm(u.coeffs[i]);
    }
    return s * u.grid.dxi();
}

}  // namespace gbbm
