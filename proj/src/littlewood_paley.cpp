#include "gbbm/littlewood_paley.hpp"

#include <cmath>
#include <string>

#include "gbbm/errors.hpp"

namespace gbbm {

namespace {

double smooth_step_factor(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// 0 for s <= 0, 1 for s >= 1, C-infinity in between.
double smooth_step(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double a = smooth_step_factor(s);
    return a / (a + smooth_step_factor(1.0 - s));
}

}  // namespace

double base_bump(double xi) {
    const double a = std::abs(xi);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    return smooth_step(2.0 - a);
}

double annular_bump(double xi) { return base_bump(xi) - base_bump(2.0 * xi); }

double low_pass_bump(int k, double xi) { return base_bump(std::ldexp(xi, -k)); }

double band_bump(int k, double xi) { return annular_bump(std::ldexp(xi, -k)); }

SpectralField project(const SpectralField& f, int k, ProjectionMode mode) {
    const double nyq = f.grid.nyquist();
    if (mode == ProjectionMode::band && std::ldexp(1.0, k - 1) >= nyq) {
        throw ValidationError("band k = " + std::to_string(k) + " lies above the grid Nyquist frequency");
    }
    SpectralField out(f.grid, f.time);
    for (std::size_t i = 0; i < f.grid.n; ++i) {
        const double xi = f.grid.frequency(i);
        const double w = mode == ProjectionMode::band ? band_bump(k, xi) : low_pass_bump(k, xi);
        out.coeffs[i] = w * f.coeffs[i];
    }
    return out;
}

DyadicRange dyadic_range(const Grid& g) {
    DyadicRange r;
    r.k_low = static_cast<int>(std::ceil(std::log2(g.dxi())));
    r.k_high = static_cast<int>(std::ceil(std::log2(g.nyquist())));
    return r;
}

Decomposition decompose(const SpectralField& f) {
    Decomposition d;
    d.range = dyadic_range(f.grid);
    d.low = project(f, d.range.k_low, ProjectionMode::low_pass);
    for (int k = d.range.k_low + 1; k <= d.range.k_high; ++k) {
        d.bands.push_back(project(f, k, ProjectionMode::band));
    }
    return d;
}

}  // namespace gbbm
