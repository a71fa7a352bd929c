#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace gbbm {

using cplx = std::complex<double>;

// Periodic grid x_m = -L + m dx on [-L, L), m = 0..n-1, with wavenumbers
// xi_j = pi j / L. Spectral storage uses FFT order: index i holds
// j = i for i < n/2 and j = i - n otherwise.
struct Grid {
    std::size_t n = 0;
    double half_length = 0.0;

    Grid() = default;
    Grid(std::size_t n_, double half_length_);  // throws ValidationError

    double dx() const { return 2.0 * half_length / static_cast<double>(n); }
    double dxi() const;
    double nyquist() const;
    double x(std::size_t m) const { return -half_length + static_cast<double>(m) * dx(); }
    long wavenumber(std::size_t i) const;
    double frequency(std::size_t i) const;
    std::size_t index(long j) const;
};

// Samples of the unitary Fourier transform (1/sqrt(2 pi)) int e^{-ix xi} u dx
// on the grid frequencies, at time t.
struct SpectralField {
    Grid grid;
    double time = 0.0;
    std::vector<cplx> coeffs;

    SpectralField() = default;
    SpectralField(const Grid& g, double t) : grid(g), time(t), coeffs(g.n) {}
};

SpectralField from_physical(const Grid& g, const std::vector<double>& u, double t);
SpectralField from_function(const Grid& g, const std::function<double(double)>& u, double t);
// Sample a continuous transform directly; the Nyquist mode is zeroed.
SpectralField from_transform(const Grid& g, const std::function<cplx(double)>& fhat, double t);
std::vector<cplx> to_physical(const SpectralField& f);

double l2_norm(const SpectralField& f);
double h1_norm(const SpectralField& f);
double max_abs(const SpectralField& f);
// max_j |a_j - b_j|; grids must match.
double max_abs_difference(const SpectralField& a, const SpectralField& b);
double l2_difference(const SpectralField& a, const SpectralField& b);

}  // namespace gbbm
