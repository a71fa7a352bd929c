#include "gbbm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gbbm/errors.hpp"
#include "gbbm/fft.hpp"

namespace gbbm {

namespace {
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void require_same_grid(const SpectralField& a, const SpectralField& b) {
    if (a.grid.n != b.grid.n || a.grid.half_length != b.grid.half_length) {
        throw ValidationError("spectral fields live on different grids");
    }
}
}  // namespace

Grid::Grid(std::size_t n_, double half_length_) : n(n_), half_length(half_length_) {
    if (n < 4 || (n & (n - 1)) != 0) throw ValidationError("grid.n must be a power of two >= 4");
    if (!(half_length > 0.0) || !std::isfinite(half_length)) {
        throw ValidationError("grid.half_length must be positive");
    }
}

double Grid::dxi() const { return std::numbers::pi / half_length; }

double Grid::nyquist() const { return dxi() * static_cast<double>(n / 2); }

long Grid::wavenumber(std::size_t i) const {
    return i < n / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
}

double Grid::frequency(std::size_t i) const { return dxi() * static_cast<double>(wavenumber(i)); }

std::size_t Grid::index(long j) const {
    return j >= 0 ? static_cast<std::size_t>(j) : static_cast<std::size_t>(j + static_cast<long>(n));
}

SpectralField from_physical(const Grid& g, const std::vector<double>& u, double t) {
    if (u.size() != g.n) throw ValidationError("physical samples do not match grid size");
    RealFft fft(g.n);
    std::copy(u.begin(), u.end(), fft.real());
    fft.forward();
    SpectralField f(g, t);
    const double scale = g.dx() * kInvSqrt2Pi;
    for (std::size_t j = 0; j < g.n / 2; ++j) {
        const cplx c = (j % 2 == 0 ? scale : -scale) * fft.spectrum()[j];
        f.coeffs[j] = c;
        if (j > 0) f.coeffs[g.n - j] = std::conj(c);
    }
    f.coeffs[0] = f.coeffs[0].real();
    return f;
}

SpectralField from_function(const Grid& g, const std::function<double(double)>& u, double t) {
    std::vector<double> v(g.n);
    for (std::size_t m = 0; m < g.n; ++m) v[m] = u(g.x(m));
    return from_physical(g, v, t);
}

SpectralField from_transform(const Grid& g, const std::function<cplx(double)>& fhat, double t) {
    SpectralField f(g, t);
    for (std::size_t i = 0; i < g.n; ++i) f.coeffs[i] = fhat(g.frequency(i));
    f.coeffs[g.n / 2] = 0.0;
    return f;
}

std::vector<cplx> to_physical(const SpectralField& f) {
    const Grid& g = f.grid;
    ComplexFft fft(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double sign = (g.wavenumber(i) % 2 == 0) ? 1.0 : -1.0;
        fft.buffer()[i] = sign * f.coeffs[i];
    }
    fft.backward();
    const double scale = g.dxi() * kInvSqrt2Pi;
    std::vector<cplx> u(g.n);
    for (std::size_t m = 0; m < g.n; ++m) u[m] = scale * fft.buffer()[m];
    return u;
}

double l2_norm(const SpectralField& f) {
    double s = 0.0;
    for (const auto& c : f.coeffs) s += std::norm(c);
    return std::sqrt(s * f.grid.dxi());
}

double h1_norm(const SpectralField& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.grid.n; ++i) {
        const double xi = f.grid.frequency(i);
        s += (1.0 + xi * xi) * std::norm(f.coeffs[i]);
    }
    return std::sqrt(s * f.grid.dxi());
}

double max_abs(const SpectralField& f) {
    double m = 0.0;
    for (const auto& c : f.coeffs) m = std::max(m, std::abs(c));
    return m;
}

double max_abs_difference(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) m = std::max(m, std::abs(a.coeffs[i] - b.coeffs[i]));
    return m;
}

double l2_difference(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) s += std::norm(a.coeffs[i] - b.coeffs[i]);
    return std::sqrt(s * a.grid.dxi());
}

}  // namespace gbbm
