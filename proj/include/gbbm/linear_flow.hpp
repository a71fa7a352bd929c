#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "gbbm/spectral.hpp"

namespace gbbm {

// A spectral profile f^(xi) of a real function, supported in the annulus
// support_min <= |xi| <= support_max (the value is taken as zero outside).
struct SpectralProfile {
    std::string name;
    std::function<cplx(double)> value;
    double support_min = 0.0;
    double support_max = 0.0;
    double spatial_width = 1.0;  // length scale of the data in x

    bool empty() const { return !(support_max > support_min); }
};

// f(x) = exp(-x^2 / (2 w^2)), f^ = w exp(-w^2 xi^2 / 2), cut where f^ < 1e-18.
SpectralProfile gaussian_profile(double width = 1.0);
// f^ = psi_k: data living in a single dyadic band.
SpectralProfile band_profile(int k);
// Even Gaussian bump in |xi| - sqrt(3) of the given width.
SpectralProfile near_sqrt3_profile(double width = 0.2);
// psi_k f^ with the support intersected with the band.
SpectralProfile restrict_to_band(const SpectralProfile& f, int k);

struct QuadratureOptions {
    double phase_step = 0.3141592653589793;  // max phase advance per node
    double rel_tol = 1e-6;
    std::size_t max_nodes = std::size_t{1} << 26;
};

struct QuadratureResult {
    cplx value;
    double error_estimate = 0.0;
    std::size_t nodes = 0;
};

// u(t, x) = (1/sqrt(2 pi)) int exp(i(xi x - omega(xi) t)) f^(xi) dxi by the
// trapezoid rule, refined until two resolutions agree to rel_tol (relative
// to max(|u|, (1/sqrt(2 pi)) int |f^|)). Throws ResolutionError.
QuadratureResult evaluate_lp_piece(const SpectralProfile& f, double t, double x,
                                   const QuadratureOptions& opts = {});

struct ScanOptions {
    double oversample = 8.0;       // grid points per shortest wavelength
    std::size_t candidates = 6;    // local maxima refined by direct quadrature
    std::size_t max_fft = std::size_t{1} << 24;
};

struct SupNormResult {
    double value = 0.0;
    double argmax = 0.0;
    std::size_t scan_points = 0;
};

// sup_x |u(t, x)| over |x| <= 1.05 t max|omega'| + 10 width: FFT scan
// followed by local refinement of the largest maxima.
SupNormResult sup_norm(const SpectralProfile& f, double t, const ScanOptions& opts = {});
SupNormResult sup_norm_of_piece(const SpectralProfile& f, int k, double t, const ScanOptions& opts = {});

struct EstimateConstants {
    double c_hi = 16.0;
    double c_lo = 0.25;
    double s = 5.5;
};

// Frequency regime 1..5 of the dyadic estimate for band k at time t.
int estimate_case(int k, double t, const EstimateConstants& c = {});

struct ProfileNorms {
    double linf = 0.0;     // sup |f^|
    double sobolev = 0.0;  // ||f||_{H^s}
};
ProfileNorms profile_norms(const SpectralProfile& f, double s);
// || d/dxi (psi_k f^) ||_{L^2}
double band_derivative_norm(const SpectralProfile& f, int k);

double estimate_rhs(int case_id, int k, double t, const ProfileNorms& norms, double band_derivative,
                    const EstimateConstants& c = {});

struct EstimateRow {
    double t = 0.0;
    int k = 0;
    int case_id = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

std::vector<EstimateRow> verify_dispersive_estimate(const SpectralProfile& f, int k_min, int k_max,
                                                    const std::vector<double>& times,
                                                    const EstimateConstants& c = {},
                                                    const ScanOptions& opts = {});

// Exact linear flow: multiply by exp(-i omega dt).
SpectralField propagate_linear(const SpectralField& f, double dt);

}  // namespace gbbm
