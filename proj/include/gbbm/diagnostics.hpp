#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gbbm/spectral.hpp"

namespace gbbm {

// Norms of a profile snapshot f^ (time taken from the field).
struct NormSample {
    double t = 0.0;
    double linf_fhat = 0.0;    // sup |f^|
    double weighted_l2 = 0.0;  // ||x f||_2 = ||d/dxi f^||_2
    double sobolev = 0.0;      // ||f||_{H^s}
    double sobolev_index = 0.0;
    double sup_u = 0.0;        // sup_x |u(t, x)| on the grid
};

// ||d/dxi f^||_2 by second-order differences (one-sided at the ends).
double weighted_l2_norm(const SpectralField& fhat);
double sobolev_norm(const SpectralField& fhat, double s);
// min(requested, 100, largest s for which the weighted sum cannot overflow).
double effective_sobolev_index(const SpectralField& fhat, double requested);
NormSample compute_norms(const SpectralField& fhat, double s = 10.0);

struct DecayFit {
    double exponent = 0.0;  // slope of log value against log t
    double prefactor = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

// Least-squares power law through the samples (t, value) with
// t_min <= t <= t_max. Throws DegenerateFitError with fewer than 4 points
// or a non-positive value.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples, double t_min, double t_max);

struct ScatteringRow {
    double t = 0.0;  // earlier time of the dyadic pair (t, 2t)
    double diff_linf = 0.0;
    double diff_l2 = 0.0;
};

struct ScatteringReport {
    std::vector<ScatteringRow> rows;
    std::optional<DecayFit> fit;  // of diff_linf; absent if a difference vanishes

    // Strictly decreasing diff_linf over rows with t >= t_min.
    bool monotone_from(double t_min) const;
};

// Differences of profile snapshots at dyadically related times. Throws
// InsufficientDataError with fewer than three pairs (t, 2t).
ScatteringReport scattering_test(const std::vector<SpectralField>& profiles);

struct BootstrapBudget {
    double p0 = 1.0 / 6.0 - 1e-3;
    double p1 = 1e-3;
    double tolerance = 0.05;
};

struct BootstrapSummary {
    double sup_linf = 0.0;
    double sup_weighted = 0.0;  // sup t^{-p0} ||x f||
    double sup_sobolev = 0.0;   // sup t^{-p1} ||f||_{H^s}
    double norm = 0.0;          // sup of the sum of the three
    std::optional<DecayFit> weighted_fit;
    std::optional<DecayFit> sobolev_fit;
    bool weighted_violation = false;
    bool sobolev_violation = false;
};

BootstrapSummary bootstrap_report(const std::vector<NormSample>& samples, const BootstrapBudget& budget = {});

}  // namespace gbbm
