#pragma once

#include <vector>

#include "gbbm/spectral.hpp"

namespace gbbm {

// Smooth even bump: 1 on [-1, 1], 0 outside [-2, 2], with the standard
// exp(-1/s) transition in between.
double base_bump(double xi);
// psi(xi) = phi(xi) - phi(2 xi), supported in 1/2 <= |xi| <= 2.
double annular_bump(double xi);
// phi(xi / 2^k) and psi(xi / 2^k).
double low_pass_bump(int k, double xi);
double band_bump(int k, double xi);

enum class ProjectionMode { band, low_pass };

// Multiply by psi_k (band) or phi_{<=k} (low_pass). Throws ValidationError
// when the requested band lies entirely above the grid's Nyquist frequency.
SpectralField project(const SpectralField& f, int k, ProjectionMode mode);

// k_low: coarsest low-pass index that still separates from the zero mode;
// k_high: first index with phi_{<=k_high} = 1 on every grid frequency.
struct DyadicRange {
    int k_low = 0;
    int k_high = 0;
};
DyadicRange dyadic_range(const Grid& g);

// f = low + sum of bands[k - range.k_low - 1] for k in (k_low, k_high].
struct Decomposition {
    DyadicRange range;
    SpectralField low;
    std::vector<SpectralField> bands;
};
Decomposition decompose(const SpectralField& f);

}  // namespace gbbm
