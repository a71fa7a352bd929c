#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gbbm {

// Frequencies of a four-wave interaction; eta4 closes the sum to xi.
struct PhasePoint {
    double eta1 = 0.0;
    double eta2 = 0.0;
    double eta3 = 0.0;
    double xi = 0.0;

    double eta4() const { return xi - eta1 - eta2 - eta3; }
};

// phi = -omega(xi) + sum_{j=1..4} omega(eta_j)
double phase(const PhasePoint& p);
// d phi / d eta_j = omega'(eta_j) - omega'(eta4), j = 1..3
std::array<double, 3> phase_gradient(const PhasePoint& p);
double gradient_norm(const PhasePoint& p);

// Phase restricted to the critical sets of the resonance analysis, as
// functions of a single frequency |eta| > 1.
enum class ScalarFunction {
    three_eta_plus_r,     // 3w(e) + w(r) - w(3e + r)
    three_eta_minus_r,    // Xi(e) = 3w(e) - w(r) - w(3e - r)
    minus_eta_plus_r,     // -w(e) + w(r) - w(-e + r)
    eta_plus_r,           // -w(e) - w(r) + w(e + r)
    two_eta_plus_two_r,   // 2w(e) + 2w(r) - w(2e + 2r)
    two_eta_minus_two_r,  // 2w(e) - 2w(r) - w(2e - 2r)
};

inline constexpr std::array<ScalarFunction, 6> kScalarFunctions = {
    ScalarFunction::three_eta_plus_r,   ScalarFunction::three_eta_minus_r,
    ScalarFunction::minus_eta_plus_r,   ScalarFunction::eta_plus_r,
    ScalarFunction::two_eta_plus_two_r, ScalarFunction::two_eta_minus_two_r,
};

std::string_view name(ScalarFunction f);
// Throws DomainError for |eta| <= 1.
double evaluate(ScalarFunction f, double eta);

// Sign-change scan with `samples_per_unit` points per unit length followed by
// bisection. Roots are returned ascending with |f(root)| < tol. Tangential
// zeros without a sign change are not detected.
std::vector<double> find_roots(const std::function<double(double)>& f, double a, double b, double tol,
                               double samples_per_unit = 1e4);
// Same, for a scalar function; throws DomainError if [a, b] meets |eta| <= 1.
std::vector<double> find_roots(ScalarFunction f, double a, double b, double tol);

// Leading-order phase near the degenerate frequency sqrt(3), indexed by the
// sign sum s = sigma1 + sigma2 + sigma3:
//   Omega_s(xi) = (sqrt(3)/4) s - omega(xi) + omega(xi - s sqrt(3)).
double aux_omega(int sign_sum, double xi);
// Phase with all input frequencies at +-eta0:
//   Phi_s(xi) = -omega(xi) + omega(xi - s eta0) + s omega(eta0).
double aux_phi(int sign_sum, double eta0, double xi);

enum class Classification { space, time, space_time };
std::string_view name(Classification c);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct ResonantManifold {
    std::string formula;
    std::function<PhasePoint(double)> at;
    std::vector<Interval> domain;

    // n points spread over the domain intervals in proportion to length.
    std::vector<PhasePoint> sample(std::size_t n) const;
};

struct ResonanceRecord {
    std::string family;
    Classification classification = Classification::space;
    std::optional<PhasePoint> point;
    std::optional<ResonantManifold> manifold;
    // Isolated zeros of the phase found along a space-resonant manifold.
    std::vector<PhasePoint> time_resonant_points;
    bool symmetry_derived = false;
    double max_gradient_residual = 0.0;
    double max_phase_residual = 0.0;  // meaningful for space-time records
    double min_abs_phase = 0.0;       // over samples away from embedded zeros
};

// The isolated space-time resonance (eta0, eta0, eta0; xi0) with
// xi0 = 3 eta0 - r(eta0). Throws ConvergenceError if residuals exceed tol.
ResonanceRecord anomalous_resonance(double tol = 1e-12);

// Full census of critical points of the phase, up to permutation and
// negation. Manifolds are verified on `samples` points each.
std::vector<ResonanceRecord> enumerate_resonances(double tol = 1e-9, std::size_t samples = 100);

}  // namespace gbbm
