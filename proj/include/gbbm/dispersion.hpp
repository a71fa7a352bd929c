#pragma once

#include <vector>

namespace gbbm {

inline constexpr double kSqrt3 = 1.7320508075688772935;

// Linearized BBM dispersion relation omega(xi) = xi / (1 + xi^2) and its
// first two derivatives. omega is odd, omega' even, omega'' odd; the group
// velocity omega' takes values in [-1/8, 1].
double omega(double xi);
double omega_prime(double xi);
double omega_second(double xi);
double omega_third(double xi);

// Reflection map r(xi) = sgn(xi) sqrt((xi^2 + 3) / (xi^2 - 1)), the other
// frequency with the same group velocity. Involution on |xi| > 1 fixing
// +-sqrt(3). Throws DomainError for |xi| <= 1 + 1e-12.
double reflection(double xi);

// Largest |omega'| over the annulus a <= |xi| <= b.
double max_group_speed(double a, double b);

struct GroupVelocitySolutions {
    double c = 0.0;
    std::vector<double> xi;  // ascending
};

// All real xi with omega'(xi) = c. Roots whose residual exceeds tol are
// dropped, so the returned set may be smaller than the generic census only
// when the caller asks for an unattainable tolerance.
GroupVelocitySolutions solve_group_velocity(double c, double tol = 1e-12);

}  // namespace gbbm
