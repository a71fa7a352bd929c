#include "gbbm/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gbbm/errors.hpp"

namespace gbbm {

double omega(double xi) { return xi / (1.0 + xi * xi); }

double omega_prime(double xi) {
    const double q = 1.0 + xi * xi;
    return (1.0 - xi * xi) / (q * q);
}

double omega_second(double xi) {
    const double q = 1.0 + xi * xi;
    return 2.0 * xi * (xi * xi - 3.0) / (q * q * q);
}

double omega_third(double xi) {
    const double x2 = xi * xi;
    const double q = 1.0 + x2;
    return -6.0 * (x2 * x2 - 6.0 * x2 + 1.0) / (q * q * q * q);
}

double reflection(double xi) {
    const double a = std::abs(xi);
    if (!(a > 1.0 + 1e-12)) {
        throw DomainError("reflection map undefined for |xi| <= 1 (xi = " + std::to_string(xi) + ")");
    }
    const double r = std::sqrt((a * a + 3.0) / ((a - 1.0) * (a + 1.0)));
    return xi > 0 ? r : -r;
}

double max_group_speed(double a, double b) {
    a = std::abs(a);
    b = std::abs(b);
    if (a > b) std::swap(a, b);
    if (a == 0.0) return 1.0;
    double m = std::max(std::abs(omega_prime(a)), std::abs(omega_prime(b)));
    if (a <= kSqrt3 && kSqrt3 <= b) m = std::max(m, 0.125);
    return m;
}

namespace {

// Squared positive root of omega'(xi) = c for c in [-1/8, 1], written without
// the cancellation of the textbook form near c = 0.
double inverse_square(double c) {
    const double s = std::sqrt(8.0 * c + 1.0);
    return 2.0 * (1.0 - c) / (s + 2.0 * c + 1.0);
}

// xi*^2 - 1, evaluated directly so that r(xi*) stays accurate as c -> 0-.
double inverse_square_minus_one(double c) {
    const double s = std::sqrt(8.0 * c + 1.0);
    return 16.0 * c * (c - 1.0) / ((1.0 - 4.0 * c + s) * (s + 2.0 * c + 1.0));
}

}  // namespace

GroupVelocitySolutions solve_group_velocity(double c, double tol) {
    GroupVelocitySolutions out;
    out.c = c;
    std::vector<double> cand;
    if (!std::isfinite(c) || c < -0.125 || c > 1.0) {
        // no real solutions
    } else if (c == 1.0) {
        cand = {0.0};
    } else if (c == 0.0) {
        cand = {-1.0, 1.0};
    } else if (c == -0.125) {
        cand = {-kSqrt3, kSqrt3};
    } else {
        const double x = std::sqrt(inverse_square(c));
        cand = {-x, x};
        if (c < 0.0) {
            const double q = inverse_square(c);
            const double r = std::sqrt((q + 3.0) / inverse_square_minus_one(c));
            cand.push_back(-r);
            cand.push_back(r);
        }
    }
    for (double x : cand) {
        if (std::abs(omega_prime(x) - c) < tol) out.xi.push_back(x);
    }
    std::sort(out.xi.begin(), out.xi.end());
    return out;
}

}  // namespace gbbm
