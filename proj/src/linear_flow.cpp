#include "gbbm/linear_flow.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include <boost/math/tools/minima.hpp>

#include "gbbm/dispersion.hpp"
#include "gbbm/errors.hpp"
#include "gbbm/fft.hpp"
#include "gbbm/littlewood_paley.hpp"

namespace gbbm {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kScanPhaseStep = std::numbers::pi / 10.0;

// Support of a profile as one or two closed intervals of xi.
std::vector<std::pair<double, double>> support_intervals(const SpectralProfile& f) {
    if (f.empty()) return {};
    if (f.support_min <= 0.0) return {{-f.support_max, f.support_max}};
    return {{-f.support_max, -f.support_min}, {f.support_min, f.support_max}};
}

cplx integrand(const SpectralProfile& f, double t, double x, double xi) {
    const double arg = xi * x - omega(xi) * t;
    return f.value(xi) * cplx(std::cos(arg), std::sin(arg));
}

struct TrapezoidSums {
    cplx fine;
    cplx coarse;
    double magnitude = 0.0;  // trapezoid sum of |integrand|
    std::size_t nodes = 0;
};

// Trapezoid sums at spacing ~h and 2h over every support interval.
TrapezoidSums trapezoid(const SpectralProfile& f, double t, double x, double h) {
    TrapezoidSums s;
    for (const auto& [lo, hi] : support_intervals(f)) {
        auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h));
        n = std::max<std::size_t>(n + (n % 2), 2);
        const double step = (hi - lo) / static_cast<double>(n);
        cplx fine = 0.0, coarse = 0.0;
        double mag = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            const double xi = lo + step * static_cast<double>(i);
            const cplx v = integrand(f, t, x, xi);
            const double w = (i == 0 || i == n) ? 0.5 : 1.0;
            fine += w * v;
            mag += w * std::abs(v);
            if (i % 2 == 0) coarse += ((i == 0 || i == n) ? 0.5 : 1.0) * v;
        }
        s.fine += step * fine;
        s.coarse += 2.0 * step * coarse;
        s.magnitude += step * mag;
        s.nodes += n + 1;
    }
    s.fine *= kInvSqrt2Pi;
    s.coarse *= kInvSqrt2Pi;
    s.magnitude *= kInvSqrt2Pi;
    return s;
}

double phase_rule_spacing(const SpectralProfile& f, double t, double x, double phase_step) {
    const double rate = std::abs(x) + t * max_group_speed(f.support_min, f.support_max);
    double h = (f.support_max - f.support_min) / 64.0;
    if (rate > 0.0) h = std::min(h, phase_step / rate);
    return h;
}

}  // namespace

SpectralProfile gaussian_profile(double width) {
    if (!(width > 0.0)) throw ValidationError("gaussian width must be positive");
    SpectralProfile f;
    f.name = "gaussian";
    f.value = [width](double xi) { return cplx(width * std::exp(-0.5 * width * width * xi * xi), 0.0); };
    f.support_min = 0.0;
    f.support_max = std::sqrt(2.0 * std::log(1e18)) / width;
    f.spatial_width = width;
    return f;
}

SpectralProfile band_profile(int k) {
    SpectralProfile f;
    f.name = "band" + std::to_string(k);
    f.value = [k](double xi) { return cplx(band_bump(k, xi), 0.0); };
    f.support_min = std::ldexp(1.0, k - 1);
    f.support_max = std::ldexp(1.0, k + 1);
    f.spatial_width = std::ldexp(1.0, -k);
    return f;
}

SpectralProfile near_sqrt3_profile(double width) {
    if (!(width > 0.0)) throw ValidationError("near-sqrt3 width must be positive");
    SpectralProfile f;
    f.name = "near_sqrt3";
    f.value = [width](double xi) {
        const double d = (std::abs(xi) - kSqrt3) / width;
        return cplx(std::exp(-0.5 * d * d), 0.0);
    };
    const double reach = std::sqrt(2.0 * std::log(1e18)) * width;
    f.support_min = std::max(0.0, kSqrt3 - reach);
    f.support_max = kSqrt3 + reach;
    f.spatial_width = 1.0 / width;
    return f;
}

SpectralProfile restrict_to_band(const SpectralProfile& f, int k) {
    SpectralProfile g;
    g.name = f.name + "_k" + std::to_string(k);
    auto base = f.value;
    g.value = [base, k](double xi) { return band_bump(k, xi) * base(xi); };
    g.support_min = std::max(f.support_min, std::ldexp(1.0, k - 1));
    g.support_max = std::min(f.support_max, std::ldexp(1.0, k + 1));
    g.spatial_width = std::max(f.spatial_width, std::ldexp(1.0, -k));
    return g;
}

QuadratureResult evaluate_lp_piece(const SpectralProfile& f, double t, double x, const QuadratureOptions& opts) {
    QuadratureResult res;
    if (f.empty()) return res;
    double h = phase_rule_spacing(f, t, x, opts.phase_step);
    for (;;) {
        const TrapezoidSums s = trapezoid(f, t, x, h);
        res.value = s.fine;
        res.error_estimate = std::abs(s.fine - s.coarse);
        res.nodes = s.nodes;
        const double scale = std::max(std::abs(s.fine), s.magnitude);
        if (res.error_estimate <= opts.rel_tol * scale || scale == 0.0) return res;
        h *= 0.5;
        if (2 * s.nodes > opts.max_nodes) {
            throw ResolutionError("oscillatory quadrature did not converge at t = " + std::to_string(t) +
                                  ", x = " + std::to_string(x));
        }
    }
}

SupNormResult sup_norm(const SpectralProfile& f, double t, const ScanOptions& opts) {
    SupNormResult out;
    if (f.empty()) return out;
    const double a = f.support_min;
    const double b = f.support_max;
    const double vmax = max_group_speed(a, b);
    const double reach = 1.05 * t * vmax + 10.0 * f.spatial_width;
    const double dxi = kScanPhaseStep / (reach + t * vmax);
    const double need = std::max(2.0 * b / dxi + 2.0, opts.oversample * b / dxi);
    if (need > static_cast<double>(opts.max_fft)) {
        throw ResolutionError("sup-norm scan at t = " + std::to_string(t) + " needs more than max_fft points");
    }
    const std::size_t n = std::bit_ceil(static_cast<std::size_t>(std::ceil(need)));
    const double dx = 2.0 * std::numbers::pi / (static_cast<double>(n) * dxi);
    const double x0 = -0.5 * static_cast<double>(n) * dx;

    ComplexFft fft(n);
    cplx* buf = fft.buffer();
    for (std::size_t j = 0; j < n; ++j) {
        const double xi = -b + static_cast<double>(j) * dxi;
        const double m = std::abs(xi);
        if (m < a || m > b) {
            buf[j] = 0.0;
            continue;
        }
        const double arg = -omega(xi) * t;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;  // exp(i j dxi x0) = (-1)^j
        buf[j] = sign * f.value(xi) * cplx(std::cos(arg), std::sin(arg));
    }
    fft.backward();

    std::vector<double> mag(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        const double x = x0 + static_cast<double>(m) * dx;
        if (std::abs(x) > reach) continue;
        mag[m] = kInvSqrt2Pi * dxi * std::abs(buf[m]);
        ++out.scan_points;
    }

    std::vector<std::size_t> peaks;
    for (std::size_t m = 1; m + 1 < n; ++m) {
        if (mag[m] > 0.0 && mag[m] >= mag[m - 1] && mag[m] >= mag[m + 1]) peaks.push_back(m);
    }
    std::sort(peaks.begin(), peaks.end(), [&](std::size_t p, std::size_t q) { return mag[p] > mag[q]; });
    if (peaks.size() > opts.candidates) peaks.resize(opts.candidates);

    for (std::size_t m : peaks) {
        const double xm = x0 + static_cast<double>(m) * dx;
        if (mag[m] > out.value) {
            out.value = mag[m];
            out.argmax = xm;
        }
        auto neg_abs = [&](double x) {
            const double h = phase_rule_spacing(f, t, x, kScanPhaseStep);
            return -std::abs(trapezoid(f, t, x, h).fine);
        };
        std::uintmax_t iters = 40;
        const auto [xb, vb] = boost::math::tools::brent_find_minima(neg_abs, xm - dx, xm + dx, 24, iters);
        if (-vb > out.value) {
            out.value = -vb;
            out.argmax = xb;
        }
    }
    return out;
}

SupNormResult sup_norm_of_piece(const SpectralProfile& f, int k, double t, const ScanOptions& opts) {
    return sup_norm(restrict_to_band(f, k), t, opts);
}

int estimate_case(int k, double t, const EstimateConstants& c) {
    const double p = std::ldexp(1.0, k);
    if (p >= c.c_hi * std::cbrt(std::cbrt(t))) return 1;
    if (p >= 8.0) return 2;
    if (p >= 0.5) return 3;
    if (p >= c.c_lo / std::cbrt(t)) return 4;
    return 5;
}

ProfileNorms profile_norms(const SpectralProfile& f, double s) {
    ProfileNorms n;
    for (const auto& [lo, hi] : support_intervals(f)) {
        const auto steps = static_cast<std::size_t>(std::max(2e4, std::ceil((hi - lo) / 1e-3)));
        const double h = (hi - lo) / static_cast<double>(steps);
        double acc = 0.0;
        for (std::size_t i = 0; i <= steps; ++i) {
            const double xi = lo + h * static_cast<double>(i);
            const double v = std::abs(f.value(xi));
            n.linf = std::max(n.linf, v);
            const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
            acc += w * std::pow(1.0 + xi * xi, s) * v * v;
        }
        n.sobolev += h * acc;
    }
    n.sobolev = std::sqrt(n.sobolev);
    return n;
}

double band_derivative_norm(const SpectralProfile& f, int k) {
    const SpectralProfile g = restrict_to_band(f, k);
    double acc = 0.0;
    for (const auto& [lo, hi] : support_intervals(g)) {
        const std::size_t steps = 20000;
        const double h = (hi - lo) / static_cast<double>(steps);
        const double d = 1e-6 * std::max(1.0, std::abs(hi));
        double part = 0.0;
        for (std::size_t i = 0; i <= steps; ++i) {
            const double xi = lo + h * static_cast<double>(i);
            const cplx deriv = (g.value(xi + d) - g.value(xi - d)) / (2.0 * d);
            const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
            part += w * std::norm(deriv);
        }
        acc += h * part;
    }
    return std::sqrt(acc);
}

double estimate_rhs(int case_id, int k, double t, const ProfileNorms& norms, double band_derivative,
                    const EstimateConstants& c) {
    const double p = std::ldexp(1.0, k);
    switch (case_id) {
        case 1: return std::pow(p, -(c.s - 1.0)) * norms.sobolev;
        case 2:
            return std::pow(t, -0.5) * std::pow(p, 1.5) * norms.linf +
                   std::pow(t, -0.75) * std::pow(p, 2.25) * band_derivative;
        case 3: return std::pow(t, -1.0 / 3.0) * norms.linf + std::pow(t, -0.5) * band_derivative;
        case 4:
            return std::pow(t, -0.5) * std::pow(p, -0.5) * norms.linf +
                   std::pow(t, -0.75) * std::pow(p, -0.75) * band_derivative;
        case 5: return p * norms.linf;
        default: throw ValidationError("estimate case must be in 1..5");
    }
}

std::vector<EstimateRow> verify_dispersive_estimate(const SpectralProfile& f, int k_min, int k_max,
                                                    const std::vector<double>& times, const EstimateConstants& c,
                                                    const ScanOptions& opts) {
    if (k_min > k_max) throw ValidationError("k_min must not exceed k_max");
    for (double t : times) {
        if (!(t >= 1.0)) throw ValidationError("estimate times must satisfy t >= 1");
    }
    const ProfileNorms norms = profile_norms(f, c.s);
    std::vector<double> deriv;
    for (int k = k_min; k <= k_max; ++k) deriv.push_back(band_derivative_norm(f, k));

    std::vector<EstimateRow> rows;
    for (double t : times) {
        for (int k = k_min; k <= k_max; ++k) {
            EstimateRow row;
            row.t = t;
            row.k = k;
            row.case_id = estimate_case(k, t, c);
            row.lhs = sup_norm_of_piece(f, k, t, opts).value;
            row.rhs = estimate_rhs(row.case_id, k, t, norms, deriv[static_cast<std::size_t>(k - k_min)], c);
            row.ratio = row.rhs > 0.0 ? row.lhs / row.rhs : 0.0;
            rows.push_back(row);
        }
    }
    return rows;
}

SpectralField propagate_linear(const SpectralField& f, double dt) {
    SpectralField out(f.grid, f.time + dt);
    for (std::size_t i = 0; i < f.grid.n; ++i) {
        const double arg = -omega(f.grid.frequency(i)) * dt;
        out.coeffs[i] = f.coeffs[i] * cplx(std::cos(arg), std::sin(arg));
    }
    return out;
}

}  // namespace gbbm
