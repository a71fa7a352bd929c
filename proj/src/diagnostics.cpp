#include "gbbm/diagnostics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "gbbm/errors.hpp"
#include "gbbm/nonlinear_solver.hpp"

namespace gbbm {

namespace {

// Coefficients in increasing-frequency order.
std::vector<cplx> ordered(const SpectralField& f) {
    const std::size_t n = f.grid.n;
    std::vector<cplx> v(n);
    for (std::size_t p = 0; p < n; ++p) v[p] = f.coeffs[f.grid.index(static_cast<long>(p) - static_cast<long>(n / 2))];
    return v;
}

}  // namespace

double weighted_l2_norm(const SpectralField& fhat) {
    const auto v = ordered(fhat);
    const std::size_t n = v.size();
    const double h = fhat.grid.dxi();
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        cplx d;
        if (p == 0) {
            d = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        } else if (p + 1 == n) {
            d = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
        } else {
            d = (v[p + 1] - v[p - 1]) / (2.0 * h);
        }
        s += std::norm(d);
    }
    return std::sqrt(s * h);
}

double sobolev_norm(const SpectralField& fhat, double s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < fhat.grid.n; ++i) {
        const double xi = fhat.grid.frequency(i);
        acc += std::pow(1.0 + xi * xi, s) * std::norm(fhat.coeffs[i]);
    }
    return std::sqrt(acc * fhat.grid.dxi());
}

double effective_sobolev_index(const SpectralField& fhat, double requested) {
    const double m = max_abs(fhat);
    double s = std::min(requested, 100.0);
    if (m == 0.0) return s;
    const double nyq = fhat.grid.nyquist();
    const double budget = std::log(DBL_MAX / (static_cast<double>(fhat.grid.n) * m * m * fhat.grid.dxi() + 1.0));
    const double s_grid = std::floor(budget / std::log(1.0 + nyq * nyq));
    return std::min(s, s_grid);
}

NormSample compute_norms(const SpectralField& fhat, double s) {
    NormSample n;
    n.t = fhat.time;
    n.linf_fhat = max_abs(fhat);
    n.weighted_l2 = weighted_l2_norm(fhat);
    n.sobolev_index = effective_sobolev_index(fhat, s);
    n.sobolev = sobolev_norm(fhat, n.sobolev_index);
    for (const auto& v : to_physical(from_profile(fhat))) n.sup_u = std::max(n.sup_u, std::abs(v));
    return n;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples, double t_min, double t_max) {
    std::vector<std::pair<double, double>> logs;
    const double slack = 1e-9;
    for (const auto& [t, v] : samples) {
        if (t < t_min * (1.0 - slack) || t > t_max * (1.0 + slack)) continue;
        if (!(v > 0.0) || !(t > 0.0)) throw DegenerateFitError("decay fit needs positive times and values");
        logs.emplace_back(std::log(t), std::log(v));
    }
    if (logs.size() < 4) throw DegenerateFitError("decay fit needs at least 4 samples in the window");
    const double n = static_cast<double>(logs.size());
    double sx = 0, sy = 0;
    for (const auto& [x, y] : logs) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : logs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) throw DegenerateFitError("decay fit needs distinct times");
    DecayFit fit;
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.points = logs.size();
    return fit;
}

bool ScatteringReport::monotone_from(double t_min) const {
    double prev = INFINITY;
    for (const auto& r : rows) {
        if (r.t < t_min) continue;
        if (!(r.diff_linf < prev)) return false;
        prev = r.diff_linf;
    }
    return true;
}

ScatteringReport scattering_test(const std::vector<SpectralField>& profiles) {
    std::vector<const SpectralField*> sorted;
    for (const auto& p : profiles) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->time < b->time; });
    ScatteringReport rep;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            const double t = sorted[i]->time;
            if (std::abs(sorted[j]->time - 2.0 * t) <= 1e-9 * std::abs(t)) {
                rep.rows.push_back({t, max_abs_difference(*sorted[j], *sorted[i]),
                                    l2_difference(*sorted[j], *sorted[i])});
                break;
            }
        }
    }
    if (rep.rows.size() < 3) throw InsufficientDataError("scattering test needs at least three dyadic pairs");
    const bool positive = std::all_of(rep.rows.begin(), rep.rows.end(), [](const auto& r) { return r.diff_linf > 0.0; });
    if (positive && rep.rows.size() >= 4) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : rep.rows) pts.emplace_back(r.t, r.diff_linf);
        rep.fit = fit_decay(pts, rep.rows.front().t, rep.rows.back().t);
    }
    return rep;
}

BootstrapSummary bootstrap_report(const std::vector<NormSample>& samples, const BootstrapBudget& budget) {
    BootstrapSummary out;
    std::vector<std::pair<double, double>> weighted, sobolev;
    for (const auto& s : samples) {
        const double w = std::pow(s.t, -budget.p0) * s.weighted_l2;
        const double h = std::pow(s.t, -budget.p1) * s.sobolev;
        out.sup_linf = std::max(out.sup_linf, s.linf_fhat);
        out.sup_weighted = std::max(out.sup_weighted, w);
        out.sup_sobolev = std::max(out.sup_sobolev, h);
        out.norm = std::max(out.norm, s.linf_fhat + w + h);
        weighted.emplace_back(s.t, s.weighted_l2);
        sobolev.emplace_back(s.t, s.sobolev);
    }
    if (samples.size() >= 4) {
        const auto [lo_it, hi_it] = std::minmax_element(
            samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
        const double lo = lo_it->t, hi = hi_it->t;
        try {
            out.weighted_fit = fit_decay(weighted, lo, hi);
            out.weighted_violation = out.weighted_fit->exponent > budget.p0 + budget.tolerance;
        } catch (const DegenerateFitError&) {
        }
        try {
            out.sobolev_fit = fit_decay(sobolev, lo, hi);
            out.sobolev_violation = out.sobolev_fit->exponent > budget.p1 + budget.tolerance;
        } catch (const DegenerateFitError&) {
        }
    }
    return out;
}

}  // namespace gbbm
