#include "gbbm/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gbbm/dispersion.hpp"
#include "gbbm/errors.hpp"

namespace gbbm {

double phase(const PhasePoint& p) {
    return -omega(p.xi) + omega(p.eta1) + omega(p.eta2) + omega(p.eta3) + omega(p.eta4());
}

std::array<double, 3> phase_gradient(const PhasePoint& p) {
    const double w4 = omega_prime(p.eta4());
    return {omega_prime(p.eta1) - w4, omega_prime(p.eta2) - w4, omega_prime(p.eta3) - w4};
}

double gradient_norm(const PhasePoint& p) {
    const auto g = phase_gradient(p);
    return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
}

std::string_view name(ScalarFunction f) {
    switch (f) {
        case ScalarFunction::three_eta_plus_r: return "3eta+r";
        case ScalarFunction::three_eta_minus_r: return "3eta-r";
        case ScalarFunction::minus_eta_plus_r: return "-eta+r";
        case ScalarFunction::eta_plus_r: return "eta+r";
        case ScalarFunction::two_eta_plus_two_r: return "2eta+2r";
        case ScalarFunction::two_eta_minus_two_r: return "2eta-2r";
    }
    return "?";
}

double evaluate(ScalarFunction f, double eta) {
    const double r = reflection(eta);
    const double we = omega(eta);
    const double wr = omega(r);
    switch (f) {
        case ScalarFunction::three_eta_plus_r: return 3.0 * we + wr - omega(3.0 * eta + r);
        case ScalarFunction::three_eta_minus_r: return 3.0 * we - wr - omega(3.0 * eta - r);
        case ScalarFunction::minus_eta_plus_r: return -we + wr - omega(-eta + r);
        case ScalarFunction::eta_plus_r: return -we - wr + omega(eta + r);
        case ScalarFunction::two_eta_plus_two_r: return 2.0 * we + 2.0 * wr - omega(2.0 * eta + 2.0 * r);
        case ScalarFunction::two_eta_minus_two_r: return 2.0 * we - 2.0 * wr - omega(2.0 * eta - 2.0 * r);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi, double flo, double tol) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    for (int it = 0; it < 200 && fm != 0.0; ++it) {
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        const double next = 0.5 * (lo + hi);
        if (next == lo || next == hi) break;
        mid = next;
        fm = f(mid);
    }
    if (!(std::abs(fm) < tol)) {
        throw ConvergenceError("bisection stalled at " + std::to_string(mid) + " with residual " +
                               std::to_string(fm));
    }
    return mid;
}

}  // namespace

std::vector<double> find_roots(const std::function<double(double)>& f, double a, double b, double tol,
                               double samples_per_unit) {
    if (!(a < b)) throw ValidationError("root bracket must satisfy a < b");
    const auto n = static_cast<std::size_t>(std::max(2.0, std::ceil((b - a) * samples_per_unit)));
    std::vector<double> roots;
    double x_prev = a;
    double f_prev = f(a);
    if (f_prev == 0.0) roots.push_back(a);
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = i == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
        const double v = f(x);
        if (v == 0.0) {
            roots.push_back(x);
        } else if (f_prev != 0.0 && std::signbit(v) != std::signbit(f_prev)) {
            roots.push_back(bisect(f, x_prev, x, f_prev, tol));
        }
        x_prev = x;
        f_prev = v;
    }
    return roots;
}

std::vector<double> find_roots(ScalarFunction fn, double a, double b, double tol) {
    if (!(a < b)) throw ValidationError("root bracket must satisfy a < b");
    if (b > -1.0 - 1e-12 && a < 1.0 + 1e-12) {
        throw DomainError("root bracket meets |eta| <= 1 where the reflection map is undefined");
    }
    return find_roots([fn](double e) { return evaluate(fn, e); }, a, b, tol);
}

double aux_omega(int s, double xi) {
    const double sd = static_cast<double>(s);
    return 0.25 * kSqrt3 * sd - omega(xi) + omega(xi - sd * kSqrt3);
}

double aux_phi(int s, double eta0, double xi) {
    const double sd = static_cast<double>(s);
    return -omega(xi) + omega(xi - sd * eta0) + sd * omega(eta0);
}

std::string_view name(Classification c) {
    switch (c) {
        case Classification::space: return "space";
        case Classification::time: return "time";
        case Classification::space_time: return "space-time";
    }
    return "?";
}

std::vector<PhasePoint> ResonantManifold::sample(std::size_t n) const {
    std::vector<PhasePoint> out;
    if (n == 0 || domain.empty()) return out;
    double total = 0.0;
    for (const auto& iv : domain) total += iv.hi - iv.lo;
    std::size_t used = 0;
    for (std::size_t d = 0; d < domain.size(); ++d) {
        const auto& iv = domain[d];
        std::size_t m = d + 1 == domain.size()
                            ? n - used
                            : static_cast<std::size_t>(std::round(n * (iv.hi - iv.lo) / total));
        m = std::min(m, n - used);
        for (std::size_t i = 0; i < m; ++i) {
            const double s = m == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(m - 1);
            out.push_back(at(iv.lo + s * (iv.hi - iv.lo)));
        }
        used += m;
    }
    return out;
}

ResonanceRecord anomalous_resonance(double tol) {
    const auto roots = find_roots(ScalarFunction::three_eta_minus_r, 4.0, 7.0, std::min(tol, 1e-12));
    if (roots.size() != 1) {
        throw ConvergenceError("expected one zero of Xi on [4, 7], found " + std::to_string(roots.size()));
    }
    const double eta0 = roots.front();
    const PhasePoint p{eta0, eta0, eta0, 3.0 * eta0 - reflection(eta0)};
    ResonanceRecord rec;
    rec.family = "1a";
    rec.classification = Classification::space_time;
    rec.point = p;
    rec.max_phase_residual = std::abs(phase(p));
    rec.max_gradient_residual = gradient_norm(p);
    if (!(rec.max_phase_residual < tol) || !(rec.max_gradient_residual < tol)) {
        throw ConvergenceError("anomalous resonance residuals exceed tolerance");
    }
    return rec;
}

namespace {

using Perm = std::array<int, 3>;

PhasePoint permute(const PhasePoint& p, const Perm& perm) {
    const std::array<double, 3> e{p.eta1, p.eta2, p.eta3};
    return {e[perm[0]], e[perm[1]], e[perm[2]], p.xi};
}

PhasePoint negate(const PhasePoint& p) { return {-p.eta1, -p.eta2, -p.eta3, -p.xi}; }

ResonanceRecord point_record(std::string family, const PhasePoint& p) {
    ResonanceRecord rec;
    rec.family = std::move(family);
    rec.classification = Classification::space_time;
    rec.point = p;
    rec.max_phase_residual = std::abs(phase(p));
    rec.max_gradient_residual = gradient_norm(p);
    return rec;
}

// Sampling density along manifolds when locating embedded phase zeros.
constexpr double kManifoldScanDensity = 1e3;
constexpr double kEtaMargin = 1e-6;
constexpr double kEtaMax = 50.0;
constexpr double kXiMax = 50.0;

std::vector<Interval> eta_domain(double lo_abs) {
    return {{-kEtaMax, -lo_abs}, {lo_abs, kEtaMax}};
}

ResonanceRecord manifold_record(std::string family, ResonantManifold m, double tol, std::size_t samples,
                                bool derived) {
    ResonanceRecord rec;
    rec.family = std::move(family);
    rec.symmetry_derived = derived;
    const auto pts = m.sample(samples);
    double max_phase = 0.0;
    for (const auto& p : pts) {
        rec.max_gradient_residual = std::max(rec.max_gradient_residual, gradient_norm(p));
        max_phase = std::max(max_phase, std::abs(phase(p)));
    }
    if (max_phase < tol) {
        rec.classification = Classification::space_time;
        rec.max_phase_residual = max_phase;
    } else {
        rec.classification = Classification::space;
        std::vector<double> zeros;
        for (const auto& iv : m.domain) {
            const auto along = [&m](double s) { return phase(m.at(s)); };
            for (double s : find_roots(along, iv.lo, iv.hi, tol, kManifoldScanDensity)) {
                zeros.push_back(s);
                const PhasePoint p = m.at(s);
                rec.time_resonant_points.push_back(p);
                rec.max_phase_residual = std::max(rec.max_phase_residual, std::abs(phase(p)));
            }
        }
        double min_phase = std::numeric_limits<double>::infinity();
        for (const auto& iv : m.domain) {
            const std::size_t n = samples;
            for (std::size_t i = 0; i < n; ++i) {
                const double s = iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
                const bool near_zero = std::any_of(zeros.begin(), zeros.end(),
                                                   [s](double z) { return std::abs(s - z) < 0.25; });
                if (!near_zero) min_phase = std::min(min_phase, std::abs(phase(m.at(s))));
            }
        }
        rec.min_abs_phase = min_phase;
    }
    rec.manifold = std::move(m);
    return rec;
}

ResonantManifold permuted(const ResonantManifold& m, const Perm& perm, const std::string& formula) {
    ResonantManifold out;
    out.formula = formula;
    out.domain = m.domain;
    auto base = m.at;
    out.at = [base, perm](double s) { return permute(base(s), perm); };
    return out;
}

// "(a, b, c; d)" with the slots reordered by perm.
std::string permute_formula(const std::array<std::string, 4>& slots, const Perm& perm) {
    return "(" + slots[perm[0]] + ", " + slots[perm[1]] + ", " + slots[perm[2]] + "; " + slots[3] + ")";
}

struct FamilySpec {
    std::string family;
    std::array<std::string, 4> slots;
    std::function<PhasePoint(double)> at;
    std::vector<Interval> domain;
};

}  // namespace

std::vector<ResonanceRecord> enumerate_resonances(double tol, std::size_t samples) {
    std::vector<ResonanceRecord> out;

    out.push_back(point_record("1a", {0.0, 0.0, 0.0, 0.0}));
    out.push_back(point_record("1b", {-kSqrt3, kSqrt3, kSqrt3, 0.0}));
    {
        ResonanceRecord a = anomalous_resonance(std::min(tol, 1e-12));
        ResonanceRecord b = a;
        b.point = negate(*a.point);
        out.push_back(std::move(a));
        out.push_back(std::move(b));
    }

    // Line L and its sign-moved variants.
    {
        ResonantManifold line{"(-eta, eta, eta; 0)", [](double e) { return PhasePoint{-e, e, e, 0.0}; },
                              {{-100.0, 100.0}}};
        out.push_back(manifold_record("1b", line, tol, samples, false));
        out.push_back(manifold_record("1c", permuted(line, {1, 0, 2}, "(eta, -eta, eta; 0)"), tol, samples, true));
        out.push_back(manifold_record("1d", permuted(line, {2, 1, 0}, "(eta, eta, -eta; 0)"), tol, samples, true));
    }

    // Curve Gamma: the four values {eta, r, -r, -eta} distributed over the
    // slots, eta1 = eta fixed by reparametrization.
    {
        const auto gdom = std::vector<Interval>{{-100.0, -1.01}, {1.01, 100.0}};
        struct G {
            const char* formula;
            int b, c;  // 0: r, 1: -r, 2: -eta
            bool printed;
        };
        const G variants[] = {
            {"(eta, r(eta), -r(eta); 0)", 0, 1, true},  {"(eta, -eta, -r(eta); 0)", 2, 1, true},
            {"(eta, -r(eta), r(eta); 0)", 1, 0, false}, {"(eta, r(eta), -eta; 0)", 0, 2, false},
            {"(eta, -eta, r(eta); 0)", 2, 0, false},    {"(eta, -r(eta), -eta; 0)", 1, 2, false},
        };
        for (const auto& v : variants) {
            const int b = v.b, c = v.c;
            auto value = [](int role, double e) {
                return role == 0 ? reflection(e) : role == 1 ? -reflection(e) : -e;
            };
            ResonantManifold g{v.formula, [=](double e) { return PhasePoint{e, value(b, e), value(c, e), 0.0}; },
                               gdom};
            out.push_back(manifold_record("2b", g, tol, samples, !v.printed));
        }
    }

    const auto xi_all = std::vector<Interval>{{-kXiMax, kXiMax}};
    const auto xi_outer = std::vector<Interval>{{-kXiMax, -2.0 - 2.0 * kEtaMargin}, {2.0 + 2.0 * kEtaMargin, kXiMax}};
    const auto eta_dom = eta_domain(1.0 + kEtaMargin);
    const auto r = [](double e) { return reflection(e); };

    const std::vector<FamilySpec> families = {
        // Explicit space resonances parametrized by xi.
        {"1a", {"xi/4", "xi/4", "xi/4", "xi"}, [](double x) { return PhasePoint{x / 4, x / 4, x / 4, x}; }, xi_all},
        {"1a", {"xi/2", "xi/2", "xi/2", "xi"}, [](double x) { return PhasePoint{x / 2, x / 2, x / 2, x}; }, xi_all},
        {"1b", {"-xi/2", "xi/2", "xi/2", "xi"}, [](double x) { return PhasePoint{-x / 2, x / 2, x / 2, x}; }, xi_all},
        {"2a", {"xi/2", "xi/2", "r(xi/2)", "xi"},
         [r](double x) { return PhasePoint{x / 2, x / 2, r(x / 2), x}; }, xi_outer},
        {"2d", {"xi/2", "xi/2", "-r(xi/2)", "xi"},
         [r](double x) { return PhasePoint{x / 2, x / 2, -r(x / 2), x}; }, xi_outer},
        {"2b", {"-r(xi/2)", "r(xi/2)", "xi/2", "xi"},
         [r](double x) { return PhasePoint{-r(x / 2), r(x / 2), x / 2, x}; }, xi_outer},
        // Implicit families, parametrized by eta with xi solving the
        // reduced critical-point equation.
        {"1a", {"eta", "eta", "eta", "3eta + r(eta)"},
         [r](double e) { return PhasePoint{e, e, e, 3 * e + r(e)}; }, eta_dom},
        {"1a", {"eta", "eta", "eta", "3eta - r(eta)"},
         [r](double e) { return PhasePoint{e, e, e, 3 * e - r(e)}; }, eta_dom},
        {"1b", {"eta", "-eta", "-eta", "-eta + r(eta)"},
         [r](double e) { return PhasePoint{e, -e, -e, -e + r(e)}; }, eta_dom},
        {"1b", {"eta", "-eta", "-eta", "-eta - r(eta)"},
         [r](double e) { return PhasePoint{e, -e, -e, -e - r(e)}; }, eta_dom},
        {"2a", {"eta", "eta", "r(eta)", "3eta + r(eta)"},
         [r](double e) { return PhasePoint{e, e, r(e), 3 * e + r(e)}; }, eta_dom},
        {"2a", {"eta", "eta", "r(eta)", "eta + r(eta)"},
         [r](double e) { return PhasePoint{e, e, r(e), e + r(e)}; }, eta_dom},
        {"2a", {"eta", "eta", "r(eta)", "2eta + 2r(eta)"},
         [r](double e) { return PhasePoint{e, e, r(e), 2 * e + 2 * r(e)}; }, eta_dom},
        {"2b", {"-eta", "eta", "r(eta)", "eta + r(eta)"},
         [r](double e) { return PhasePoint{-e, e, r(e), e + r(e)}; }, eta_dom},
        {"2b", {"-eta", "eta", "r(eta)", "-eta + r(eta)"},
         [r](double e) { return PhasePoint{-e, e, r(e), -e + r(e)}; }, eta_dom},
        {"2d", {"eta", "eta", "-r(eta)", "3eta - r(eta)"},
         [r](double e) { return PhasePoint{e, e, -r(e), 3 * e - r(e)}; }, eta_dom},
        {"2d", {"eta", "eta", "-r(eta)", "eta - r(eta)"},
         [r](double e) { return PhasePoint{e, e, -r(e), e - r(e)}; }, eta_dom},
        {"2d", {"eta", "eta", "-r(eta)", "2eta - 2r(eta)"},
         [r](double e) { return PhasePoint{e, e, -r(e), 2 * e - 2 * r(e)}; }, eta_dom},
    };

    const Perm identity{0, 1, 2};
    for (const auto& f : families) {
        ResonantManifold m{permute_formula(f.slots, identity), f.at, f.domain};
        out.push_back(manifold_record(f.family, m, tol, samples, false));
    }

    // Remaining families by permuting slots: the minus sign of family 1b
    // moved to eta2 / eta3, and the reflected slot of family 2 moved to
    // eta2 (family 3) or eta1 (family 4).
    for (const auto& f : families) {
        std::vector<std::pair<std::string, Perm>> images;
        if (f.family == "1b") {
            images = {{"1c", {1, 0, 2}}, {"1d", {2, 1, 0}}};
        } else if (f.family[0] == '2') {
            images = {{"3" + f.family.substr(1), {0, 2, 1}}, {"4" + f.family.substr(1), {2, 1, 0}}};
        }
        for (const auto& [fam, perm] : images) {
            ResonantManifold base{permute_formula(f.slots, identity), f.at, f.domain};
            out.push_back(manifold_record(fam, permuted(base, perm, permute_formula(f.slots, perm)), tol,
                                          samples, true));
        }
    }
    return out;
}

}  // namespace gbbm
