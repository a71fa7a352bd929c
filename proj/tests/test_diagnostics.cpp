#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gbbm/diagnostics.hpp"
#include "gbbm/errors.hpp"
#include "gbbm/littlewood_paley.hpp"
#include "gbbm/nonlinear_solver.hpp"

using namespace gbbm;

namespace {

SpectralField gaussian(const Grid& g, double t = 1.0) {
    return from_function(g, [](double x) { return std::exp(-x * x / 2); }, t);
}

}  // namespace

TEST_CASE("norms of the zero field") {
    const NormSample n = compute_norms(SpectralField(Grid(64, 10.0), 1.0));
    CHECK(n.linf_fhat == 0.0);
    CHECK(n.weighted_l2 == 0.0);
    CHECK(n.sobolev == 0.0);
    CHECK(n.sup_u == 0.0);
}

TEST_CASE("Gaussian moments") {
    // ||x e^{-x^2/2}||_2^2 = sqrt(pi)/2 and ||e^{-x^2/2}||_2^2 = sqrt(pi).
    // Second-order differences in xi need a fine frequency step.
    const Grid g(32768, 4096.0);
    const SpectralField f = gaussian(g, 0.0);
    const NormSample n = compute_norms(f, 0.0);
    CHECK(std::abs(n.weighted_l2 - std::sqrt(std::sqrt(std::numbers::pi) / 2.0)) < 1e-6);
    CHECK(std::abs(n.sobolev - std::sqrt(std::sqrt(std::numbers::pi))) < 1e-12);
    CHECK(n.sobolev == doctest::Approx(l2_norm(f)).epsilon(1e-15));
    CHECK(n.linf_fhat == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n.sup_u == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Sobolev index is capped by the grid") {
    const Grid g(256, 10.0);
    const SpectralField f = gaussian(g);
    CHECK(effective_sobolev_index(f, 10.0) == 10.0);
    const double s = effective_sobolev_index(f, 1000.0);
    CHECK(s <= 100.0);
    CHECK(std::isfinite(sobolev_norm(f, s)));
    const Grid fine(8192, 10.0);  // Nyquist ~ 2573
    CHECK(effective_sobolev_index(gaussian(fine), 100.0) < 100.0);
    CHECK(std::isfinite(compute_norms(gaussian(fine), 100.0).sobolev));
}

TEST_CASE("band truncation never increases a norm") {
    const Grid g(512, 30.0);
    const SpectralField f = from_function(g, [](double x) { return std::exp(-x * x / 4) * (1 + std::cos(3 * x)); }, 1.0);
    const NormSample full = compute_norms(f);
    const auto d = decompose(f);
    SpectralField partial = d.low;
    for (std::size_t b = 0; b + 2 < d.bands.size(); ++b) {
        for (std::size_t i = 0; i < g.n; ++i) partial.coeffs[i] += d.bands[b].coeffs[i];
    }
    const NormSample part = compute_norms(partial);
    CHECK(part.linf_fhat <= full.linf_fhat);
    CHECK(part.sobolev <= full.sobolev);
}

TEST_CASE("power-law fits") {
    std::vector<std::pair<double, double>> exact, constant, scaled;
    for (int m = 0; m <= 10; ++m) {
        const double t = std::ldexp(1.0, m);
        exact.emplace_back(t, 3.0 * std::pow(t, -1.0 / 3.0));
        constant.emplace_back(t, 0.25);
        scaled.emplace_back(t, 7.5 * std::pow(t, -1.0 / 3.0));
    }
    const DecayFit a = fit_decay(exact, 1.0, 1024.0);
    CHECK(std::abs(a.exponent + 1.0 / 3.0) < 1e-12);
    CHECK(a.prefactor == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(a.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.points == 11);
    CHECK(std::abs(fit_decay(constant, 1.0, 1024.0).exponent) < 1e-15);

    const DecayFit b = fit_decay(scaled, 1.0, 1024.0);
    CHECK(b.exponent == doctest::Approx(a.exponent).epsilon(1e-13));
    CHECK(std::log(b.prefactor) - std::log(a.prefactor) == doctest::Approx(std::log(2.5)).epsilon(1e-12));

    CHECK(fit_decay(exact, 10.0, 200.0).points == 4);
}

TEST_CASE("degenerate fits") {
    std::vector<std::pair<double, double>> few = {{1, 1}, {2, 0.5}, {4, 0.25}};
    CHECK_THROWS_AS(fit_decay(few, 1, 4), DegenerateFitError);
    std::vector<std::pair<double, double>> bad = {{1, 1}, {2, 0.5}, {4, 0.0}, {8, 0.1}};
    CHECK_THROWS_AS(fit_decay(bad, 1, 8), DegenerateFitError);
    // Values outside the window are ignored.
    std::vector<std::pair<double, double>> tail = {{1, 1}, {2, 0.5}, {3, 0.3}, {4, 0.2}, {100, 0.0}};
    CHECK_NOTHROW(fit_decay(tail, 1, 4));
}

TEST_CASE("linear flow does not scatter") {
    const Grid g(512, 40.0);
    const GbbmSolver s(g, 3, false, Formulation::profile);
    SolverConfig c{g};
    c.dt = 0.05;
    c.t_end = 16.0;
    c.record_times = {2.0, 4.0, 8.0};
    std::vector<SpectralField> profiles;
    s.evolve(gaussian(g), c, [&](const SpectralField& u) { profiles.push_back(to_profile(u)); });
    const ScatteringReport r = scattering_test(profiles);
    REQUIRE(r.rows.size() == 4);
    for (const auto& row : r.rows) {
        CHECK(row.diff_linf < 1e-12);
        CHECK(row.diff_l2 < 1e-12);
    }
    CHECK(r.rows.front().t == 1.0);
    CHECK(r.rows.back().t == 8.0);
}

TEST_CASE("scattering rows from a nonlinear run") {
    const Grid g(512, 40.0);
    const GbbmSolver s(g, 3, true, Formulation::profile);
    SolverConfig c{g};
    c.dt = 0.02;
    c.t_end = 16.0;
    c.record_times = {3.0, 2.0, 8.0, 4.0, 6.0};
    std::vector<SpectralField> profiles;
    s.evolve(from_function(g, [](double x) { return 0.3 * std::exp(-x * x / 2); }, 1.0), c,
             [&](const SpectralField& u) { profiles.push_back(to_profile(u)); });
    const ScatteringReport r = scattering_test(profiles);
    // Pairs (1,2), (2,4), (3,6), (4,8), (8,16).
    REQUIRE(r.rows.size() == 5);
    CHECK(r.rows[2].t == 3.0);
    for (const auto& row : r.rows) CHECK(row.diff_linf > 0.0);
    REQUIRE(r.fit.has_value());
    CHECK(r.fit->points == 5);
}

TEST_CASE("scattering needs three dyadic pairs") {
    const Grid g(64, 10.0);
    std::vector<SpectralField> few;
    for (double t : {1.0, 2.0, 4.0, 5.0}) few.emplace_back(g, t);
    CHECK_THROWS_AS(scattering_test(few), InsufficientDataError);
    few.emplace_back(g, 8.0);
    CHECK_NOTHROW(scattering_test(few));
}

TEST_CASE("monotone scattering rows") {
    ScatteringReport r;
    r.rows = {{1, 3.0, 0}, {2, 4.0, 0}, {4, 2.0, 0}, {8, 1.0, 0}, {16, 0.5, 0}};
    CHECK_FALSE(r.monotone_from(1.0));
    CHECK(r.monotone_from(2.0));
    r.rows.push_back({32, 0.5, 0});
    CHECK_FALSE(r.monotone_from(8.0));
}

TEST_CASE("bootstrap report") {
    std::vector<NormSample> samples;
    for (int m = 6; m >= 0; --m) {
        NormSample s;
        s.t = std::ldexp(1.0, m);
        s.linf_fhat = 0.01;
        s.weighted_l2 = 0.02 * std::pow(s.t, 0.1);
        s.sobolev = 0.5;
        samples.push_back(s);
    }
    const BootstrapSummary b = bootstrap_report(samples);
    CHECK(b.sup_linf == 0.01);
    REQUIRE(b.weighted_fit.has_value());
    CHECK(b.weighted_fit->exponent == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(b.weighted_fit->points == 7);
    CHECK_FALSE(b.weighted_violation);
    REQUIRE(b.sobolev_fit.has_value());
    CHECK(std::abs(b.sobolev_fit->exponent) < 1e-14);
    CHECK_FALSE(b.sobolev_violation);
    CHECK(b.norm <= b.sup_linf + b.sup_weighted + b.sup_sobolev);

    for (auto& s : samples) s.weighted_l2 = 0.02 * std::pow(s.t, 0.25);
    CHECK(bootstrap_report(samples).weighted_violation);
}

TEST_CASE("linear flow has flat bootstrap norms") {
    const Grid g(512, 40.0);
    const GbbmSolver s(g, 3, false, Formulation::profile);
    SolverConfig c{g};
    c.dt = 0.1;
    c.t_end = 64.0;
    c.record_times = {2.0, 4.0, 8.0, 16.0, 32.0};
    std::vector<NormSample> samples;
    s.evolve(gaussian(g), c, [&](const SpectralField& u) { samples.push_back(compute_norms(to_profile(u))); });
    const BootstrapSummary b = bootstrap_report(samples);
    CHECK(std::abs(b.weighted_fit->exponent) < 1e-12);
    CHECK(std::abs(b.sobolev_fit->exponent) < 1e-12);
}
