#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gbbm/dispersion.hpp"
#include "gbbm/errors.hpp"
#include "gbbm/linear_flow.hpp"
#include "gbbm/nonlinear_solver.hpp"

using namespace gbbm;

namespace {

SpectralField gaussian(const Grid& g, double eps, double t = 1.0) {
    return from_function(g, [eps](double x) { return eps * std::exp(-x * x / 2); }, t);
}

SolverConfig config(const Grid& g, double dt, double t_end) {
    SolverConfig c{g};
    c.dt = dt;
    c.t_end = t_end;
    return c;
}

}  // namespace

TEST_CASE("quartic of a cosine matches the binomial expansion") {
    const Grid g(256, 8.0 * std::numbers::pi);  // dxi = 1/8
    const long j0 = 10;
    const double xi0 = static_cast<double>(j0) * g.dxi();
    const SpectralField u = from_function(g, [xi0](double x) { return std::cos(xi0 * x); }, 0.0);
    const double unit = g.half_length / std::sqrt(2.0 * std::numbers::pi);
    CHECK(std::abs(u.coeffs[g.index(j0)] - unit) < 1e-12);

    const GbbmSolver s(g, 3);
    const SpectralField q = s.quartic(u);
    SpectralField expect(g, 0.0);
    expect.coeffs[0] = 2.0 * unit * 3.0 / 8.0;
    for (long sgn : {-1, 1}) {
        expect.coeffs[g.index(sgn * 2 * j0)] = unit / 2.0;
        expect.coeffs[g.index(sgn * 4 * j0)] = unit / 8.0;
    }
    CHECK(max_abs_difference(q, expect) < 1e-12);
    CHECK(q.coeffs[0].imag() == 0.0);
}

TEST_CASE("padding removes aliasing of the quartic product") {
    const Grid g(256, 8.0 * std::numbers::pi);
    const long j0 = 50;  // 4 j0 lies beyond the Nyquist index 128
    const double xi0 = static_cast<double>(j0) * g.dxi();
    const SpectralField u = from_function(g, [xi0](double x) { return std::cos(xi0 * x); }, 0.0);
    const double unit = g.half_length / std::sqrt(2.0 * std::numbers::pi);

    const SpectralField padded = GbbmSolver(g, 3).quartic(u);
    SpectralField expect(g, 0.0);
    expect.coeffs[0] = 2.0 * unit * 3.0 / 8.0;
    expect.coeffs[g.index(2 * j0)] = unit / 2.0;
    expect.coeffs[g.index(-2 * j0)] = unit / 2.0;
    CHECK(max_abs_difference(padded, expect) < 1e-12);

    // Without padding 4 j0 wraps onto -56.
    const SpectralField aliased = GbbmSolver(g, 1).quartic(u);
    CHECK(std::abs(aliased.coeffs[g.index(-56)]) > 0.1 * unit);
}

TEST_CASE("dealiased product has no energy in spurious bands") {
    const Grid g(512, 40.0);
    // Active modes |j| <= n/16 (n/8 in total).
    SpectralField u(g, 1.0);
    for (long j = 1; j <= static_cast<long>(g.n / 16); ++j) {
        const cplx c(std::sin(0.7 * j), std::cos(1.3 * j));
        u.coeffs[g.index(j)] = c;
        u.coeffs[g.index(-j)] = std::conj(c);
    }
    u.coeffs[0] = 0.4;
    const SpectralField q = GbbmSolver(g, 3).quartic(u);
    const double total = band_energy(q, 0.0);
    const double spurious = band_energy(q, (static_cast<double>(g.n / 4) + 0.5) * g.dxi());
    CHECK(total > 0.0);
    CHECK(spurious < 1e-14 * total);
}

TEST_CASE("rhs of trivial and linear fields") {
    const Grid g(128, 20.0);
    const GbbmSolver s(g);
    CHECK(max_abs(s.rhs(SpectralField(g, 1.0))) == 0.0);

    const GbbmSolver lin(g, 3, false);
    SpectralField u(g, 1.0);
    u.coeffs[g.index(3)] = 2.0;
    u.coeffs[g.index(-3)] = 2.0;
    const SpectralField r = lin.rhs(u);
    CHECK(std::abs(r.coeffs[g.index(3)] - cplx(0.0, -2.0 * omega(3.0 * g.dxi()))) < 1e-15);
}

TEST_CASE("blow-up guard") {
    const Grid g(64, 10.0);
    const GbbmSolver s(g);
    SpectralField u(g, 1.0);
    u.coeffs[3] = 2e10;
    CHECK_THROWS_AS(s.rhs(u), BlowUpError);
    u.coeffs[3] = std::nan("");
    CHECK_THROWS_AS(s.rhs(u), BlowUpError);
    SpectralField v(g, 1.0);
    v.coeffs[5] = cplx(0.0, INFINITY);
    CHECK_THROWS_AS(s.step(v, 0.01), BlowUpError);
}

TEST_CASE("config validation") {
    const Grid g(64, 10.0);
    SolverConfig c = config(g, 0.01, 2.0);
    CHECK_NOTHROW(c.validate());
    c.dt = 0.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c.dt = 0.2;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = config(g, 0.01, 0.5);
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = config(g, 0.01, 2.0);
    c.record_times = {3.0};
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = config(g, 0.01, 2.0);
    c.pad = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("zero step and zero data") {
    const Grid g(128, 20.0);
    const GbbmSolver s(g);
    SpectralField u = gaussian(g, 0.3);
    const SpectralField before = u;
    s.step(u, 0.0);
    CHECK(max_abs_difference(u, before) == 0.0);

    const SpectralField z = s.evolve(SpectralField(g, 1.0), config(g, 0.05, 5.0));
    CHECK(max_abs(z) == 0.0);
}

TEST_CASE("linear evolution matches the exact multiplier") {
    const Grid g(256, 30.0);
    const GbbmSolver s(g, 3, false);
    const SpectralField u0 = gaussian(g, 1.0);
    const SpectralField u = s.evolve(u0, config(g, 1e-3, 2.0));
    CHECK(max_abs_difference(u, propagate_linear(u0, 1.0)) < 1e-10);

    const GbbmSolver p(g, 3, false, Formulation::profile);
    std::vector<SpectralField> profiles;
    SolverConfig c = config(g, 0.05, 30.0);
    c.record_times = {3.0, 10.0};
    p.evolve(u0, c, [&](const SpectralField& v) { profiles.push_back(to_profile(v)); });
    REQUIRE(profiles.size() == 4);
    for (const auto& f : profiles) CHECK(max_abs_difference(f, profiles.front()) < 1e-12);
}

TEST_CASE("recorder fires at the requested times") {
    const Grid g(128, 20.0);
    const GbbmSolver s(g);
    SolverConfig c = config(g, 0.03, 2.0);
    c.record_times = {1.5, 1.25, 2.0};
    std::vector<double> times;
    s.evolve(gaussian(g, 0.1), c, [&](const SpectralField& u) { times.push_back(u.time); });
    CHECK(times == std::vector<double>{1.0, 1.25, 1.5, 2.0});
}

TEST_CASE("H1 norm is conserved and the field stays real") {
    const Grid g(512, 60.0);
    const GbbmSolver s(g);
    const SpectralField u0 = gaussian(g, 0.1);
    SolverConfig c = config(g, 0.01, 20.0);
    for (double t = 2.0; t < 20.0; t += 2.0) c.record_times.push_back(t);
    const double h0 = h1_norm(u0);
    double drift = 0.0, imag = 0.0;
    s.evolve(u0, c, [&](const SpectralField& u) {
        drift = std::max(drift, std::abs(h1_norm(u) - h0) / h0);
        imag = std::max(imag, realness_defect(u));
    });
    CHECK(drift < 1e-10);
    CHECK(imag < 1e-12);
}

TEST_CASE("RK4 converges at fourth order") {
    const Grid g(256, 30.0);
    const GbbmSolver s(g);
    const SpectralField u0 = gaussian(g, 0.8);
    const SpectralField a = s.evolve(u0, config(g, 0.1, 3.0));
    const SpectralField b = s.evolve(u0, config(g, 0.05, 3.0));
    const SpectralField c = s.evolve(u0, config(g, 0.025, 3.0));
    const double ratio = l2_difference(a, b) / l2_difference(b, c);
    CHECK(ratio == doctest::Approx(16.0).epsilon(2.0 / 16.0));
}

TEST_CASE("forward then backward integration returns the data") {
    const Grid g(256, 30.0);
    const GbbmSolver s(g);
    const SpectralField u0 = gaussian(g, 0.3);
    SpectralField u = s.evolve(u0, config(g, 0.01, 6.0));
    for (int i = 0; i < 500; ++i) s.step(u, -0.01);
    CHECK(u.time == doctest::Approx(1.0));
    CHECK(max_abs_difference(u, u0) < 1e-8);
}

TEST_CASE("profile and physical formulations agree") {
    const Grid g(256, 30.0);
    const SpectralField u0 = gaussian(g, 0.5);
    const SpectralField a = GbbmSolver(g).evolve(u0, config(g, 0.01, 5.0));
    const SpectralField b = GbbmSolver(g, 3, true, Formulation::profile).evolve(u0, config(g, 0.01, 5.0));
    CHECK(max_abs_difference(a, b) < 1e-9 * max_abs(u0));
}

TEST_CASE("profile change matches the Duhamel quadrature") {
    const Grid g(256, 30.0);
    const GbbmSolver s(g);
    const SpectralField u0 = gaussian(g, 0.5);
    SolverConfig c = config(g, 0.005, 3.0);
    const double h = 0.02;
    for (int i = 1; i < 100; ++i) c.record_times.push_back(1.0 + h * i);
    std::vector<SpectralField> states;
    s.evolve(u0, c, [&](const SpectralField& u) { states.push_back(u); });
    REQUIRE(states.size() == 101);

    SpectralField integral(g, 3.0);
    for (std::size_t m = 0; m < states.size(); ++m) {
        const double w = (m == 0 || m + 1 == states.size()) ? 0.5 * h : h;
        const SpectralField q = s.quartic(states[m]);
        for (std::size_t i = 0; i < g.n; ++i) {
            const double om = omega(g.frequency(i));
            integral.coeffs[i] += w * cplx(0.0, -om) * std::polar(1.0, om * states[m].time) * q.coeffs[i];
        }
    }
    SpectralField change = to_profile(states.back());
    const SpectralField f0 = to_profile(states.front());
    for (std::size_t i = 0; i < g.n; ++i) change.coeffs[i] -= f0.coeffs[i];
    CHECK(max_abs(change) > 1e-4);
    CHECK(max_abs_difference(change, integral) < 1e-3 * max_abs(change));
}

TEST_CASE("doubling the box leaves the sup norm unchanged") {
    const double t_end = 20.0;
    auto sup_at_end = [&](const Grid& g) {
        const GbbmSolver s(g);
        const SpectralField u = s.evolve(gaussian(g, 0.3), config(g, 0.02, t_end));
        double m = 0.0;
        for (const auto& v : to_physical(u)) m = std::max(m, std::abs(v));
        return m;
    };
    const double a = sup_at_end(Grid(512, 64.0));
    const double b = sup_at_end(Grid(1024, 128.0));
    CHECK(std::abs(a - b) < 1e-2 * b);
}
