#include "gbbm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gbbm/dispersion.hpp"
#include "gbbm/errors.hpp"
#include "gbbm/figures.hpp"
#include "gbbm/io.hpp"
#include "gbbm/nonlinear_solver.hpp"

namespace gbbm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<Subcommand, 6> kSubcommands = {Subcommand::resonances, Subcommand::linear_decay,
                                                    Subcommand::evolve,     Subcommand::scatter,
                                                    Subcommand::verify_estimates, Subcommand::figures};

Subcommand subcommand_from(const std::string& s) {
    for (auto c : kSubcommands) {
        if (name(c) == s) return c;
    }
    throw ValidationError("command: unknown subcommand '" + s + "'");
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

std::string fmt(double v) { return io::format_double(v); }

json point_json(const PhasePoint& p) { return json::array({p.eta1, p.eta2, p.eta3, p.xi}); }

json fit_json(const std::optional<DecayFit>& f) {
    if (!f) return nullptr;
    return {{"exponent", f->exponent}, {"prefactor", f->prefactor}, {"r_squared", f->r_squared}, {"points", f->points}};
}

std::vector<double> dyadic_times(int m_min, int m_max) {
    std::vector<double> t;
    for (int m = m_min; m <= m_max; ++m) t.push_back(std::ldexp(1.0, m));
    return t;
}

bool is_dyadic(double t) {
    int e = 0;
    return std::frexp(t, &e) == 0.5;
}

// Keeps the list of written artifacts for the manifest.
struct Outputs {
    fs::path root;
    std::vector<fs::path> files;

    fs::path add(const fs::path& rel) {
        files.push_back(rel);
        return root / rel;
    }
    void text(const fs::path& rel, const std::string& s) { io::write_text(add(rel), s); }
    void json_file(const fs::path& rel, const json& j) { text(rel, j.dump(2) + "\n"); }
};

// Options shared by `evolve` and the runs of `scatter`.
void add_run_options(CLI::App* app, EvolveParams& p, bool with_epsilon) {
    app->add_option("--n", p.n, "grid points (power of two)");
    app->add_option("--half-length", p.half_length, "periodic box [-L, L)");
    app->add_option("--dt", p.dt, "time step");
    app->add_option("--t-end", p.t_end, "final time (start is t = 1)");
    if (with_epsilon) app->add_option("--epsilon", p.epsilon, "sup of the initial transform");
    app->add_option("--family", p.data.family, "gaussian | band | near-sqrt3");
    app->add_option("--width", p.data.width, "gaussian or near-sqrt3 width");
    app->add_option("--band", p.data.band, "dyadic band k");
    app->add_option("--pad", p.pad, "dealiasing pad factor");
    app->add_option("--formulation", p.formulation, "profile | physical");
    app->add_option("--per-octave", p.per_octave, "records per doubling of t");
    app->add_option("--sobolev-s", p.sobolev_s, "Sobolev index for diagnostics");
    app->add_option("--snapshots", p.snapshots, "write binary snapshots at dyadic times");
}

void run_ini(std::ostringstream& os, const EvolveParams& p, bool with_epsilon) {
    os << "n=" << p.n << "\n";
    os << "half-length=" << fmt(p.half_length) << "\n";
    os << "dt=" << fmt(p.dt) << "\n";
    os << "t-end=" << fmt(p.t_end) << "\n";
    if (with_epsilon) os << "epsilon=" << fmt(p.epsilon) << "\n";
    os << "family=\"" << p.data.family << "\"\n";
    os << "width=" << fmt(p.data.width) << "\n";
    os << "band=" << p.data.band << "\n";
    os << "pad=" << p.pad << "\n";
    os << "formulation=\"" << p.formulation << "\"\n";
    os << "per-octave=" << p.per_octave << "\n";
    os << "sobolev-s=" << fmt(p.sobolev_s) << "\n";
    os << "snapshots=" << (p.snapshots ? "true" : "false") << "\n";
}

json data_json(const DataSpec& d) { return {{"family", d.family}, {"width", d.width}, {"band", d.band}}; }

json run_json(const EvolveParams& p) {
    return {{"n", p.n},           {"half_length", p.half_length}, {"dt", p.dt},
            {"t_end", p.t_end},   {"epsilon", p.epsilon},         {"data", data_json(p.data)},
            {"pad", p.pad},       {"formulation", p.formulation}, {"per_octave", p.per_octave},
            {"sobolev_s", p.sobolev_s}, {"snapshots", p.snapshots}};
}

bool same_run(const EvolveParams& a, const EvolveParams& b) { return run_json(a) == run_json(b); }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string_view name(Subcommand c) {
    switch (c) {
        case Subcommand::resonances: return "resonances";
        case Subcommand::linear_decay: return "linear-decay";
        case Subcommand::evolve: return "evolve";
        case Subcommand::scatter: return "scatter";
        case Subcommand::verify_estimates: return "verify-estimates";
        case Subcommand::figures: return "figures";
    }
    return "?";
}

void DataSpec::validate() const {
    require(family == "gaussian" || family == "band" || family == "near-sqrt3",
            "family must be gaussian, band or near-sqrt3");
    require(finite_positive(width), "width must be positive");
    require(band >= -20 && band <= 20, "band must lie in [-20, 20]");
}

SpectralProfile make_profile(const DataSpec& d) {
    d.validate();
    if (d.family == "gaussian") return gaussian_profile(d.width);
    if (d.family == "band") return band_profile(d.band);
    return near_sqrt3_profile(d.width);
}

void validate(const EvolveParams& p) {
    require(p.n >= 4 && (p.n & (p.n - 1)) == 0, "n must be a power of two >= 4");
    require(finite_positive(p.half_length), "half-length must be positive");
    require(finite_positive(p.dt), "dt must be positive");
    require(p.dt <= 0.1, "dt must not exceed 0.1");
    require(std::isfinite(p.t_end) && p.t_end > 1.0, "t-end must exceed 1");
    require(std::isfinite(p.epsilon) && p.epsilon >= 0.0, "epsilon must be non-negative");
    require(p.pad >= 1 && p.pad <= 3, "pad must be 1, 2 or 3");
    require(p.formulation == "profile" || p.formulation == "physical", "formulation must be profile or physical");
    require(p.per_octave >= 1 && p.per_octave <= 64, "per-octave must lie in [1, 64]");
    require(std::isfinite(p.sobolev_s) && p.sobolev_s >= 0.0, "sobolev-s must be non-negative");
    p.data.validate();
    const SpectralProfile f = make_profile(p.data);
    const Grid g(p.n, p.half_length);
    require(f.support_max <= g.nyquist(), "n too small: the initial data is not resolved below the Nyquist frequency");
    // The fastest group velocity is 1, so a box of period 2L >= 2 t_end + width
    // keeps the wrapped solution away from its support.
    require(p.half_length >= p.t_end + 5.0 * f.spatial_width,
            "half-length too small for t-end: need L >= t_end + 5 width");
}

void ExperimentConfig::validate() const {
    require(!output_dir.empty(), "output_dir must not be empty");
    switch (command) {
        case Subcommand::resonances:
            require(finite_positive(resonances.tol) && resonances.tol < 1e-3, "resonances.tol must lie in (0, 1e-3)");
            require(resonances.samples >= 2, "resonances.samples must be at least 2");
            break;
        case Subcommand::linear_decay:
            linear.data.validate();
            require(linear.m_min >= 0 && linear.m_max <= 20 && linear.m_max - linear.m_min >= 3,
                    "linear-decay.m-min/m-max must span at least 4 dyadic times within [1, 2^20]");
            require(std::isfinite(linear.oversample) && linear.oversample >= 2.0,
                    "linear-decay.oversample must be at least 2");
            break;
        case Subcommand::evolve:
            try {
                gbbm::validate(evolve);
            } catch (const ValidationError& e) {
                throw ValidationError(std::string("evolve.") + e.what());
            }
            break;
        case Subcommand::scatter:
            try {
                gbbm::validate(scatter.run);
            } catch (const ValidationError& e) {
                throw ValidationError(std::string("scatter.") + e.what());
            }
            require(!scatter.epsilons.empty(), "scatter.epsilons must not be empty");
            for (double e : scatter.epsilons) require(finite_positive(e), "scatter.epsilons must be positive");
            require(finite_positive(scatter.compare_t) && is_dyadic(scatter.compare_t) &&
                        2.0 * scatter.compare_t <= scatter.run.t_end,
                    "scatter.compare-t must be a power of two with 2 compare-t <= t-end");
            break;
        case Subcommand::verify_estimates:
            estimates.data.validate();
            require(estimates.k_min <= estimates.k_max, "verify-estimates.k-min must not exceed k-max");
            require(estimates.m_min >= 0 && estimates.m_max <= 20 && estimates.m_min < estimates.m_max,
                    "verify-estimates.m-min/m-max must satisfy 0 <= m-min < m-max <= 20");
            require(finite_positive(estimates.constants.c_hi) && finite_positive(estimates.constants.c_lo) &&
                        finite_positive(estimates.constants.s),
                    "verify-estimates constants must be positive");
            break;
        case Subcommand::figures:
            require(figures.id >= 0 && figures.id <= kFigureCount,
                    "figures.id must lie in 0.." + std::to_string(kFigureCount));
            require(figures.samples >= 2, "figures.samples must be at least 2");
            break;
    }
}

std::string ExperimentConfig::to_ini() const {
    std::ostringstream os;
    os << "command=\"" << name(command) << "\"\n";
    os << "seed=" << seed << "\n";
    os << "output-dir=\"" << output_dir << "\"\n";
    os << "\n[resonances]\n";
    os << "tol=" << fmt(resonances.tol) << "\nsamples=" << resonances.samples
       << "\nrandom-checks=" << resonances.random_checks << "\n";
    os << "\n[linear-decay]\n";
    os << "family=\"" << linear.data.family << "\"\nwidth=" << fmt(linear.data.width) << "\nband=" << linear.data.band
       << "\nm-min=" << linear.m_min << "\nm-max=" << linear.m_max << "\noversample=" << fmt(linear.oversample) << "\n";
    os << "\n[evolve]\n";
    run_ini(os, evolve, true);
    os << "\n[scatter]\n";
    run_ini(os, scatter.run, false);
    os << "epsilons=[";
    for (std::size_t i = 0; i < scatter.epsilons.size(); ++i) os << (i ? "," : "") << fmt(scatter.epsilons[i]);
    os << "]\ncompare-t=" << fmt(scatter.compare_t) << "\n";
    os << "\n[verify-estimates]\n";
    os << "family=\"" << estimates.data.family << "\"\nwidth=" << fmt(estimates.data.width)
       << "\nband=" << estimates.data.band << "\nk-min=" << estimates.k_min << "\nk-max=" << estimates.k_max
       << "\nm-min=" << estimates.m_min << "\nm-max=" << estimates.m_max << "\nc-hi=" << fmt(estimates.constants.c_hi)
       << "\nc-lo=" << fmt(estimates.constants.c_lo) << "\ns=" << fmt(estimates.constants.s) << "\n";
    os << "\n[figures]\n";
    os << "id=" << figures.id << "\nsamples=" << figures.samples << "\n";
    return os.str();
}

json ExperimentConfig::to_json() const {
    json scatter_run = run_json(scatter.run);
    scatter_run.erase("epsilon");
    return {
        {"command", name(command)},
        {"seed", seed},
        {"output_dir", output_dir},
        {"resonances", {{"tol", resonances.tol}, {"samples", resonances.samples}, {"random_checks", resonances.random_checks}}},
        {"linear_decay",
         {{"data", data_json(linear.data)}, {"m_min", linear.m_min}, {"m_max", linear.m_max}, {"oversample", linear.oversample}}},
        {"evolve", run_json(evolve)},
        {"scatter", {{"run", scatter_run}, {"epsilons", scatter.epsilons}, {"compare_t", scatter.compare_t}}},
        {"verify_estimates",
         {{"data", data_json(estimates.data)},
          {"k_min", estimates.k_min},
          {"k_max", estimates.k_max},
          {"m_min", estimates.m_min},
          {"m_max", estimates.m_max},
          {"c_hi", estimates.constants.c_hi},
          {"c_lo", estimates.constants.c_lo},
          {"s", estimates.constants.s}}},
        {"figures", {{"id", figures.id}, {"samples", figures.samples}}},
    };
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.to_json() == b.to_json() && same_run(a.evolve, b.evolve) && same_run(a.scatter.run, b.scatter.run);
}

std::optional<ExperimentConfig> parse_args(const std::vector<std::string>& args) {
    ExperimentConfig cfg;
    if (const char* env = std::getenv("GBBM_OUTPUT_DIR"); env && *env) cfg.output_dir = env;

    CLI::App app{"Numerical experiments for the quartic generalized BBM equation", "gbbm_lab"};
    app.set_config("--config", "", "INI file with [subcommand] sections");
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);
    app.require_subcommand(0, 1);
    std::string command;
    app.add_option("--command", command, "subcommand to run when none is given");
    app.add_option("--seed", cfg.seed, "seed for randomized sampling");
    app.add_option("--output-dir", cfg.output_dir, "artifact directory (default $GBBM_OUTPUT_DIR)");
    app.set_version_flag("--version", kVersion);

    auto* res = app.add_subcommand("resonances", "space-time resonance census");
    res->add_option("--tol", cfg.resonances.tol, "residual tolerance");
    res->add_option("--samples", cfg.resonances.samples, "points per manifold");
    res->add_option("--random-checks", cfg.resonances.random_checks, "seeded points per space-time manifold");

    auto* lin = app.add_subcommand("linear-decay", "sup norm of the linear flow at dyadic times");
    lin->add_option("--family", cfg.linear.data.family, "gaussian | band | near-sqrt3");
    lin->add_option("--width", cfg.linear.data.width, "gaussian or near-sqrt3 width");
    lin->add_option("--band", cfg.linear.data.band, "dyadic band k");
    lin->add_option("--m-min", cfg.linear.m_min, "first time 2^m");
    lin->add_option("--m-max", cfg.linear.m_max, "last time 2^m");
    lin->add_option("--oversample", cfg.linear.oversample, "scan points per shortest wavelength");

    auto* evo = app.add_subcommand("evolve", "nonlinear evolution with norm diagnostics");
    add_run_options(evo, cfg.evolve, true);

    auto* sca = app.add_subcommand("scatter", "dyadic profile differences for a sweep over epsilon");
    add_run_options(sca, cfg.scatter.run, false);
    sca->add_option("--epsilons", cfg.scatter.epsilons, "amplitudes, run concurrently")->expected(1, -1);
    sca->add_option("--compare-t", cfg.scatter.compare_t, "dyadic pair compared across amplitudes");

    auto* est = app.add_subcommand("verify-estimates", "ratio of sup norms to the dyadic decay bound");
    est->add_option("--family", cfg.estimates.data.family, "gaussian | band | near-sqrt3");
    est->add_option("--width", cfg.estimates.data.width, "gaussian or near-sqrt3 width");
    est->add_option("--band", cfg.estimates.data.band, "dyadic band k");
    est->add_option("--k-min", cfg.estimates.k_min, "lowest band");
    est->add_option("--k-max", cfg.estimates.k_max, "highest band");
    est->add_option("--m-min", cfg.estimates.m_min, "first time 2^m");
    est->add_option("--m-max", cfg.estimates.m_max, "last time 2^m");
    est->add_option("--c-hi", cfg.estimates.constants.c_hi, "high-frequency threshold constant");
    est->add_option("--c-lo", cfg.estimates.constants.c_lo, "low-frequency threshold constant");
    est->add_option("--s", cfg.estimates.constants.s, "Sobolev index of the bound");

    auto* fig = app.add_subcommand("figures", "curve data for the figures");
    fig->add_option("--id", cfg.figures.id, "figure 1..17, 0 for all");
    fig->add_option("--samples", cfg.figures.samples, "points per curve");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::CallForVersion&) {
        std::cout << kVersion << "\n";
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ValidationError(e.what());
    }
    const auto chosen = app.get_subcommands();
    if (!chosen.empty()) {
        cfg.command = subcommand_from(chosen.front()->get_name());
    } else if (!command.empty()) {
        cfg.command = subcommand_from(command);
    } else {
        throw ValidationError("command: no subcommand given");
    }
    return cfg;
}

EvolutionResult run_evolution(const EvolveParams& p, const fs::path* dir) {
    validate(p);
    const Grid g(p.n, p.half_length);
    const SpectralProfile prof = make_profile(p.data);
    SpectralField u0 = from_transform(
        g, [&prof](double xi) { return std::abs(xi) <= prof.support_max ? prof.value(xi) : cplx(0.0); }, 1.0);
    const double peak = max_abs(u0);
    for (auto& c : u0.coeffs) c *= peak > 0.0 ? p.epsilon / peak : 0.0;

    const auto form = p.formulation == "profile" ? Formulation::profile : Formulation::physical;
    const GbbmSolver solver(g, p.pad, true, form);
    SolverConfig cfg;
    cfg.grid = g;
    cfg.dt = p.dt;
    cfg.t0 = 1.0;
    cfg.t_end = p.t_end;
    cfg.pad = p.pad;
    cfg.formulation = form;
    for (int j = 1;; ++j) {
        const double t = std::ldexp(std::pow(2.0, static_cast<double>(j % p.per_octave) / p.per_octave), j / p.per_octave);
        if (t >= p.t_end) break;
        cfg.record_times.push_back(t);
    }

    EvolutionResult out;
    out.h1_initial = h1_norm(u0);
    solver.evolve(u0, cfg, [&](const SpectralField& u) {
        const SpectralField f = to_profile(u);
        out.norms.push_back(compute_norms(f, p.sobolev_s));
        if (out.h1_initial > 0.0) {
            out.max_h1_drift = std::max(out.max_h1_drift, std::abs(h1_norm(u) - out.h1_initial) / out.h1_initial);
        }
        out.max_realness_defect = std::max(out.max_realness_defect, realness_defect(u));
        if (is_dyadic(u.time)) {
            out.dyadic_profiles.push_back(f);
            if (dir && p.snapshots) {
                io::write_snapshot(*dir / "snapshots" / ("t" + std::to_string(std::lround(u.time)) + ".bin"), u);
            }
        }
    });
    if (dir) io::write_norms(*dir / "diagnostics.csv", out.norms);
    return out;
}

ResonanceCensus resonance_census(const ResonanceParams& p, std::uint64_t seed) {
    ResonanceCensus c;
    c.records = enumerate_resonances(p.tol, p.samples);
    for (const auto& r : c.records) {
        if (r.point && r.point->eta1 > 5.0 && r.point->eta1 == r.point->eta2) {
            c.eta0 = r.point->eta1;
            c.xi0 = r.point->xi;
        }
    }
    std::mt19937_64 rng(seed);
    for (const auto& r : c.records) {
        if (!r.manifold || r.classification != Classification::space_time) continue;
        const auto& m = *r.manifold;
        double total = 0.0;
        for (const auto& iv : m.domain) total += iv.hi - iv.lo;
        std::uniform_real_distribution<double> u(0.0, total);
        for (std::size_t i = 0; i < p.random_checks; ++i) {
            double s = u(rng);
            double param = m.domain.back().hi;
            for (const auto& iv : m.domain) {
                if (s <= iv.hi - iv.lo) {
                    param = iv.lo + s;
                    break;
                }
                s -= iv.hi - iv.lo;
            }
            const PhasePoint q = m.at(param);
            c.random_phase_residual = std::max(c.random_phase_residual, std::abs(phase(q)));
            c.random_gradient_residual = std::max(c.random_gradient_residual, gradient_norm(q));
        }
    }
    for (auto fn : kScalarFunctions) {
        auto roots = find_roots(fn, -50.0, -1.1, 1e-12);
        const auto pos = find_roots(fn, 1.1, 50.0, 1e-12);
        roots.insert(roots.end(), pos.begin(), pos.end());
        c.root_census.emplace_back(std::string(name(fn)), roots);
    }
    return c;
}

json to_json(const ResonanceCensus& c) {
    json points = json::array(), manifolds = json::array(), space = json::array();
    for (const auto& r : c.records) {
        json j = {{"family", r.family},
                  {"classification", name(r.classification)},
                  {"symmetry_derived", r.symmetry_derived},
                  {"max_gradient_residual", r.max_gradient_residual},
                  {"max_phase_residual", r.max_phase_residual}};
        if (r.point) {
            j["point"] = point_json(*r.point);
            points.push_back(j);
            continue;
        }
        j["formula"] = r.manifold->formula;
        json dom = json::array();
        for (const auto& iv : r.manifold->domain) dom.push_back({iv.lo, iv.hi});
        j["domain"] = dom;
        if (r.classification == Classification::space_time) {
            json samples = json::array();
            for (const auto& q : r.manifold->sample(100)) samples.push_back(point_json(q));
            j["samples"] = samples;
            manifolds.push_back(j);
        } else {
            json zeros = json::array();
            for (const auto& q : r.time_resonant_points) zeros.push_back(point_json(q));
            j["time_resonant_points"] = zeros;
            j["min_abs_phase"] = r.min_abs_phase;
            space.push_back(j);
        }
    }
    json roots = json::object();
    for (const auto& [n, v] : c.root_census) roots[n] = v;
    return {{"space_time_points", points},
            {"space_time_manifolds", manifolds},
            {"space_resonances", space},
            {"anomalous", {{"eta0", c.eta0}, {"xi0", c.xi0}}},
            {"random_checks",
             {{"max_phase_residual", c.random_phase_residual}, {"max_gradient_residual", c.random_gradient_residual}}},
            {"root_census", roots}};
}

std::vector<LinearDecayRow> linear_decay(const LinearDecayParams& p) {
    const SpectralProfile f = make_profile(p.data);
    ScanOptions opts;
    opts.oversample = p.oversample;
    std::vector<LinearDecayRow> rows;
    for (double t : dyadic_times(p.m_min, p.m_max)) {
        const SupNormResult r = sup_norm(f, t, opts);
        rows.push_back({t, r.value, r.argmax});
    }
    return rows;
}

EstimateSummary estimate_sweep(const EstimateParams& p) {
    const SpectralProfile f = make_profile(p.data);
    const auto times = dyadic_times(p.m_min, p.m_max);
    EstimateSummary s;
    s.rows = verify_dispersive_estimate(f, p.k_min, p.k_max, times, p.constants);
    bool finite = true;
    std::vector<double> maxima;
    for (double t : times) {
        double m = 0.0;
        for (const auto& r : s.rows) {
            if (r.t != t) continue;
            finite = finite && std::isfinite(r.ratio);
            m = std::max(m, r.ratio);
        }
        s.max_ratio.emplace_back(t, m);
        maxima.push_back(m);
    }
    s.median = median(maxima);
    s.last_over_median = s.median > 0.0 ? maxima.back() / s.median : std::numeric_limits<double>::infinity();
    s.bounded = finite && maxima.back() <= 1.2 * s.median;
    return s;
}

namespace {

json evolution_summary(const EvolveParams& p, const EvolutionResult& r) {
    std::vector<std::pair<double, double>> sup;
    for (const auto& s : r.norms) sup.emplace_back(s.t, s.sup_u);
    std::optional<DecayFit> decay;
    try {
        decay = fit_decay(sup, p.t_end / 10.0, p.t_end);
    } catch (const DegenerateFitError&) {
    }
    const BootstrapSummary b = bootstrap_report(r.norms);
    const double linf0 = r.norms.front().linf_fhat;
    const double linf_ratio = linf0 > 0.0 ? b.sup_linf / linf0 : 0.0;
    return {{"records", r.norms.size()},
            {"h1_initial", r.h1_initial},
            {"max_h1_relative_drift", r.max_h1_drift},
            {"max_realness_defect", r.max_realness_defect},
            {"sup_u_fit", fit_json(decay)},
            {"sup_u_fit_window", {p.t_end / 10.0, p.t_end}},
            {"sup_linf_over_initial", linf_ratio},
            {"bootstrap",
             {{"sup_linf", b.sup_linf},
              {"sup_weighted", b.sup_weighted},
              {"sup_sobolev", b.sup_sobolev},
              {"norm", b.norm},
              {"weighted_fit", fit_json(b.weighted_fit)},
              {"sobolev_fit", fit_json(b.sobolev_fit)},
              {"weighted_violation", b.weighted_violation},
              {"sobolev_violation", b.sobolev_violation}}},
            {"flags",
             {{"sup_u_decay_ok", decay && std::abs(decay->exponent + 1.0 / 3.0) <= 0.07},
              {"linf_bounded_ok", linf_ratio <= 2.0},
              {"weighted_growth_ok", b.weighted_fit && b.weighted_fit->exponent < 1.0 / 6.0}}}};
}

void run_resonances(const ExperimentConfig& cfg, Outputs& out) {
    const ResonanceCensus c = resonance_census(cfg.resonances, cfg.seed);
    out.json_file("census.json", to_json(c));
}

void run_linear(const ExperimentConfig& cfg, Outputs& out) {
    const auto rows = linear_decay(cfg.linear);
    std::vector<std::vector<double>> data;
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) {
        data.push_back({r.t, r.sup, r.argmax, r.argmax / r.t});
        pts.emplace_back(r.t, r.sup);
    }
    io::write_csv(out.add("linear_decay.csv"), {"t", "sup_u", "argmax", "argmax_over_t"}, data);
    out.json_file("summary.json", {{"fit", fit_json(fit_decay(pts, rows.front().t, rows.back().t))},
                                   {"final_argmax_over_t", rows.back().argmax / rows.back().t}});
}

void run_evolve(const ExperimentConfig& cfg, Outputs& out) {
    const EvolutionResult r = run_evolution(cfg.evolve, &out.root);
    out.files.push_back("diagnostics.csv");
    if (cfg.evolve.snapshots) {
        for (const auto& f : r.dyadic_profiles) {
            out.files.push_back(fs::path("snapshots") / ("t" + std::to_string(std::lround(f.time)) + ".bin"));
        }
    }
    json summary = evolution_summary(cfg.evolve, r);
    try {
        const ScatteringReport s = scattering_test(r.dyadic_profiles);
        io::write_scattering(out.add("scattering.csv"), s.rows);
        summary["scattering"] = {{"fit", fit_json(s.fit)}, {"monotone_from_8", s.monotone_from(8.0)}};
    } catch (const InsufficientDataError&) {
        summary["scattering"] = nullptr;
    }
    out.json_file("summary.json", summary);
}

void run_scatter(const ExperimentConfig& cfg, Outputs& out) {
    const auto& eps = cfg.scatter.epsilons;
    std::vector<std::future<EvolutionResult>> jobs;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        EvolveParams p = cfg.scatter.run;
        p.epsilon = eps[i];
        const fs::path dir = out.root / ("eps_" + std::to_string(i));
        jobs.push_back(std::async(std::launch::async, [p, dir] { return run_evolution(p, &dir); }));
    }
    json runs = json::array();
    std::vector<double> compared;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const EvolutionResult r = jobs[i].get();
        const fs::path sub = "eps_" + std::to_string(i);
        out.files.push_back(sub / "diagnostics.csv");
        if (cfg.scatter.run.snapshots) {
            for (const auto& f : r.dyadic_profiles) {
                out.files.push_back(sub / "snapshots" / ("t" + std::to_string(std::lround(f.time)) + ".bin"));
            }
        }
        const ScatteringReport s = scattering_test(r.dyadic_profiles);
        io::write_scattering(out.add(sub / "scattering.csv"), s.rows);
        double at = std::numeric_limits<double>::quiet_NaN();
        for (const auto& row : s.rows) {
            if (row.t == cfg.scatter.compare_t) at = row.diff_linf;
        }
        compared.push_back(at);
        runs.push_back({{"epsilon", eps[i]},
                        {"fit", fit_json(s.fit)},
                        {"fitted_rate_negative", s.fit && s.fit->exponent < 0.0},
                        {"monotone_from_8", s.monotone_from(8.0)},
                        {"diff_at_compare_t", at}});
    }
    json ratios = json::array();
    for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
        ratios.push_back({{"observed", compared[i] / compared[i + 1]}, {"quartic", std::pow(eps[i] / eps[i + 1], 4)}});
    }
    out.json_file("summary.json", {{"runs", runs}, {"compare_t", cfg.scatter.compare_t}, {"ratios", ratios}});
}

void run_estimates(const ExperimentConfig& cfg, Outputs& out) {
    const EstimateSummary s = estimate_sweep(cfg.estimates);
    io::write_estimates(out.add("estimates.csv"), s.rows);
    json per_t = json::array();
    for (const auto& [t, m] : s.max_ratio) per_t.push_back({{"t", t}, {"max_ratio", m}});
    out.json_file("summary.json", {{"max_ratio", per_t},
                                   {"median", s.median},
                                   {"last_over_median", s.last_over_median},
                                   {"bounded", s.bounded}});
}

void run_figures(const ExperimentConfig& cfg, Outputs& out) {
    for (int id = 1; id <= kFigureCount; ++id) {
        if (cfg.figures.id != 0 && cfg.figures.id != id) continue;
        write_figure(out.add("fig_" + std::to_string(id) + ".csv"), figure_data(id, cfg.figures.samples));
    }
}

}  // namespace

void run(const ExperimentConfig& cfg) {
    cfg.validate();
    Outputs out{cfg.output_dir, {}};
    fs::create_directories(out.root);
    switch (cfg.command) {
        case Subcommand::resonances: run_resonances(cfg, out); break;
        case Subcommand::linear_decay: run_linear(cfg, out); break;
        case Subcommand::evolve: run_evolve(cfg, out); break;
        case Subcommand::scatter: run_scatter(cfg, out); break;
        case Subcommand::verify_estimates: run_estimates(cfg, out); break;
        case Subcommand::figures: run_figures(cfg, out); break;
    }
    out.text("config.ini", cfg.to_ini());
    json sums = json::object();
    for (const auto& f : out.files) sums[f.generic_string()] = io::sha256_file(out.root / f);
    const json manifest = {{"tool", "gbbm_lab"},
                           {"version", kVersion},
                           {"command", name(cfg.command)},
                           {"seed", cfg.seed},
                           {"config", cfg.to_json()},
                           {"checksums", sums}};
    io::write_text(out.root / "manifest.json", manifest.dump(2) + "\n");
}

int main_entry(const std::vector<std::string>& args) {
    try {
        const auto cfg = parse_args(args);
        if (!cfg) return 0;
        run(*cfg);
        std::cout << "wrote " << cfg->output_dir << "\n";
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace gbbm
