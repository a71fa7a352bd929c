#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstring>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gbbm/dispersion.hpp"
#include "gbbm/errors.hpp"
#include "gbbm/experiment.hpp"
#include "gbbm/figures.hpp"
#include "gbbm/io.hpp"

using namespace gbbm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("gbbm_test_" + std::to_string(::getpid()) + "_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int sign_changes(const std::vector<double>& y) {
    int n = 0;
    for (std::size_t i = 1; i < y.size(); ++i) n += (y[i - 1] > 0) != (y[i] > 0);
    return n;
}

}  // namespace

TEST_CASE("doubles are printed to round-trip") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, kSqrt3}) {
        CHECK(std::stod(io::format_double(v)) == v);
    }
}

TEST_CASE("CSV and snapshot round trips") {
    const fs::path dir = scratch("io");
    io::write_scattering(dir / "s.csv", {{8, 1.0 / 3.0, 2.0 / 7.0}, {16, 1e-17, 3e-300}});
    std::vector<std::string> header;
    const auto rows = io::read_csv(dir / "s.csv", &header);
    CHECK(header == std::vector<std::string>{"t", "diff_linf", "diff_l2"});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][1] == 1.0 / 3.0);
    CHECK(rows[1][2] == 3e-300);

    io::write_norms(dir / "n.csv", {NormSample{}});
    io::read_csv(dir / "n.csv", &header);
    CHECK(header == std::vector<std::string>{"t", "linf_fhat", "weighted_l2", "sobolev_s", "sup_u"});
    io::write_estimates(dir / "e.csv", {});
    io::read_csv(dir / "e.csv", &header);
    CHECK(header == std::vector<std::string>{"t", "k", "case_id", "lhs", "rhs", "ratio"});

    const Grid g(64, 12.5);
    SpectralField f = from_function(g, [](double x) { return std::exp(-x * x) * std::sin(x); }, 3.25);
    io::write_snapshot(dir / "f.bin", f);
    CHECK(fs::file_size(dir / "f.bin") == 24 + 16 * 64);
    const SpectralField back = io::read_snapshot(dir / "f.bin");
    CHECK(back.grid.n == 64);
    CHECK(back.grid.half_length == 12.5);
    CHECK(back.time == 3.25);
    CHECK(max_abs_difference(back, f) == 0.0);

    // The first stored pair is the most negative frequency j = -n/2.
    const std::string bytes = slurp(dir / "f.bin");
    double re = 0.0;
    std::memcpy(&re, bytes.data() + 24, sizeof re);
    CHECK(re == f.coeffs[g.index(-32)].real());

    std::ofstream(dir / "short.bin") << "abc";
    CHECK_THROWS_AS(io::read_snapshot(dir / "short.bin"), ValidationError);
    fs::remove_all(dir);
}

TEST_CASE("SHA-256 of a known message") {
    const fs::path dir = scratch("sha");
    io::write_text(dir / "abc.txt", "abc");
    CHECK(io::sha256_file(dir / "abc.txt") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    fs::remove_all(dir);
}

TEST_CASE("figure data") {
    for (int id = 1; id <= kFigureCount; ++id) {
        const FigureData d = figure_data(id, 101);
        CHECK(d.id == id);
        CHECK_FALSE(d.series.empty());
        for (const auto& s : d.series) {
            CHECK(s.x.size() == s.y.size());
            for (double y : s.y) CHECK(std::isfinite(y));
        }
    }
    CHECK_THROWS_AS(figure_data(0), ValidationError);
    CHECK_THROWS_AS(figure_data(18), ValidationError);

    const FigureData xi = figure_data(15, 2001);
    CHECK(sign_changes(xi.series[0].y) == 1);
    CHECK(xi.series[1].y[0] == doctest::Approx(-0.010564379327792007).epsilon(1e-10));
    // -eta + r and 2eta - 2r vanish at +-sqrt(3); eta + r never does.
    CHECK(sign_changes(figure_data(11).series[1].y) == 1);
    CHECK(sign_changes(figure_data(17).series[0].y) == 1);
    CHECK(sign_changes(figure_data(13).series[1].y) == 0);
    CHECK(sign_changes(figure_data(9).series[1].y) == 1);
}

TEST_CASE("config round-trips through its INI form") {
    ExperimentConfig c;
    c.command = Subcommand::scatter;
    c.seed = 987654321;
    c.output_dir = "some dir/out";
    c.resonances.tol = 3e-10;
    c.linear.data = {"near-sqrt3", 0.15, 2};
    c.linear.oversample = 12.5;
    c.evolve.dt = 1.0 / 30.0;
    c.evolve.formulation = "physical";
    c.evolve.snapshots = false;
    c.scatter.run.n = 2048;
    c.scatter.run.data.family = "band";
    c.scatter.epsilons = {0.02, 0.01, 1.0 / 300.0};
    c.scatter.compare_t = 32;
    c.estimates.k_min = -5;
    c.estimates.constants.c_lo = 0.3;
    c.figures.id = 9;

    const fs::path dir = scratch("ini");
    io::write_text(dir / "c.ini", c.to_ini());
    const auto back = parse_args({"--config", (dir / "c.ini").string()});
    REQUIRE(back.has_value());
    CHECK(*back == c);
    CHECK(back->to_ini() == c.to_ini());

    // Flags override the file; a named subcommand overrides `command`.
    const auto over = parse_args({"--config", (dir / "c.ini").string(), "--seed", "4", "evolve", "--dt", "0.02"});
    CHECK(over->command == Subcommand::evolve);
    CHECK(over->seed == 4);
    CHECK(over->evolve.dt == 0.02);
    CHECK(over->evolve.formulation == "physical");
    CHECK(over->scatter.epsilons == c.scatter.epsilons);
    fs::remove_all(dir);
}

TEST_CASE("output directory falls back to the environment") {
    ::setenv("GBBM_OUTPUT_DIR", "/tmp/from_env", 1);
    CHECK(parse_args({"figures"})->output_dir == "/tmp/from_env");
    CHECK(parse_args({"--output-dir", "x", "figures"})->output_dir == "x");
    ::unsetenv("GBBM_OUTPUT_DIR");
    CHECK(parse_args({"figures"})->output_dir == "gbbm_output");
}

TEST_CASE("validation names the failing field") {
    auto message = [](const std::vector<std::string>& args) {
        try {
            parse_args(args)->validate();
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message({"evolve", "--dt", "0"}).find("evolve.dt") != std::string::npos);
    CHECK(message({"evolve", "--dt", "-1"}).find("evolve.dt") != std::string::npos);
    CHECK(message({"scatter", "--n", "1000"}).find("scatter.n") != std::string::npos);
    CHECK(message({"evolve", "--half-length", "100"}).find("half-length") != std::string::npos);
    CHECK(message({"figures", "--id", "40"}).find("figures.id") != std::string::npos);
    CHECK(message({"linear-decay", "--family", "box"}).find("family") != std::string::npos);
    CHECK(message({"figures"}).empty());
    CHECK_THROWS_AS(parse_args({}), ValidationError);
    CHECK_THROWS_AS(parse_args({"evolve", "--dt", "abc"}), ValidationError);
    CHECK_THROWS_AS(parse_args({"--command", "nope"}), ValidationError);
}

TEST_CASE("exit codes") {
    const fs::path dir = scratch("exit");
    CHECK(main_entry({"--output-dir", dir.string(), "evolve", "--dt", "0"}) == 1);
    CHECK(main_entry({"--output-dir", dir.string(), "evolve", "--n", "256", "--half-length", "40", "--t-end", "5",
                      "--epsilon", "1e4"}) == 2);
    CHECK(main_entry({"--output-dir", dir.string(), "figures", "--id", "2", "--samples", "11"}) == 0);
    fs::remove_all(dir);
}

TEST_CASE("runs are deterministic and checksummed") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    for (const auto& d : {a, b}) {
        ExperimentConfig c;
        c.command = Subcommand::evolve;
        c.output_dir = d.string();
        c.evolve.n = 512;
        c.evolve.half_length = 40.0;
        c.evolve.t_end = 16.0;
        c.evolve.epsilon = 0.2;
        c.evolve.dt = 0.05;
        run(c);
    }
    for (const char* f : {"diagnostics.csv", "summary.json", "scattering.csv", "snapshots/t8.bin"}) {
        CHECK(slurp(a / f) == slurp(b / f));
    }
    const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
    CHECK(manifest["command"] == "evolve");
    CHECK(manifest["version"] == kVersion);
    CHECK(manifest["config"]["evolve"]["n"] == 512);
    CHECK(manifest["checksums"].size() == 9);  // 5 snapshots, 3 tables, config
    for (const auto& [file, sum] : manifest["checksums"].items()) CHECK(io::sha256_file(a / file) == sum);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("resonance census contents") {
    const ResonanceCensus c = resonance_census({}, 7);
    CHECK(c.eta0 > 5.07);
    CHECK(c.eta0 < 5.13);
    CHECK(c.xi0 == doctest::Approx(3 * c.eta0 - reflection(c.eta0)).epsilon(1e-15));
    CHECK(c.random_phase_residual < 1e-9);
    CHECK(c.random_gradient_residual < 1e-9);
    const auto j = to_json(c);
    CHECK(j["space_time_points"].size() == 4);
    CHECK(j["space_time_manifolds"].size() == 9);
    for (const auto& m : j["space_time_manifolds"]) CHECK(m["samples"].size() == 100);
    CHECK(j["root_census"]["3eta-r"].size() == 2);
}

TEST_CASE("command-line binary") {
    const char* lab = std::getenv("GBBM_LAB");
    if (!lab) return;
    const fs::path dir = scratch("cli");
    const std::string cmd = std::string(lab) + " --output-dir " + dir.string() + " figures --id 15 > /dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::vector<std::string> header;
    const std::string csv = slurp(dir / "fig_15.csv");
    CHECK(csv.rfind("series,x,y\n", 0) == 0);
    std::vector<double> y;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.rfind("Xi,", 0) == 0) y.push_back(std::stod(line.substr(line.rfind(',') + 1)));
    }
    CHECK(y.size() == 2001);
    CHECK(sign_changes(y) == 1);

    const std::string bad = std::string(lab) + " evolve --dt 0 2> " + (dir / "err.txt").string();
    const int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == 1);
    CHECK(slurp(dir / "err.txt").find("dt") != std::string::npos);
    fs::remove_all(dir);
}
