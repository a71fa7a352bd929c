#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gbbm/diagnostics.hpp"
#include "gbbm/linear_flow.hpp"
#include "gbbm/resonance.hpp"
#include "gbbm/spectral.hpp"
#include "json.hpp"

namespace gbbm {

enum class Subcommand { resonances, linear_decay, evolve, scatter, verify_estimates, figures };
std::string_view name(Subcommand c);

// Initial data family: gaussian(width), band(k) or near-sqrt3(width).
struct DataSpec {
    std::string family = "gaussian";
    double width = 1.0;
    int band = 4;

    void validate() const;
};
SpectralProfile make_profile(const DataSpec& d);

struct ResonanceParams {
    double tol = 1e-9;
    std::size_t samples = 100;
    std::size_t random_checks = 1000;  // extra seeded points per manifold
};

struct LinearDecayParams {
    DataSpec data;
    int m_min = 7;  // t = 2^m
    int m_max = 13;
    double oversample = 8.0;
};

struct EvolveParams {
    std::size_t n = 16384;
    double half_length = 2100.0;
    double dt = 0.05;
    double t_end = 1000.0;
    double epsilon = 1e-2;  // sup |u0^|
    DataSpec data;
    std::size_t pad = 3;
    std::string formulation = "profile";
    int per_octave = 4;  // diagnostic records per doubling of t
    double sobolev_s = 10.0;
    bool snapshots = true;  // binary snapshots at dyadic times
};

struct ScatterParams {
    EvolveParams run;
    std::vector<double> epsilons = {1e-2, 5e-3};
    double compare_t = 64.0;  // dyadic pair (t, 2t) compared across epsilons
};

struct EstimateParams {
    DataSpec data;
    int k_min = -3;
    int k_max = 5;
    int m_min = 4;
    int m_max = 13;
    EstimateConstants constants;
};

struct FigureParams {
    int id = 0;  // 0 emits every figure
    std::size_t samples = 2001;
};

struct ExperimentConfig {
    Subcommand command = Subcommand::resonances;
    std::uint64_t seed = 0;
    std::string output_dir = "gbbm_output";
    ResonanceParams resonances;
    LinearDecayParams linear;
    EvolveParams evolve;
    ScatterParams scatter;
    EstimateParams estimates;
    FigureParams figures;

    // Throws ValidationError naming the offending field.
    void validate() const;
    // Key = value text with one section per subcommand; readable by parse_args.
    std::string to_ini() const;
    nlohmann::json to_json() const;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

// Parses the command line (argv[0] excluded). `--config FILE` loads an INI
// file whose top-level keys hold seed, output_dir and command and whose
// [subcommand] sections hold the parameters; flags override it. The output
// directory defaults to $GBBM_OUTPUT_DIR when set. Returns nullopt after
// printing help. Throws ValidationError.
std::optional<ExperimentConfig> parse_args(const std::vector<std::string>& args);

struct EvolutionResult {
    std::vector<NormSample> norms;
    std::vector<SpectralField> dyadic_profiles;  // f^ at t = 1, 2, 4, ...
    double h1_initial = 0.0;
    double max_h1_drift = 0.0;  // relative
    double max_realness_defect = 0.0;
};

void validate(const EvolveParams& p);
// Solves from t = 1. Writes diagnostics and snapshots under dir when given.
EvolutionResult run_evolution(const EvolveParams& p, const std::filesystem::path* dir = nullptr);

struct ResonanceCensus {
    std::vector<ResonanceRecord> records;
    double eta0 = 0.0;
    double xi0 = 0.0;
    // Seeded random points on the space-time manifolds.
    double random_phase_residual = 0.0;
    double random_gradient_residual = 0.0;
    std::vector<std::pair<std::string, std::vector<double>>> root_census;  // on +-[1.1, 50]
};
ResonanceCensus resonance_census(const ResonanceParams& p, std::uint64_t seed);
nlohmann::json to_json(const ResonanceCensus& c);

struct LinearDecayRow {
    double t = 0.0;
    double sup = 0.0;
    double argmax = 0.0;
};
std::vector<LinearDecayRow> linear_decay(const LinearDecayParams& p);

struct EstimateSummary {
    std::vector<EstimateRow> rows;
    std::vector<std::pair<double, double>> max_ratio;  // per time
    double median = 0.0;
    double last_over_median = 0.0;
    bool bounded = false;  // finite and last <= 1.2 median
};
EstimateSummary estimate_sweep(const EstimateParams& p);

// Runs the configured experiment, writing artifacts and manifest.json into
// output_dir. Exceptions propagate.
void run(const ExperimentConfig& cfg);

// Command-line driver: 0 on success, 1 on validation failure, 2 on a
// numerical failure.
int main_entry(const std::vector<std::string>& args);

inline constexpr const char* kVersion = "1.0.0";

}  // namespace gbbm
