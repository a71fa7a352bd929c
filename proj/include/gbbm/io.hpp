#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gbbm/diagnostics.hpp"
#include "gbbm/linear_flow.hpp"
#include "gbbm/spectral.hpp"

namespace gbbm::io {

// 17 significant digits, enough to round-trip a double.
std::string format_double(double v);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, std::vector<std::string>* header = nullptr);

void write_estimates(const std::filesystem::path& path, const std::vector<EstimateRow>& rows);
void write_norms(const std::filesystem::path& path, const std::vector<NormSample>& samples);
void write_scattering(const std::filesystem::path& path, const std::vector<ScatteringRow>& rows);

// Little-endian n (uint64), L and t (float64), then re/im pairs in
// increasing-frequency order j = -n/2 .. n/2-1.
void write_snapshot(const std::filesystem::path& path, const SpectralField& f);
SpectralField read_snapshot(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
// Lowercase hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace gbbm::io
