#include "gbbm/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "gbbm/errors.hpp"

namespace gbbm::io {

namespace {

static_assert(std::endian::native == std::endian::little, "snapshot format assumes a little-endian host");

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, mode | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is, const std::filesystem::path& path) {
    T v;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw ValidationError("truncated snapshot " + path.string());
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
    if (!out) throw Error("write failed for " + path.string());
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, std::vector<std::string>* header) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path.string());
    std::string line;
    std::getline(in, line);
    if (header) {
        header->clear();
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) header->push_back(cell);
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_estimates(const std::filesystem::path& path, const std::vector<EstimateRow>& rows) {
    std::vector<std::vector<double>> data;
    for (const auto& r : rows) data.push_back({r.t, double(r.k), double(r.case_id), r.lhs, r.rhs, r.ratio});
    write_csv(path, {"t", "k", "case_id", "lhs", "rhs", "ratio"}, data);
}

void write_norms(const std::filesystem::path& path, const std::vector<NormSample>& samples) {
    std::vector<std::vector<double>> data;
    for (const auto& s : samples) data.push_back({s.t, s.linf_fhat, s.weighted_l2, s.sobolev, s.sup_u});
    write_csv(path, {"t", "linf_fhat", "weighted_l2", "sobolev_s", "sup_u"}, data);
}

void write_scattering(const std::filesystem::path& path, const std::vector<ScatteringRow>& rows) {
    std::vector<std::vector<double>> data;
    for (const auto& r : rows) data.push_back({r.t, r.diff_linf, r.diff_l2});
    write_csv(path, {"t", "diff_linf", "diff_l2"}, data);
}

void write_snapshot(const std::filesystem::path& path, const SpectralField& f) {
    auto out = open_out(path, std::ios::binary);
    const std::size_t n = f.grid.n;
    put<std::uint64_t>(out, n);
    put<double>(out, f.grid.half_length);
    put<double>(out, f.time);
    for (std::size_t p = 0; p < n; ++p) {
        const cplx c = f.coeffs[f.grid.index(static_cast<long>(p) - static_cast<long>(n / 2))];
        put<double>(out, c.real());
        put<double>(out, c.imag());
    }
    if (!out) throw Error("write failed for " + path.string());
}

SpectralField read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path.string());
    const auto n = get<std::uint64_t>(in, path);
    const double L = get<double>(in, path);
    const double t = get<double>(in, path);
    SpectralField f(Grid(n, L), t);
    for (std::size_t p = 0; p < n; ++p) {
        const double re = get<double>(in, path);
        const double im = get<double>(in, path);
        f.coeffs[f.grid.index(static_cast<long>(p) - static_cast<long>(n / 2))] = {re, im};
    }
    return f;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    if (!out) throw Error("write failed for " + path.string());
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 unavailable");
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned int i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

}  // namespace gbbm::io
