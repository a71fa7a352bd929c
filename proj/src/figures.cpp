#include "gbbm/figures.hpp"

#include <cmath>
#include <fstream>
#include <functional>

#include "gbbm/dispersion.hpp"
#include "gbbm/errors.hpp"
#include "gbbm/io.hpp"
#include "gbbm/resonance.hpp"

namespace gbbm {

namespace {

using Fn = std::function<double(double)>;

FigureSeries sample(std::string name, const Fn& f, double a, double b, std::size_t n) {
    FigureSeries s{std::move(name), {}, {}};
    s.x.reserve(n);
    s.y.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        s.x.push_back(x);
        s.y.push_back(f(x));
    }
    return s;
}

// Both branches |eta| in [lo, hi], keeping clear of the asymptotes at +-1.
FigureData on_branches(int id, std::string title, const Fn& f, double lo, double hi, std::size_t n) {
    FigureData d{id, std::move(title), {}};
    d.series.push_back(sample("negative", f, -hi, -lo, n));
    d.series.push_back(sample("positive", f, lo, hi, n));
    return d;
}

FigureData phase_figure(int id, ScalarFunction fn, double lo, std::size_t n) {
    return on_branches(id, std::string(name(fn)) + " phase", [fn](double e) { return evaluate(fn, e); }, lo, 10.0, n);
}

FigureData argument_figure(int id, std::string title, double a, double b, std::size_t n) {
    return on_branches(id, std::move(title), [a, b](double e) { return a * e + b * reflection(e); }, 1.001, 10.0, n);
}

FigureData xi_zoom(int id, std::size_t n) {
    FigureData d{id, "Xi near eta0", {}};
    d.series.push_back(sample("Xi", [](double e) { return evaluate(ScalarFunction::three_eta_minus_r, e); }, 5.05, 5.22, n));
    const double e = 3.0 * kSqrt3;
    d.series.push_back({"3sqrt3", {e}, {evaluate(ScalarFunction::three_eta_minus_r, e)}});
    return d;
}

}  // namespace

FigureData figure_data(int id, std::size_t n) {
    if (n < 2) throw ValidationError("samples must be at least 2");
    switch (id) {
        case 1: {
            FigureData d{id, "group velocity", {}};
            d.series.push_back(sample("bbm", omega_prime, -7.0, 7.0, n));
            d.series.push_back(sample("kdv", [](double x) { return 1.0 - 3.0 * x * x; }, -4.0, 4.0, n));
            return d;
        }
        case 2: {
            FigureData d{id, "Omega", {}};
            d.series.push_back(sample("-++", [](double x) { return aux_omega(1, x); }, -10.0, 13.0, n));
            d.series.push_back(sample("+++", [](double x) { return aux_omega(3, x); }, -10.0, 13.0, n));
            return d;
        }
        case 3: {
            const double eta0 = anomalous_resonance().point->eta1;
            FigureData d{id, "Phi", {}};
            d.series.push_back(sample("+++", [eta0](double x) { return aux_phi(3, eta0, x); }, -20.0, 40.0, n));
            d.series.push_back(sample("+--", [eta0](double x) { return aux_phi(-1, eta0, x); }, -20.0, 40.0, n));
            return d;
        }
        case 4:
        case 15: return xi_zoom(id, n);
        case 5: {
            FigureData d = on_branches(id, "reflection", reflection, 1.001, 10.0, n);
            d.series.push_back(sample("identity", [](double x) { return x; }, -10.0, 10.0, n));
            return d;
        }
        case 6: return argument_figure(id, "3eta+r", 3.0, 1.0, n);
        case 7: return phase_figure(id, ScalarFunction::three_eta_plus_r, 1.001, n);
        case 8: return argument_figure(id, "3eta-r", 3.0, -1.0, n);
        case 9: return phase_figure(id, ScalarFunction::three_eta_minus_r, 1.25, n);
        case 10: return argument_figure(id, "-eta+r", -1.0, 1.0, n);
        case 11: return phase_figure(id, ScalarFunction::minus_eta_plus_r, 1.001, n);
        case 12: return argument_figure(id, "-eta-r", -1.0, -1.0, n);
        case 13: return phase_figure(id, ScalarFunction::eta_plus_r, 1.001, n);
        case 14: return argument_figure(id, "2eta+2r", 2.0, 2.0, n);
        case 16: return phase_figure(id, ScalarFunction::two_eta_plus_two_r, 1.001, n);
        case 17: return phase_figure(id, ScalarFunction::two_eta_minus_two_r, 1.001, n);
        default: break;
    }
    throw ValidationError("figure id must lie in 1.." + std::to_string(kFigureCount));
}

void write_figure(const std::filesystem::path& path, const FigureData& fig) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << "series,x,y\n";
    for (const auto& s : fig.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            out << s.name << ',' << io::format_double(s.x[i]) << ',' << io::format_double(s.y[i]) << '\n';
        }
    }
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace gbbm
