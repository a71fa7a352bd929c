#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gbbm {

struct FigureSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct FigureData {
    int id = 0;
    std::string title;
    std::vector<FigureSeries> series;
};

inline constexpr int kFigureCount = 17;

// Curve data for figure `id` in 1..kFigureCount, `samples` points per
// series. Throws ValidationError for an unknown id or samples < 2.
FigureData figure_data(int id, std::size_t samples = 2001);

// CSV with header series,x,y.
void write_figure(const std::filesystem::path& path, const FigureData& fig);

}  // namespace gbbm
