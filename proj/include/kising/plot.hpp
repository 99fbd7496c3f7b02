#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kising/sweep.hpp"

namespace kising {

/**
 * Static SVG rendering of a sweep result, one polyline per (mode,
 * observable) series. With more than one theta_h grid point the x axis is
 * theta_h and only the final step of each point is drawn (magnetization
 * sweep); with a single grid point the x axis is the step count (time
 * trace). The CSV is the data contract; this is a convenience view.
 */
inline void emit_plot(const SweepResult& result, std::ostream& out) {
    std::set<double> thetas;
    int max_step = 0;
    for (const auto& r : result.rows) {
        thetas.insert(r.theta_h);
        max_step = std::max(max_step, r.step);
    }
    const bool sweep_axis = thetas.size() > 1;

    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (const auto& r : result.rows) {
        if (sweep_axis && r.step != max_step) continue;
        series[r.mode + " " + r.observable].emplace_back(
            sweep_axis ? r.theta_h : static_cast<double>(r.step), r.value);
    }
    for (auto& [_, pts] : series) std::sort(pts.begin(), pts.end());

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& [_, pts] : series) {
        for (const auto& [x, y] : pts) {
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;

    constexpr int width = 640, height = 440, margin = 60;
    auto px = [&](double x) {
        return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin);
    };
    auto py = [&](double y) {
        return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
    };
    const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
        << width - margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double x = xmin + (xmax - xmin) * i / 4.0;
        const double y = ymin + (ymax - ymin) * i / 4.0;
        out << "<text x=\"" << px(x) << "\" y=\"" << height - margin + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << format_g12(std::round(x * 1e4) / 1e4)
            << "</text>\n";
        out << "<text x=\"" << margin - 8 << "\" y=\"" << py(y) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << format_g12(std::round(y * 1e4) / 1e4)
            << "</text>\n";
    }
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 14
        << "\" font-size=\"13\" text-anchor=\"middle\">" << (sweep_axis ? "theta_h" : "step")
        << "</text>\n";

    int idx = 0;
    for (const auto& [name, pts] : series) {
        const char* color = palette[idx % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts) out << px(x) << "," << py(y) << " ";
        out << "\"/>\n";
        out << "<text x=\"" << width - margin - 4 << "\" y=\"" << margin + 16 * idx
            << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << color << "\">" << name
            << "</text>\n";
        ++idx;
    }
    out << "</svg>\n";
}

inline void emit_plot(const SweepResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    emit_plot(result, out);
}

}  // namespace kising
