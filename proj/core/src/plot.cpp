#include "banditlab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace banditlab {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 200.0;
constexpr double kTop = 48.0;
constexpr double kBottom = 56.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string num(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.2f", v);
    return buffer;
}

std::string tick_label(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%g", v);
    return buffer;
}

/// Round tick spacing: 1, 2 or 5 times a power of ten covering the range.
std::vector<double> linear_ticks(double lo, double hi, int target) {
    std::vector<double> ticks;
    if (!(hi > lo)) return {lo};
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + 1e-9 * step; v += step) ticks.push_back(v);
    return ticks;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::vector<long>& x,
                    const std::vector<SummarySeries>& series, bool log_x,
                    const std::string& title) {
    if (x.empty()) throw std::invalid_argument("plot: empty x axis");
    for (const SummarySeries& s : series) {
        if (s.mean.size() != x.size() || s.lo.size() != x.size() || s.hi.size() != x.size())
            throw std::invalid_argument("plot: series \"" + s.name + "\" length mismatch");
    }

    const double x_min_value = static_cast<double>(x.front());
    const double x_max_value = static_cast<double>(x.back());
    if (log_x && x_min_value <= 0.0) throw std::invalid_argument("plot: log axis needs x > 0");

    double y_max = 1.0;
    for (const SummarySeries& s : series)
        for (double v : s.hi) y_max = std::max(y_max, v);
    y_max *= 1.05;
    const double y_min = 0.0;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const double x_lo = log_x ? std::log10(x_min_value) : x_min_value;
    const double x_hi = log_x ? std::log10(x_max_value) : x_max_value;

    auto map_x = [&](double v) {
        const double u = log_x ? std::log10(v) : v;
        if (x_hi == x_lo) return kLeft + plot_w / 2.0;
        return kLeft + (u - x_lo) / (x_hi - x_lo) * plot_w;
    };
    auto map_y = [&](double v) {
        const double clamped = std::clamp(v, y_min, y_max);
        return kTop + (1.0 - (clamped - y_min) / (y_max - y_min)) * plot_h;
    };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("plot: cannot write " + path);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(kLeft + plot_w / 2.0)
        << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";

    // Axes.
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\""
        << num(kLeft + plot_w) << "\" y2=\"" << num(kTop + plot_h)
        << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(kTop + plot_h) << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    // X ticks: decades on a log axis, round steps otherwise.
    std::vector<double> x_ticks;
    if (log_x) {
        const int lo_exp = static_cast<int>(std::floor(x_lo));
        const int hi_exp = static_cast<int>(std::ceil(x_hi));
        for (int e = lo_exp; e <= hi_exp; ++e) {
            const double v = std::pow(10.0, e);
            if (v >= x_min_value * (1.0 - 1e-9) && v <= x_max_value * (1.0 + 1e-9))
                x_ticks.push_back(v);
        }
        if (x_ticks.empty()) x_ticks = {x_min_value, x_max_value};
    } else {
        x_ticks = linear_ticks(x_min_value, x_max_value, 6);
    }
    for (double v : x_ticks) {
        const double px = map_x(v);
        out << "<line x1=\"" << num(px) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\""
            << num(px) << "\" y2=\"" << num(kTop + plot_h + 5)
            << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << num(px) << "\" y=\"" << num(kTop + plot_h + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << tick_label(v) << "</text>\n";
    }
    out << "<text x=\"" << num(kLeft + plot_w / 2.0) << "\" y=\"" << num(kHeight - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">round"
        << (log_x ? " (log scale)" : "") << "</text>\n";

    for (double v : linear_ticks(y_min, y_max, 6)) {
        const double py = map_y(v);
        out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py) << "\" x2=\""
            << num(kLeft + plot_w) << "\" y2=\"" << num(py)
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << tick_label(v) << "</text>\n";
    }
    out << "<text transform=\"translate(18," << num(kTop + plot_h / 2.0)
        << ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">cumulative regret</text>\n";

    for (size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % kPaletteSize];
        const SummarySeries& curve = series[s];

        out << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
        for (size_t i = 0; i < x.size(); ++i)
            out << num(map_x(static_cast<double>(x[i]))) << ',' << num(map_y(curve.hi[i])) << ' ';
        for (size_t i = x.size(); i-- > 0;)
            out << num(map_x(static_cast<double>(x[i]))) << ',' << num(map_y(curve.lo[i])) << ' ';
        out << "\"/>\n";

        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.8\" points=\"";
        for (size_t i = 0; i < x.size(); ++i)
            out << num(map_x(static_cast<double>(x[i]))) << ',' << num(map_y(curve.mean[i])) << ' ';
        out << "\"/>\n";

        const double ly = kTop + 10.0 + 22.0 * static_cast<double>(s);
        const double lx = kLeft + plot_w + 16.0;
        out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24)
            << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2.5\"/>\n";
        out << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << curve.name << "</text>\n";
    }

    out << "</svg>\n";
}

}  // namespace banditlab
