#pragma once

#include <string>
#include <vector>

namespace banditlab {

/// One plotted curve: mean with a shaded band between lo and hi.
struct SummarySeries {
    std::string name;
    std::vector<double> mean;
    std::vector<double> lo;
    std::vector<double> hi;
};

/// Writes a self-contained SVG line chart of the series over the given
/// x positions. All vectors must share the x size.
void write_svg_plot(const std::string& path, const std::vector<long>& x,
                    const std::vector<SummarySeries>& series, bool log_x,
                    const std::string& title);

}  // namespace banditlab
