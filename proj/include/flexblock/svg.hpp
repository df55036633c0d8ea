#pragma once

#include <string>
#include <vector>

namespace flexblock {

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
};

/// One panel of a chart: its own y axis and series sharing the global x axis.
struct SvgPanel {
    std::string title;
    std::string y_label;
    std::vector<SvgSeries> series;
};

/// Static multi-panel line chart. Output is deterministic for fixed input.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::vector<SvgPanel>& panels,
                     int width = 960, int panel_height = 260);

}  // namespace flexblock
