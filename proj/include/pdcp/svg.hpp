#ifndef PDCP_SVG_HPP
#define PDCP_SVG_HPP

#include <string>
#include <utility>
#include <vector>

namespace pdcp {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points; // (x, y), both positive
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

// Standalone SVG 1.1 log-log scatter+line chart with legend. Throws on an
// empty plot or nonpositive coordinates.
std::string render_loglog_svg(const PlotSpec& spec);

} // namespace pdcp

#endif
