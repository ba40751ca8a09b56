#include "pdcp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pdcp {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
                          "#aec7e8"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

} // namespace

std::string render_loglog_svg(const PlotSpec& spec) {
    bool any = false;
    double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    for (const auto& s : spec.series) {
        for (const auto& [x, y] : s.points) {
            if (!(x > 0.0) || !(y > 0.0))
                throw std::invalid_argument("svg: log-log plot needs positive coordinates");
            if (!any) {
                xlo = xhi = x;
                ylo = yhi = y;
                any = true;
            }
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    }
    if (!any) throw std::invalid_argument("svg: nothing to plot");

    const double w = 640, h = 480;
    const double ml = 70, mr = 180, mt = 40, mb = 55;
    const double pw = w - ml - mr, ph = h - mt - mb;

    double lx0 = std::log10(xlo), lx1 = std::log10(xhi);
    double ly0 = std::log10(ylo), ly1 = std::log10(yhi);
    // pad 4% so extreme markers stay inside the frame
    const double padx = std::max(0.04 * (lx1 - lx0), 0.05);
    const double pady = std::max(0.04 * (ly1 - ly0), 0.05);
    lx0 -= padx;
    lx1 += padx;
    ly0 -= pady;
    ly1 += pady;

    auto px = [&](double x) { return ml + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
    auto py = [&](double y) { return mt + (ly1 - std::log10(y)) / (ly1 - ly0) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
       << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
       << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n"
       << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\""
       << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

    // decade grid lines and tick labels
    for (int e = int(std::floor(lx0)); e <= int(std::ceil(lx1)); ++e) {
        const double x = std::pow(10.0, e);
        if (std::log10(x) < lx0 || std::log10(x) > lx1) continue;
        const double cx = px(x);
        os << "<line x1=\"" << fmt(cx) << "\" y1=\"" << mt << "\" x2=\"" << fmt(cx)
           << "\" y2=\"" << mt + ph << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << fmt(cx) << "\" y=\"" << mt + ph + 18
           << "\" font-size=\"11\" text-anchor=\"middle\">1e" << e << "</text>\n";
    }
    for (int e = int(std::floor(ly0)); e <= int(std::ceil(ly1)); ++e) {
        const double y = std::pow(10.0, e);
        if (std::log10(y) < ly0 || std::log10(y) > ly1) continue;
        const double cy = py(y);
        os << "<line x1=\"" << ml << "\" y1=\"" << fmt(cy) << "\" x2=\"" << ml + pw
           << "\" y2=\"" << fmt(cy) << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << fmt(cy + 4)
           << "\" font-size=\"11\" text-anchor=\"end\">1e" << e << "</text>\n";
    }

    os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << h - 14
       << "\" font-size=\"13\" text-anchor=\"middle\">" << escape(spec.x_label)
       << "</text>\n";
    os << "<text x=\"18\" y=\"" << mt + ph / 2
       << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << mt + ph / 2 << ")\">" << escape(spec.y_label) << "</text>\n";
    if (!spec.title.empty())
        os << "<text x=\"" << ml + pw / 2 << "\" y=\"24\" font-size=\"15\" "
           << "text-anchor=\"middle\">" << escape(spec.title) << "</text>\n";

    int ci = 0;
    double legend_y = mt + 14;
    for (const auto& s : spec.series) {
        const char* color = kPalette[ci % (sizeof(kPalette) / sizeof(kPalette[0]))];
        ++ci;
        auto pts = s.points;
        std::sort(pts.begin(), pts.end());
        if (pts.size() > 1) {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
            for (const auto& [x, y] : pts) os << fmt(px(x)) << "," << fmt(py(y)) << " ";
            os << "\"/>\n";
        }
        for (const auto& [x, y] : pts)
            os << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
               << "\" r=\"3.2\" fill=\"" << color << "\"/>\n";
        os << "<circle cx=\"" << ml + pw + 16 << "\" cy=\"" << fmt(legend_y - 4)
           << "\" r=\"3.2\" fill=\"" << color << "\"/>\n";
        os << "<text x=\"" << ml + pw + 26 << "\" y=\"" << fmt(legend_y)
           << "\" font-size=\"12\">" << escape(s.label) << "</text>\n";
        legend_y += 18;
    }

    os << "</svg>\n";
    return os.str();
}

} // namespace pdcp
