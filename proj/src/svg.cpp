#include "epikit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "epikit/errors.hpp"

namespace epikit {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                         "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

} // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<PlotSeries>& series) {
    const int width = 720, height = 480;
    const int mleft = 70, mright = 160, mtop = 40, mbottom = 50;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!std::isfinite(xmin) || !std::isfinite(ymin)) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;

    auto px = [&](double x) { return mleft + (x - xmin) / (xmax - xmin) * (width - mleft - mright); };
    auto py = [&](double y) {
        return height - mbottom - (y - ymin) / (ymax - ymin) * (height - mtop - mbottom);
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";

    // axes
    out << "<line x1=\"" << mleft << "\" y1=\"" << height - mbottom << "\" x2=\"" << width - mright
        << "\" y2=\"" << height - mbottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << mleft << "\" y1=\"" << mtop << "\" x2=\"" << mleft << "\" y2=\""
        << height - mbottom << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 5;
        const double yv = ymin + (ymax - ymin) * k / 5;
        out << "<text x=\"" << px(xv) << "\" y=\"" << height - mbottom + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << xv << "</text>\n";
        out << "<text x=\"" << mleft - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << yv << "</text>\n";
    }

    int color = 0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << kColors[color % 8] << "\" stroke-width=\"1.5\" points=\"";
        const std::size_t n = std::min(s.x.size(), s.y.size());
        const std::size_t stride = std::max<std::size_t>(1, n / 2000);
        for (std::size_t j = 0; j < n; j += stride)
            out << px(s.x[j]) << ',' << py(s.y[j]) << ' ';
        if (n) out << px(s.x[n - 1]) << ',' << py(s.y[n - 1]);
        out << "\"/>\n";
        const int ly = mtop + 18 * color;
        out << "<line x1=\"" << width - mright + 10 << "\" y1=\"" << ly << "\" x2=\""
            << width - mright + 34 << "\" y2=\"" << ly << "\" stroke=\"" << kColors[color % 8]
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << width - mright + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
            << s.label << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
    if (!out) throw IoError("write failed for " + path);
}

} // namespace epikit
