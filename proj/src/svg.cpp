#include "ebp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ebp/io.hpp"

namespace ebp {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

// largest "nice" step (1, 2 or 5 times a power of ten) giving <= max_ticks
double nice_step(double range, int max_ticks) {
    if (range <= 0.0) return 1.0;
    double rough = range / max_ticks;
    double mag = std::pow(10.0, std::floor(std::log10(rough)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= rough) return mag * mult;
    }
    return mag * 10.0;
}

std::string fmt(double v) {
    // trim fp dust in tick labels
    double r = std::round(v * 1e6) / 1e6;
    if (r == 0.0) r = 0.0; // normalize -0
    return format_double(r);
}

} // namespace

std::string render_line_chart(const std::string& title,
                              const std::vector<ChartSeries>& series,
                              int width, int height) {
    const double ml = 62, mr = 16, mt = 34, mb = 40; // margins
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const ChartSeries& s : series) {
        for (auto [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmin <= xmax)) { xmin = 0; xmax = 1; }
    if (!(ymin <= ymax)) { ymin = 0; ymax = 1; }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) { ymax = ymin + 0.5; ymin -= 0.5; }

    double plot_w = width - ml - mr;
    double plot_h = height - mt - mb;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return mt + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
       << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";

    // gridlines + ticks
    double ystep = nice_step(ymax - ymin, 6);
    for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-9 * ystep;
         y += ystep) {
        os << "<line x1=\"" << ml << "\" y1=\"" << fmt(py(y)) << "\" x2=\""
           << ml + plot_w << "\" y2=\"" << fmt(py(y))
           << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << fmt(py(y) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
              "font-size=\"11\">" << fmt(y) << "</text>\n";
    }
    double xstep = nice_step(xmax - xmin, 8);
    for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-9 * xstep;
         x += xstep) {
        os << "<line x1=\"" << fmt(px(x)) << "\" y1=\"" << mt + plot_h
           << "\" x2=\"" << fmt(px(x)) << "\" y2=\"" << mt + plot_h + 4
           << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << fmt(px(x)) << "\" y=\"" << mt + plot_h + 17
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
              "font-size=\"11\">" << fmt(x) << "</text>\n";
    }

    // axes
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
       << "\" y2=\"" << mt + plot_h << "\" stroke=\"#333333\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt + plot_h << "\" x2=\""
       << ml + plot_w << "\" y2=\"" << mt + plot_h << "\" stroke=\"#333333\"/>\n";

    // series
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(*kPalette))];
        os << "<polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : series[i].points)
            os << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
        os << "\"/>\n";
    }

    // legend
    double ly = mt + 6;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(*kPalette))];
        os << "<line x1=\"" << ml + plot_w - 150 << "\" y1=\"" << fmt(ly)
           << "\" x2=\"" << ml + plot_w - 130 << "\" y2=\"" << fmt(ly)
           << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << ml + plot_w - 124 << "\" y=\"" << fmt(ly + 4)
           << "\" font-family=\"sans-serif\" font-size=\"11\">"
           << series[i].name << "</text>\n";
        ly += 16;
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace ebp
