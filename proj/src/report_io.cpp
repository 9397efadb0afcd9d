#include "chg/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chg {

std::string format_num(double x) {
    if (std::isnan(x)) return "nan";
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string CsvTable::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_num(row[i]);
        os << "\n";
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

namespace {

const char* kColors[] = {"#1f6fb2", "#c23b22", "#3a9a5c", "#8a5bb5", "#b2831f"};

}  // namespace

std::string svg_line_plot(const std::vector<PlotSeries>& series,
                          const PlotOptions& opt) {
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double xv = opt.log_x ? std::log10(s.x[i]) : s.x[i];
            xlo = std::fmin(xlo, xv);
            xhi = std::fmax(xhi, xv);
            ylo = std::fmin(ylo, s.y[i]);
            yhi = std::fmax(yhi, s.y[i]);
        }
    if (opt.has_ref_line) {
        ylo = std::fmin(ylo, opt.ref_line);
        yhi = std::fmax(yhi, opt.ref_line);
    }
    if (xhi <= xlo) { xhi = xlo + 1.0; }
    if (yhi <= ylo) { yhi = ylo + 1.0; }
    const double padx = 0.05 * (xhi - xlo), pady = 0.05 * (yhi - ylo);
    xlo -= padx; xhi += padx; ylo -= pady; yhi += pady;

    const int W = opt.width, H = opt.height;
    const int ml = 60, mr = 20, mt = 30, mb = 40;
    auto px = [&](double x) {
        const double xv = opt.log_x ? std::log10(x) : x;
        return ml + (xv - xlo) / (xhi - xlo) * (W - ml - mr);
    };
    auto py = [&](double y) {
        return H - mb - (y - ylo) / (yhi - ylo) * (H - mt - mb);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
       << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H
       << "\" fill=\"white\"/>\n";
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
       << "\" height=\"" << H - mt - mb
       << "\" fill=\"none\" stroke=\"#444\"/>\n";
    if (!opt.title.empty())
        os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" "
              "font-size=\"13\" font-family=\"monospace\">" << opt.title
           << "</text>\n";
    os << "<text x=\"" << ml << "\" y=\"" << H - 8
       << "\" font-size=\"11\" font-family=\"monospace\">" << format_num(xlo)
       << "</text>\n";
    os << "<text x=\"" << W - mr << "\" y=\"" << H - 8
       << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"monospace\">"
       << format_num(xhi) << "</text>\n";
    os << "<text x=\"4\" y=\"" << H - mb
       << "\" font-size=\"11\" font-family=\"monospace\">" << format_num(ylo)
       << "</text>\n";
    os << "<text x=\"4\" y=\"" << mt + 10
       << "\" font-size=\"11\" font-family=\"monospace\">" << format_num(yhi)
       << "</text>\n";
    if (opt.has_ref_line) {
        const double y = py(opt.ref_line);
        os << "<line x1=\"" << ml << "\" y1=\"" << format_num(y) << "\" x2=\""
           << W - mr << "\" y2=\"" << format_num(y)
           << "\" stroke=\"#999\" stroke-dasharray=\"5,4\"/>\n";
    }
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* col = kColors[si % 5];
        os << "<polyline fill=\"none\" stroke=\"" << col
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            os << format_num(px(s.x[i])) << "," << format_num(py(s.y[i])) << " ";
        os << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            os << "<circle cx=\"" << format_num(px(s.x[i])) << "\" cy=\""
               << format_num(py(s.y[i])) << "\" r=\"3\" fill=\"" << col
               << "\"/>\n";
        if (!s.label.empty())
            os << "<text x=\"" << ml + 8 << "\" y=\"" << mt + 16 + 14 * int(si)
               << "\" font-size=\"11\" font-family=\"monospace\" fill=\"" << col
               << "\">" << s.label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace chg
