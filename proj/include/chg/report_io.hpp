#pragma once
// Deterministic CSV / SVG / JSON writers for reports and plots. All numeric
// formatting is locale-independent and fixed-precision so identical inputs
// produce byte-identical files.

#include <string>
#include <vector>

namespace chg {

std::string format_num(double x);  // %.12g, canonical -0/nan handling

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::string to_string() const;
};

void write_text_file(const std::string& path, const std::string& content);

struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
};

struct PlotOptions {
    int width = 640, height = 480;
    std::string title;
    bool log_x = false;
    bool has_ref_line = false;
    double ref_line = 0.0;  // horizontal reference
};

// Fixed-layout line plot with markers; axes annotated with min/max labels.
std::string svg_line_plot(const std::vector<PlotSeries>& series,
                          const PlotOptions& opt);

}  // namespace chg
