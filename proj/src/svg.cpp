#include "scrub/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace scrub::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

std::string num(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.3f", v);
    return buffer;
}

std::string header(const std::string& title) {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
                      "viewBox=\"0 0 640 420\">\n";
    out += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
    out += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" + title + "</text>\n";
    return out;
}

std::string axes() {
    const std::string x0 = num(kMarginLeft);
    const std::string y0 = num(kHeight - kMarginBottom);
    const std::string x1 = num(kWidth - kMarginRight);
    const std::string y1 = num(kMarginTop);
    return "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x1 + "\" y2=\"" + y0 +
           "\" stroke=\"black\"/>\n<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x0 +
           "\" y2=\"" + y1 + "\" stroke=\"black\"/>\n";
}

}  // namespace

std::string line_chart(const std::string& title,
                       const std::vector<std::pair<int, double>>& series) {
    std::string out = header(title) + axes();
    if (series.empty()) return out + "</svg>\n";

    double x_min = series.front().first;
    double x_max = series.back().first;
    double y_min = series.front().second;
    double y_max = y_min;
    for (const auto& [x, y] : series) {
        x_min = std::min(x_min, static_cast<double>(x));
        x_max = std::max(x_max, static_cast<double>(x));
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto to_x = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto to_y = [&](double y) {
        return kHeight - kMarginBottom - (y - y_min) / (y_max - y_min) * plot_h;
    };

    for (int tick = 0; tick <= 4; ++tick) {
        const double y = y_min + (y_max - y_min) * tick / 4.0;
        out += "<text x=\"" + num(kMarginLeft - 8) + "\" y=\"" + num(to_y(y) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(y) +
               "</text>\n";
        const double x = x_min + (x_max - x_min) * tick / 4.0;
        out += "<text x=\"" + num(to_x(x)) + "\" y=\"" + num(kHeight - kMarginBottom + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               num(x) + "</text>\n";
    }

    std::string points;
    for (const auto& [x, y] : series) {
        points += num(to_x(x)) + "," + num(to_y(y)) + " ";
    }
    out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"" + points +
           "\"/>\n";
    for (const auto& [x, y] : series) {
        out += "<circle cx=\"" + num(to_x(x)) + "\" cy=\"" + num(to_y(y)) +
               "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
    return out + "</svg>\n";
}

std::string probability_histogram(const std::string& title, const ProbabilityDistribution& dist) {
    std::string out = header(title) + axes();
    const auto bins = static_cast<int>(dist.counts_class0.size());
    int peak = 1;
    for (int b = 0; b < bins; ++b) {
        peak = std::max({peak, dist.counts_class0(b), dist.counts_class1(b)});
    }

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const double bin_w = plot_w / bins;
    const auto bar_h = [&](int count) { return plot_h * count / peak; };

    for (int b = 0; b < bins; ++b) {
        const double x = kMarginLeft + b * bin_w;
        const double h0 = bar_h(dist.counts_class0(b));
        const double h1 = bar_h(dist.counts_class1(b));
        out += "<rect x=\"" + num(x + 1) + "\" y=\"" + num(kHeight - kMarginBottom - h0) +
               "\" width=\"" + num(bin_w / 2 - 1) + "\" height=\"" + num(h0) +
               "\" fill=\"#1f77b4\"/>\n";
        out += "<rect x=\"" + num(x + bin_w / 2) + "\" y=\"" + num(kHeight - kMarginBottom - h1) +
               "\" width=\"" + num(bin_w / 2 - 1) + "\" height=\"" + num(h1) +
               "\" fill=\"#ff7f0e\"/>\n";
    }
    for (int tick = 0; tick <= 4; ++tick) {
        const double p = tick / 4.0;
        out += "<text x=\"" + num(kMarginLeft + p * plot_w) + "\" y=\"" +
               num(kHeight - kMarginBottom + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + num(p) +
               "</text>\n";
    }
    out += "<rect x=\"480\" y=\"50\" width=\"12\" height=\"12\" fill=\"#1f77b4\"/>"
           "<text x=\"498\" y=\"61\" font-family=\"sans-serif\" font-size=\"12\">class 0</text>\n";
    out += "<rect x=\"480\" y=\"70\" width=\"12\" height=\"12\" fill=\"#ff7f0e\"/>"
           "<text x=\"498\" y=\"81\" font-family=\"sans-serif\" font-size=\"12\">class 1</text>\n";
    return out + "</svg>\n";
}

}  // namespace scrub::svg
