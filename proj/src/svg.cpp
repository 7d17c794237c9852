#include "pegstab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "pegstab/errors.hpp"

namespace pegstab::svg {
namespace {

constexpr double kWidth = 860.0, kHeight = 420.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct Scale {
    double lo = 0.0, hi = 1.0;

    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (hi <= lo) hi = lo + 1.0;
        const double margin = 0.05 * (hi - lo);
        lo -= margin;
        hi += margin;
    }
    double frac(double v) const { return (v - lo) / (hi - lo); }
};

// Round tick spacing to 1/2/5 x 10^k.
std::vector<double> ticks(const Scale& s, int target = 6) {
    const double raw = (s.hi - s.lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    std::vector<double> out;
    for (double v = std::ceil(s.lo / step) * step; v <= s.hi + 1e-12; v += step)
        out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    return out;
}

void open_doc(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
}

void axes(std::ostringstream& out, const Scale& y, const std::string& y_label) {
    for (double tick : ticks(y)) {
        const double py = kTop + kPlotH * (1.0 - y.frac(tick));
        out << "<line x1=\"" << kLeft << "\" y1=\"" << num(py) << "\" x2=\"" << kLeft + kPlotW
            << "\" y2=\"" << num(py) << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(tick) << "</text>\n";
    }
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kPlotW << "\" height=\""
        << kPlotH << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<text x=\"14\" y=\"" << kTop + kPlotH / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 14 " << kTop + kPlotH / 2 << ")\">" << y_label << "</text>\n";
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& y_label,
                       const std::vector<LineSeries>& series, Date x_origin) {
    if (series.empty()) throw InputError("line_chart: no series");
    Scale x{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    Scale y{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& s : series)
        for (const auto& [px, py] : s.points) {
            x.expand(px);
            y.expand(py);
        }
    if (!std::isfinite(x.lo)) throw InputError("line_chart: no points");
    x.pad();
    y.pad();

    std::ostringstream out;
    open_doc(out, title);
    axes(out, y, y_label);

    // x tick labels as dates offset from the origin
    for (double tick : ticks(x, 8)) {
        const double px = kLeft + kPlotW * x.frac(tick);
        out << "<text x=\"" << num(px) << "\" y=\"" << kTop + kPlotH + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << (x_origin + static_cast<int>(tick)).to_string() << "</text>\n";
    }

    double legend_x = kLeft + 10;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
        for (const auto& [px, py] : s.points)
            out << num(kLeft + kPlotW * x.frac(px)) << ","
                << num(kTop + kPlotH * (1.0 - y.frac(py))) << " ";
        out << "\"/>\n";
        out << "<rect x=\"" << num(legend_x) << "\" y=\"" << kTop + 6 << "\" width=\"12\" height=\"4\" fill=\""
            << s.color << "\"/>\n";
        out << "<text x=\"" << num(legend_x + 16) << "\" y=\"" << kTop + 11
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        legend_x += 16.0 + 9.0 * static_cast<double>(s.label.size()) + 18.0;
    }
    out << "</svg>\n";
    return out.str();
}

BoxStats box_stats(const std::string& label, std::vector<double> values) {
    if (values.empty()) throw InputError("box_stats: empty sample");
    std::sort(values.begin(), values.end());
    const auto q = [&](double f) {
        const double pos = f * static_cast<double>(values.size() - 1);
        const auto i = static_cast<size_t>(pos);
        const double w = pos - static_cast<double>(i);
        return i + 1 < values.size() ? values[i] * (1.0 - w) + values[i + 1] * w : values[i];
    };
    BoxStats b;
    b.label = label;
    b.q1 = q(0.25);
    b.median = q(0.5);
    b.q3 = q(0.75);
    const double iqr = b.q3 - b.q1;
    // Tukey whiskers: furthest points within 1.5 IQR of the box.
    b.whisker_low = b.q1;
    b.whisker_high = b.q3;
    for (double v : values) {
        if (v >= b.q1 - 1.5 * iqr) {
            b.whisker_low = v;
            break;
        }
    }
    for (auto it = values.rbegin(); it != values.rend(); ++it) {
        if (*it <= b.q3 + 1.5 * iqr) {
            b.whisker_high = *it;
            break;
        }
    }
    return b;
}

std::string box_plot(const std::string& title, const std::string& y_label,
                     const std::vector<BoxStats>& boxes) {
    if (boxes.empty()) throw InputError("box_plot: no boxes");
    Scale y{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& b : boxes) {
        y.expand(b.whisker_low);
        y.expand(b.whisker_high);
    }
    y.expand(0.0);  // keep the zero-improvement line visible
    y.pad();

    std::ostringstream out;
    open_doc(out, title);
    axes(out, y, y_label);

    const double zero_y = kTop + kPlotH * (1.0 - y.frac(0.0));
    out << "<line x1=\"" << kLeft << "\" y1=\"" << num(zero_y) << "\" x2=\"" << kLeft + kPlotW
        << "\" y2=\"" << num(zero_y) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";

    const double slot = kPlotW / static_cast<double>(boxes.size());
    const double box_w = std::min(60.0, slot * 0.4);
    for (size_t i = 0; i < boxes.size(); ++i) {
        const BoxStats& b = boxes[i];
        const double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
        const auto py = [&](double v) { return kTop + kPlotH * (1.0 - y.frac(v)); };
        out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(py(b.whisker_low)) << "\" x2=\""
            << num(cx) << "\" y2=\"" << num(py(b.whisker_high)) << "\" stroke=\"#333\"/>\n";
        for (double w : {b.whisker_low, b.whisker_high})
            out << "<line x1=\"" << num(cx - box_w / 3) << "\" y1=\"" << num(py(w)) << "\" x2=\""
                << num(cx + box_w / 3) << "\" y2=\"" << num(py(w)) << "\" stroke=\"#333\"/>\n";
        out << "<rect x=\"" << num(cx - box_w / 2) << "\" y=\"" << num(py(b.q3)) << "\" width=\""
            << num(box_w) << "\" height=\"" << num(py(b.q1) - py(b.q3))
            << "\" fill=\"#7db4e6\" fill-opacity=\"0.8\" stroke=\"#2a6099\"/>\n";
        out << "<line x1=\"" << num(cx - box_w / 2) << "\" y1=\"" << num(py(b.median))
            << "\" x2=\"" << num(cx + box_w / 2) << "\" y2=\"" << num(py(b.median))
            << "\" stroke=\"#1a3a5c\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(cx) << "\" y=\"" << kTop + kPlotH + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << b.label
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace pegstab::svg
