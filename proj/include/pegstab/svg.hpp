#pragma once

#include <string>
#include <vector>

#include "pegstab/dates.hpp"

namespace pegstab::svg {

struct LineSeries {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;  // (x, y) in data space
};

// Deviation-over-time style chart: x is a day offset, y a fraction.
// Returns the SVG document text.
std::string line_chart(const std::string& title, const std::string& y_label,
                       const std::vector<LineSeries>& series, Date x_origin);

struct BoxStats {
    std::string label;
    double whisker_low = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double whisker_high = 0.0;
};

BoxStats box_stats(const std::string& label, std::vector<double> values);

std::string box_plot(const std::string& title, const std::string& y_label,
                     const std::vector<BoxStats>& boxes);

}  // namespace pegstab::svg
