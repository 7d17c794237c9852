#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pegstab/series.hpp"

namespace pegstab {

struct DescriptiveStats {
    double mean = 0.0;
    double median = 0.0;
    double std_dev = 0.0;
    double min = 0.0;
    double max = 0.0;
    Eigen::Index count = 0;
};

// All fractions, not percent; reporting layers multiply by 100.
struct PegStats {
    double avg_abs_deviation = 0.0;
    double price_std = 0.0;         // sample std of the price level
    double max_abs_deviation = 0.0;
    double off_peg_day_share = 0.0;  // share of days with |dev| > off-peg tolerance
    long longest_on_peg_run = 0;     // consecutive calendar days with |dev| <= exact tolerance
    double exact_peg_share = 0.0;    // share of days with |dev| <= exact tolerance
};

struct VolatilitySeries {
    int window = 0;
    std::vector<std::pair<Date, double>> values;

    double mean_sigma() const;
};

// Signed fractional distance from the $1 target: (price - 1) / 1.
double peg_deviation(double price);

// sigma_t = sqrt((1/N) * sum (P - mean)^2) over the most recent N prices
// ending at t (population-style divisor N). Defined once N observations
// exist; a window longer than the series yields an empty result.
VolatilitySeries rolling_volatility(const CoinSeries& series, int window);

// NaNs are removed first. Sample std (count-1 divisor) by default.
DescriptiveStats descriptive_stats(Eigen::Ref<const Eigen::VectorXd> values,
                                   bool sample_std = true);

// Calendar gaps in the series break on-peg runs.
PegStats peg_stats(const CoinSeries& series, double off_peg_tolerance,
                   double exact_peg_tolerance);

}  // namespace pegstab
