#include "pegstab/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "pegstab/errors.hpp"

namespace pegstab {

double VolatilitySeries::mean_sigma() const {
    if (values.empty()) return std::nan("");
    double sum = 0.0;
    for (const auto& [date, sigma] : values) sum += sigma;
    return sum / static_cast<double>(values.size());
}

double peg_deviation(double price) {
    if (!std::isfinite(price)) throw ComputeError("peg_deviation: non-finite price");
    return price - 1.0;
}

VolatilitySeries rolling_volatility(const CoinSeries& series, int window) {
    if (window < 2) throw InputError("rolling_volatility: window must be >= 2");
    VolatilitySeries result;
    result.window = window;
    const auto& rows = series.rows;
    const size_t n = rows.size();
    if (n < static_cast<size_t>(window)) return result;

    result.values.reserve(n - static_cast<size_t>(window) + 1);
    for (size_t t = static_cast<size_t>(window) - 1; t < n; ++t) {
        double mean = 0.0;
        for (size_t i = t + 1 - static_cast<size_t>(window); i <= t; ++i) mean += rows[i].price;
        mean /= window;
        double ss = 0.0;
        for (size_t i = t + 1 - static_cast<size_t>(window); i <= t; ++i) {
            const double d = rows[i].price - mean;
            ss += d * d;
        }
        result.values.emplace_back(rows[t].date, std::sqrt(ss / window));
    }
    return result;
}

DescriptiveStats descriptive_stats(Eigen::Ref<const Eigen::VectorXd> values, bool sample_std) {
    std::vector<double> finite;
    finite.reserve(static_cast<size_t>(values.size()));
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (!std::isnan(values[i])) finite.push_back(values[i]);
    if (finite.empty()) throw InputError("descriptive_stats: no non-null values");

    DescriptiveStats stats;
    stats.count = static_cast<Eigen::Index>(finite.size());
    const auto n = static_cast<double>(finite.size());

    Eigen::Map<const Eigen::VectorXd> v(finite.data(), stats.count);
    stats.mean = v.mean();
    stats.min = v.minCoeff();
    stats.max = v.maxCoeff();

    const double ss = (v.array() - stats.mean).square().sum();
    const double divisor = sample_std ? std::max(n - 1.0, 1.0) : n;
    stats.std_dev = std::sqrt(ss / divisor);

    std::sort(finite.begin(), finite.end());
    const size_t mid = finite.size() / 2;
    stats.median = finite.size() % 2 ? finite[mid] : 0.5 * (finite[mid - 1] + finite[mid]);
    return stats;
}

PegStats peg_stats(const CoinSeries& series, double off_peg_tolerance,
                   double exact_peg_tolerance) {
    if (series.rows.empty()) throw InputError("peg_stats: empty series");
    if (off_peg_tolerance < 0.0 || exact_peg_tolerance < 0.0)
        throw InputError("peg_stats: tolerances must be >= 0");

    PegStats stats;
    const auto& rows = series.rows;
    const auto n = static_cast<double>(rows.size());

    double abs_sum = 0.0;
    long off_days = 0, exact_days = 0;
    long run = 0, best_run = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        const double dev = peg_deviation(rows[i].price);
        const double mag = std::abs(dev);
        abs_sum += mag;
        stats.max_abs_deviation = std::max(stats.max_abs_deviation, mag);
        if (mag > off_peg_tolerance) ++off_days;
        const bool on_peg = mag <= exact_peg_tolerance;
        if (on_peg) ++exact_days;
        // A calendar gap means unknown days, which cannot attest peg
        // maintenance; the run restarts.
        const bool contiguous = i == 0 || rows[i].date - rows[i - 1].date == 1;
        run = on_peg ? (contiguous ? run + 1 : 1) : 0;
        best_run = std::max(best_run, run);
    }

    stats.avg_abs_deviation = abs_sum / n;
    stats.off_peg_day_share = static_cast<double>(off_days) / n;
    stats.exact_peg_share = static_cast<double>(exact_days) / n;
    stats.longest_on_peg_run = best_run;
    stats.price_std = descriptive_stats(series.prices()).std_dev;
    return stats;
}

}  // namespace pegstab
