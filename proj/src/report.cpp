#include "pegstab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "pegstab/csv.hpp"
#include "pegstab/errors.hpp"

namespace pegstab::report {

std::string fmt_fixed(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

std::string fmt_sci(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*e", precision, v);
    return buf;
}

std::string fmt_pct(double fraction, int precision) {
    return fmt_fixed(100.0 * fraction, precision) + "%";
}

std::string fmt_auto(double v) {
    if (v == 0.0) return "0";
    const double mag = std::abs(v);
    if (mag < 1e-4 || mag >= 1e7) return fmt_sci(v);
    if (mag >= 100.0) return fmt_fixed(v, 1);
    return fmt_fixed(v, 6);
}

std::string TextTable::render() const {
    std::vector<size_t> widths(header.size());
    for (size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
    for (const auto& row : rows)
        for (size_t c = 0; c < row.size() && c < widths.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());

    std::ostringstream out;
    if (!title.empty()) out << title << "\n";
    auto emit = [&](const std::vector<std::string>& cells) {
        for (size_t c = 0; c < widths.size(); ++c) {
            const std::string& cell = c < cells.size() ? cells[c] : std::string();
            out << cell << std::string(widths[c] - cell.size(), ' ');
            out << (c + 1 < widths.size() ? "  " : "");
        }
        out << "\n";
    };
    emit(header);
    size_t total = 0;
    for (size_t w : widths) total += w + 2;
    out << std::string(total > 2 ? total - 2 : total, '-') << "\n";
    for (const auto& row : rows) emit(row);
    return out.str();
}

std::string TextTable::to_csv() const {
    std::ostringstream out;
    csv::write_row(out, header);
    for (const auto& row : rows) csv::write_row(out, row);
    return out.str();
}

TextTable descriptive_table(const std::vector<CoinDescriptives>& rows) {
    TextTable t;
    t.title = "Descriptive statistics";
    t.header = {"coin", "price_mean", "price_std", "mktcap_mean", "mktcap_std", "volume_mean"};
    for (const auto& r : rows)
        t.rows.push_back({r.coin_id, fmt_fixed(r.price.mean, 6), fmt_fixed(r.price.std_dev, 5),
                          fmt_fixed(r.market_cap.mean, 0), fmt_fixed(r.market_cap.std_dev, 0),
                          fmt_fixed(r.volume.mean, 0)});
    return t;
}

TextTable peg_table(const std::vector<CoinPegRow>& rows) {
    TextTable t;
    t.title = "Deviation and peg quality";
    t.header = {"coin",          "avg_abs_dev", "price_std",   "max_abs_dev",
                "off_peg_days",  "exact_peg_days", "longest_on_peg_run"};
    for (const auto& r : rows)
        t.rows.push_back({r.coin_id, fmt_fixed(r.stats.avg_abs_deviation, 6),
                          fmt_fixed(r.stats.price_std, 6), fmt_fixed(r.stats.max_abs_deviation, 6),
                          fmt_pct(r.stats.off_peg_day_share), fmt_pct(r.stats.exact_peg_share),
                          std::to_string(r.stats.longest_on_peg_run)});
    return t;
}

TextTable volatility_table(const std::vector<CoinVolatilityRow>& rows) {
    TextTable t;
    t.title = "Mean rolling volatility";
    t.header = {"coin"};
    if (!rows.empty())
        for (const auto& [window, sigma] : rows.front().mean_sigma_by_window)
            t.header.push_back("sigma_" + std::to_string(window));
    for (const auto& r : rows) {
        std::vector<std::string> cells{r.coin_id};
        for (const auto& [window, sigma] : r.mean_sigma_by_window)
            cells.push_back(std::isnan(sigma) ? "n/a" : fmt_pct(sigma, 2));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

TextTable regression_table(const std::vector<std::pair<std::string, OlsResult>>& fits) {
    TextTable t;
    t.title = "Drivers of daily peg deviation (OLS)";
    t.header = {"variable"};
    for (const auto& [coin, fit] : fits) t.header.push_back(coin);
    if (fits.empty()) return t;
    for (size_t i = 0; i < fits.front().second.coefficients.size(); ++i) {
        std::vector<std::string> cells{fits.front().second.coefficients[i].name};
        for (const auto& [coin, fit] : fits) {
            const CoefStat& c = fit.coefficients.at(i);
            cells.push_back(fmt_auto(c.value) + " (" + c.significance + ")");
        }
        t.rows.push_back(std::move(cells));
    }
    std::vector<std::string> r2{"R^2"}, n{"n"};
    for (const auto& [coin, fit] : fits) {
        r2.push_back(fmt_fixed(fit.r_squared, 4));
        n.push_back(std::to_string(fit.n_obs));
    }
    t.rows.push_back(std::move(r2));
    t.rows.push_back(std::move(n));
    return t;
}

namespace {
const char* adf_spec_name(AdfSpec spec) {
    switch (spec) {
        case AdfSpec::None: return "none";
        case AdfSpec::Constant: return "constant";
        case AdfSpec::ConstantTrend: return "constant+trend";
    }
    return "?";
}
}  // namespace

TextTable adf_table(const std::vector<std::pair<std::string, AdfResult>>& results) {
    TextTable t;
    t.title = "Augmented Dickey-Fuller unit-root tests";
    t.header = {"coin", "statistic", "lags", "spec", "crit_1", "crit_5", "crit_10", "verdict"};
    for (const auto& [coin, r] : results) {
        std::string verdict = r.reject_1   ? "reject unit root at 1%"
                              : r.reject_5 ? "reject unit root at 5%"
                              : r.reject_10
                                  ? "reject unit root at 10%"
                                  : "fail to reject";
        t.rows.push_back({coin, fmt_fixed(r.statistic, 4), std::to_string(r.lag_order),
                          adf_spec_name(r.spec), fmt_fixed(r.crit_1, 2), fmt_fixed(r.crit_5, 2),
                          fmt_fixed(r.crit_10, 2), verdict});
    }
    return t;
}

TextTable improvement_table(const std::vector<PairedSummary>& summaries) {
    TextTable t;
    t.title = "Hybrid vs current, paired Monte Carlo";
    t.header = {"coin",       "mean_pct_peak", "sd_pct_peak",  "mean_pct_off", "sd_pct_off",
                "peak_cur",   "peak_hyb",      "p95_peak_cur", "p95_peak_hyb", "off_cur",
                "off_hyb",    "trials",        "included_peak"};
    for (const auto& s : summaries)
        t.rows.push_back({s.coin_id, fmt_fixed(s.mean_pct_peak, 2), fmt_fixed(s.sd_pct_peak, 3),
                          fmt_fixed(s.mean_pct_off, 2), fmt_fixed(s.sd_pct_off, 3),
                          fmt_fixed(s.mean_peak_current, 5), fmt_fixed(s.mean_peak_hybrid, 5),
                          fmt_fixed(s.p95_peak_current, 5), fmt_fixed(s.p95_peak_hybrid, 5),
                          fmt_fixed(s.mean_off_current, 2), fmt_fixed(s.mean_off_hybrid, 2),
                          std::to_string(s.trials), std::to_string(s.included_peak)});
    return t;
}

void write_outcomes_csv(std::ostream& out, const std::vector<TrialPair>& pairs) {
    csv::write_row(out, {"trial", "regime", "peak_dev", "off_peg_days", "clamped_days"});
    for (size_t i = 0; i < pairs.size(); ++i) {
        const auto emit = [&](const TrialOutcome& o) {
            csv::write_row(out, {std::to_string(i), regime_name(o.regime),
                                 csv::format_double(o.peak_dev), std::to_string(o.off_peg_days),
                                 std::to_string(o.clamped_days)});
        };
        emit(pairs[i].current);
        emit(pairs[i].hybrid);
    }
}

std::vector<TrialPair> read_outcomes_csv(std::istream& in, const std::string& origin) {
    const csv::Table table = csv::read_stream(in, origin);
    const int trial_col = table.require_column("trial");
    const int regime_col = table.require_column("regime");
    const int peak_col = table.require_column("peak_dev");
    const int off_col = table.require_column("off_peg_days");
    const int clamp_col = table.require_column("clamped_days");

    std::vector<TrialPair> pairs;
    for (size_t i = 0; i < table.rows.size(); ++i) {
        const csv::Row& row = table.rows[i];
        const long line = table.line_numbers[i];
        const auto trial = static_cast<size_t>(
            csv::parse_double(row[static_cast<size_t>(trial_col)], origin, line));
        if (trial >= pairs.size()) pairs.resize(trial + 1);
        TrialOutcome o;
        const std::string& regime = row[static_cast<size_t>(regime_col)];
        o.regime = regime == "current" ? Regime::Current : Regime::Hybrid;
        o.peak_dev = csv::parse_double(row[static_cast<size_t>(peak_col)], origin, line);
        o.off_peg_days = static_cast<int>(
            csv::parse_double(row[static_cast<size_t>(off_col)], origin, line));
        o.clamped_days = static_cast<int>(
            csv::parse_double(row[static_cast<size_t>(clamp_col)], origin, line));
        (o.regime == Regime::Current ? pairs[trial].current : pairs[trial].hybrid) = o;
    }
    return pairs;
}

namespace {
csv::Row sweep_row_fields(const std::string& parameter, double m, const SweepPoint& p) {
    const PairedSummary& s = p.summary;
    return {parameter,
            csv::format_double(p.fraction),
            csv::format_double(m),
            csv::format_double(s.mean_pct_peak),
            csv::format_double(s.sd_pct_peak),
            csv::format_double(s.mean_pct_off),
            csv::format_double(s.sd_pct_off),
            csv::format_double(s.mean_peak_current),
            csv::format_double(s.mean_peak_hybrid),
            csv::format_double(s.p95_peak_current),
            csv::format_double(s.p95_peak_hybrid),
            csv::format_double(s.mean_off_current),
            csv::format_double(s.mean_off_hybrid),
            std::to_string(s.trials),
            std::to_string(s.included_peak)};
}
}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& results) {
    csv::write_row(out, {"parameter", "fraction", "M", "mean_pct_peak", "sd_pct_peak",
                         "mean_pct_off", "sd_pct_off", "mean_peak_current", "mean_peak_hybrid",
                         "p95_peak_current", "p95_peak_hybrid", "mean_off_current",
                         "mean_off_hybrid", "trials", "included_peak"});
    for (const SweepResult& result : results)
        for (const SweepPoint& point : result.points)
            csv::write_row(out, sweep_row_fields(result.parameter, result.extreme_multiplier, point));
}

namespace {
nlohmann::json summary_json(const PairedSummary& s) {
    return {{"coin", s.coin_id},
            {"trials", s.trials},
            {"included_peak", s.included_peak},
            {"included_off", s.included_off},
            {"excluded_peak", s.excluded_peak()},
            {"excluded_off", s.excluded_off()},
            {"mean_pct_peak", s.mean_pct_peak},
            {"sd_pct_peak", s.sd_pct_peak},
            {"mean_pct_off", s.mean_pct_off},
            {"sd_pct_off", s.sd_pct_off},
            {"mean_peak_current", s.mean_peak_current},
            {"mean_peak_hybrid", s.mean_peak_hybrid},
            {"p95_peak_current", s.p95_peak_current},
            {"p95_peak_hybrid", s.p95_peak_hybrid},
            {"mean_off_current", s.mean_off_current},
            {"mean_off_hybrid", s.mean_off_hybrid},
            {"median_off_current", s.median_off_current},
            {"median_off_hybrid", s.median_off_hybrid}};
}
}  // namespace

std::string summary_to_json(const std::vector<PairedSummary>& summaries) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : summaries) arr.push_back(summary_json(s));
    return nlohmann::json{{"summaries", arr}}.dump(2) + "\n";
}

std::string sweeps_to_json(
    const std::vector<std::pair<std::string, std::vector<SweepResult>>>& per_coin_results) {
    nlohmann::json coins = nlohmann::json::object();
    for (const auto& [coin, results] : per_coin_results) {
        nlohmann::json arr = nlohmann::json::array();
        for (const SweepResult& result : results) {
            nlohmann::json points = nlohmann::json::array();
            for (const SweepPoint& p : result.points)
                points.push_back({{"fraction", p.fraction}, {"summary", summary_json(p.summary)}});
            arr.push_back({{"parameter", result.parameter},
                           {"M", result.extreme_multiplier},
                           {"fixed",
                            {{"f_beta", result.fixed.f_beta},
                             {"f_gamma", result.fixed.f_gamma},
                             {"f_delta", result.fixed.f_delta}}},
                           {"points", points}});
        }
        coins[coin] = arr;
    }
    return nlohmann::json{{"sweeps", coins}}.dump(2) + "\n";
}

}  // namespace pegstab::report
