#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pegstab/analysis.hpp"
#include "pegstab/econometrics.hpp"
#include "pegstab/metrics.hpp"

namespace pegstab::report {

struct TextTable {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string render() const;  // fixed-width text
    std::string to_csv() const;
};

std::string fmt_fixed(double v, int precision);
std::string fmt_sci(double v, int precision = 3);
std::string fmt_pct(double fraction, int precision = 2);  // 0.0123 -> "1.23%"
std::string fmt_auto(double v);  // scientific for tiny/huge magnitudes

struct CoinDescriptives {
    std::string coin_id;
    DescriptiveStats price;
    DescriptiveStats market_cap;
    DescriptiveStats volume;
};

// Table-1 analog: per-coin price/market-cap/volume summary.
TextTable descriptive_table(const std::vector<CoinDescriptives>& rows);

struct CoinPegRow {
    std::string coin_id;
    PegStats stats;
};

// Table-2 analog: deviation and peg quality.
TextTable peg_table(const std::vector<CoinPegRow>& rows);

struct CoinVolatilityRow {
    std::string coin_id;
    std::vector<std::pair<int, double>> mean_sigma_by_window;  // (window, mean sigma)
};

// Table-3 analog: mean rolling volatility per window.
TextTable volatility_table(const std::vector<CoinVolatilityRow>& rows);

// Table-4 analog: one column per coin, coefficient with significance code.
TextTable regression_table(const std::vector<std::pair<std::string, OlsResult>>& fits);

TextTable adf_table(const std::vector<std::pair<std::string, AdfResult>>& results);

// Table-6 analog.
TextTable improvement_table(const std::vector<PairedSummary>& summaries);

// Per-trial outcome CSV: trial,regime,peak_dev,off_peg_days,clamped_days.
void write_outcomes_csv(std::ostream& out, const std::vector<TrialPair>& pairs);
std::vector<TrialPair> read_outcomes_csv(std::istream& in, const std::string& origin);

// Sweep CSV: one row per (fraction, M) with the summary fields.
void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& results);

std::string summary_to_json(const std::vector<PairedSummary>& summaries);
std::string sweeps_to_json(const std::vector<std::pair<std::string, std::vector<SweepResult>>>&
                               per_coin_results);

}  // namespace pegstab::report
