#include "pegstab/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pegstab/csv.hpp"
#include "pegstab/errors.hpp"

namespace pegstab {
namespace {

int find_aliased(const csv::Table& table, const std::vector<std::string>& aliases,
                 const std::string& logical_name) {
    for (const auto& alias : aliases) {
        int idx = table.column(alias);
        if (idx >= 0) return idx;
    }
    throw InputError("missing column: " + logical_name);
}

double parse_nonneg(const csv::Row& row, int col, const std::string& name,
                    const std::string& path, long line) {
    double v = csv::parse_double(row[static_cast<size_t>(col)], path, line);
    if (!std::isfinite(v) || v < 0.0)
        throw InputError(path + ": " + name + " must be finite and >= 0 at line " +
                         std::to_string(line));
    return v;
}

}  // namespace

CoinSeries load_coin_csv(const std::string& path, const std::string& coin_id,
                         const HeaderAliases& aliases) {
    csv::Table table = csv::read_file(path);
    const int date_col = find_aliased(table, aliases.date, "date");
    const int price_col = find_aliased(table, aliases.price, "price");
    const int cap_col = find_aliased(table, aliases.market_cap, "market_cap");
    const int vol_col = find_aliased(table, aliases.total_volume, "total_volume");
    const size_t width = table.header.size();

    CoinSeries series;
    series.coin_id = coin_id;
    series.rows.reserve(table.rows.size());
    for (size_t i = 0; i < table.rows.size(); ++i) {
        const csv::Row& row = table.rows[i];
        const long line = table.line_numbers[i];
        if (row.size() != width)
            throw InputError(path + ": ragged row at line " + std::to_string(line));
        RawRow raw;
        raw.date = Date::parse(row[static_cast<size_t>(date_col)]);
        raw.price = parse_nonneg(row, price_col, "price", path, line);
        raw.market_cap = parse_nonneg(row, cap_col, "market_cap", path, line);
        raw.total_volume = parse_nonneg(row, vol_col, "total_volume", path, line);
        series.rows.push_back(raw);
    }
    if (series.rows.empty()) throw InputError(path + ": no observations");

    std::stable_sort(series.rows.begin(), series.rows.end(),
                     [](const RawRow& a, const RawRow& b) { return a.date < b.date; });
    for (size_t i = 1; i < series.rows.size(); ++i)
        if (series.rows[i].date == series.rows[i - 1].date)
            throw InputError(path + ": duplicate date " + series.rows[i].date.to_string());
    return series;
}

MacroSeries load_macro_csv(const std::string& path, const std::string& series_id,
                           Frequency frequency) {
    csv::Table table = csv::read_file(path);
    if (table.header.size() < 2)
        throw InputError(path + ": expected two-column (date, value) layout");

    MacroSeries series;
    series.series_id = series_id;
    series.frequency = frequency;
    for (size_t i = 0; i < table.rows.size(); ++i) {
        const csv::Row& row = table.rows[i];
        const long line = table.line_numbers[i];
        if (row.size() < 2)
            throw InputError(path + ": ragged row at line " + std::to_string(line));
        if (row[1] == ".") {
            ++series.dropped_missing;
            continue;
        }
        Date date = Date::parse(row[0]);
        double value = csv::parse_double(row[1], path, line);
        if (!series.observations.empty() && date <= series.observations.back().first)
            throw InputError(path + ": non-monotone dates at line " + std::to_string(line));
        series.observations.emplace_back(date, value);
    }
    if (series.observations.empty()) throw InputError(path + ": no observations");

    if (frequency == Frequency::Monthly && series.observations.size() >= 2) {
        int min_gap = std::numeric_limits<int>::max();
        for (size_t i = 1; i < series.observations.size(); ++i)
            min_gap = std::min(min_gap,
                               series.observations[i].first - series.observations[i - 1].first);
        if (min_gap < 28)
            series.warnings.push_back("frequency mismatch: declared monthly but observations are " +
                                      std::to_string(min_gap) + " days apart");
    }
    return series;
}

BankFailureTable load_failures(const std::string& failed_list_path, const std::string& totals_path,
                               const FailureListOptions& options) {
    BankFailureTable result;
    for (int y = BankFailureTable::kFirstYear; y <= BankFailureTable::kLastYear; ++y)
        result.failures[y] = 0;

    csv::Table failed = csv::read_file(failed_list_path);
    int date_col = -1;
    for (const auto& alias : options.date_column)
        if ((date_col = failed.column(alias)) >= 0) break;
    if (date_col < 0) throw InputError(failed_list_path + ": missing column: closing date");

    for (size_t i = 0; i < failed.rows.size(); ++i) {
        const csv::Row& row = failed.rows[i];
        if (static_cast<size_t>(date_col) >= row.size())
            throw InputError(failed_list_path + ": ragged row at line " +
                             std::to_string(failed.line_numbers[i]));
        const int year = Date::parse(row[static_cast<size_t>(date_col)]).year();
        if (year < BankFailureTable::kFirstYear || year > BankFailureTable::kLastYear) {
            ++result.skipped_out_of_window;
            continue;
        }
        ++result.failures[year];
    }

    csv::Table totals = csv::read_file(totals_path);
    const int year_col = totals.require_column("year");
    const int total_col = totals.require_column("total_banks");
    for (size_t i = 0; i < totals.rows.size(); ++i) {
        const csv::Row& row = totals.rows[i];
        const long line = totals.line_numbers[i];
        const int year =
            static_cast<int>(csv::parse_double(row[static_cast<size_t>(year_col)], totals_path, line));
        const long count = static_cast<long>(
            csv::parse_double(row[static_cast<size_t>(total_col)], totals_path, line));
        if (year < BankFailureTable::kFirstYear || year > BankFailureTable::kLastYear) continue;
        if (count <= 0) throw InputError(totals_path + ": total_banks must be > 0 at line " +
                                         std::to_string(line));
        result.total_banks[year] = count;
    }
    if (result.total_banks.empty())
        throw InputError(totals_path + ": no totals within [2019, 2025]");

    for (const auto& [year, count] : result.failures) {
        auto it = result.total_banks.find(year);
        if (it != result.total_banks.end() && count > it->second)
            throw InputError("failures exceed total banks in " + std::to_string(year));
    }
    return result;
}

AlignedPanel align_panel(const std::vector<CoinSeries>& coins,
                         const std::vector<MacroSeries>& macros, Date start, Date end) {
    if (end < start) throw InputError("align_panel: start after end");
    if (coins.empty()) throw InputError("align_panel: at least one coin series required");

    AlignedPanel panel(start, end);
    const Eigen::Index n = panel.n_days();
    const double nan = std::nan("");

    bool any_overlap = false;
    for (const auto& coin : coins) {
        Eigen::VectorXd price = Eigen::VectorXd::Constant(n, nan);
        Eigen::VectorXd cap = Eigen::VectorXd::Constant(n, nan);
        Eigen::VectorXd volume = Eigen::VectorXd::Constant(n, nan);
        for (const RawRow& row : coin.rows) {
            const Eigen::Index r = panel.row_of(row.date);
            if (r < 0) continue;
            any_overlap = true;
            price[r] = row.price;
            cap[r] = row.market_cap;
            volume[r] = row.total_volume;
        }
        panel.add_column(coin.coin_id + "_price", std::move(price));
        panel.add_column(coin.coin_id + "_market_cap", std::move(cap));
        panel.add_column(coin.coin_id + "_total_volume", std::move(volume));
    }
    if (!any_overlap)
        throw InputError("align_panel: no coin observations overlap the window " +
                         start.to_string() + " .. " + end.to_string());

    for (const auto& macro : macros) {
        Eigen::VectorXd col = Eigen::VectorXd::Constant(n, nan);
        if (macro.frequency == Frequency::Monthly) {
            // Step function: each day takes the most recent prior observation.
            // Days before the first observation stay null (no back-fill).
            size_t next = 0;
            double current = nan;
            for (Eigen::Index r = 0; r < n; ++r) {
                const Date day = panel.date_at(r);
                while (next < macro.observations.size() &&
                       macro.observations[next].first <= day)
                    current = macro.observations[next++].second;
                col[r] = current;
            }
        } else {
            for (const auto& [date, value] : macro.observations) {
                const Eigen::Index r = panel.row_of(date);
                if (r >= 0) col[r] = value;
            }
        }
        panel.add_column(macro.series_id, std::move(col),
                         macro.frequency == Frequency::Monthly ? FillPolicy::ForwardFill
                                                               : FillPolicy::None);
    }
    return panel;
}

}  // namespace pegstab
