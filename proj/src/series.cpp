#include "pegstab/series.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "pegstab/csv.hpp"
#include "pegstab/errors.hpp"

namespace pegstab {

namespace {
Eigen::VectorXd extract(const std::vector<RawRow>& rows, double RawRow::*field) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rows[static_cast<size_t>(i)].*field;
    return v;
}
}  // namespace

Eigen::VectorXd CoinSeries::prices() const { return extract(rows, &RawRow::price); }
Eigen::VectorXd CoinSeries::volumes() const { return extract(rows, &RawRow::total_volume); }
Eigen::VectorXd CoinSeries::market_caps() const { return extract(rows, &RawRow::market_cap); }

Eigen::Index CoinSeries::find_date(Date date) const {
    auto it = std::lower_bound(rows.begin(), rows.end(), date,
                               [](const RawRow& r, Date d) { return r.date < d; });
    if (it == rows.end() || it->date != date) return -1;
    return static_cast<Eigen::Index>(it - rows.begin());
}

long BankFailureTable::total_failures() const {
    long sum = 0;
    for (const auto& [year, count] : failures) sum += count;
    return sum;
}

long BankFailureTable::total_institutions() const {
    long sum = 0;
    for (const auto& [year, count] : total_banks) sum += count;
    return sum;
}

AlignedPanel::AlignedPanel(Date start, Date end) : start_(start) {
    if (end < start) throw InputError("panel window is empty: start after end");
    n_days_ = static_cast<Eigen::Index>(end - start) + 1;
}

Eigen::Index AlignedPanel::row_of(Date date) const {
    const int offset = date - start_;
    if (offset < 0 || offset >= n_days_) return -1;
    return offset;
}

void AlignedPanel::add_column(const std::string& name, Eigen::VectorXd values, FillPolicy policy) {
    if (values.size() != n_days_)
        throw InputError("column '" + name + "' has " + std::to_string(values.size()) +
                         " rows, panel has " + std::to_string(n_days_));
    if (has_column(name)) throw InputError("duplicate panel column: " + name);
    names_.push_back(name);
    columns_.push_back(std::move(values));
    fill_.push_back(policy);
}

bool AlignedPanel::has_column(const std::string& name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const Eigen::VectorXd& AlignedPanel::column(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw InputError("unknown panel column: " + name);
    return columns_[static_cast<size_t>(it - names_.begin())];
}

FillPolicy AlignedPanel::fill_policy(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw InputError("unknown panel column: " + name);
    return fill_[static_cast<size_t>(it - names_.begin())];
}

void AlignedPanel::write_csv(std::ostream& out) const {
    csv::Row header{"date"};
    for (const auto& n : names_) header.push_back(n);
    csv::write_row(out, header);
    for (Eigen::Index r = 0; r < n_days_; ++r) {
        csv::Row row{date_at(r).to_string()};
        for (const auto& col : columns_) row.push_back(csv::format_double(col[r]));
        csv::write_row(out, row);
    }
}

AlignedPanel AlignedPanel::read_csv(std::istream& in, const std::string& origin) {
    csv::Table table = csv::read_stream(in, origin);
    if (table.header.empty() || table.header[0] != "date")
        throw InputError(origin + ": panel CSV must start with a 'date' column");
    if (table.rows.empty()) throw InputError(origin + ": no observations");

    const Date start = Date::parse(table.rows.front()[0]);
    const Date end = Date::parse(table.rows.back()[0]);
    AlignedPanel panel(start, end);
    if (panel.n_days() != static_cast<Eigen::Index>(table.rows.size()))
        throw InputError(origin + ": panel rows are not one per calendar day");

    const size_t n_cols = table.header.size() - 1;
    std::vector<Eigen::VectorXd> cols(n_cols, Eigen::VectorXd::Constant(panel.n_days(), std::nan("")));
    for (size_t r = 0; r < table.rows.size(); ++r) {
        const csv::Row& row = table.rows[r];
        if (row.size() != table.header.size())
            throw InputError(origin + ": ragged row at line " + std::to_string(table.line_numbers[r]));
        if (Date::parse(row[0]) != start + static_cast<int>(r))
            throw InputError(origin + ": dates not consecutive at line " +
                             std::to_string(table.line_numbers[r]));
        for (size_t c = 0; c < n_cols; ++c) {
            if (row[c + 1].empty()) continue;
            cols[c][static_cast<Eigen::Index>(r)] =
                csv::parse_double(row[c + 1], origin, table.line_numbers[r]);
        }
    }
    for (size_t c = 0; c < n_cols; ++c)
        panel.add_column(table.header[c + 1], std::move(cols[c]));
    return panel;
}

}  // namespace pegstab
