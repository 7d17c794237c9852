#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pegstab/dates.hpp"

namespace pegstab {

// One daily market observation for a coin. All monetary fields are USD.
struct RawRow {
    Date date;
    double price = 0.0;
    double market_cap = 0.0;
    double total_volume = 0.0;
};

// Date-ordered daily observations for one coin. Dates are strictly
// increasing; calendar gaps stay gaps (prices are never interpolated).
struct CoinSeries {
    std::string coin_id;
    std::vector<RawRow> rows;

    Eigen::VectorXd prices() const;
    Eigen::VectorXd volumes() const;
    Eigen::VectorXd market_caps() const;

    // Index of the row at `date`, or -1.
    Eigen::Index find_date(Date date) const;
};

enum class Frequency { Daily, Monthly };

struct MacroSeries {
    std::string series_id;
    Frequency frequency = Frequency::Daily;
    std::vector<std::pair<Date, double>> observations;
    long dropped_missing = 0;  // FRED "." sentinel rows
    std::vector<std::string> warnings;
};

// Per-year FDIC failure counts over [2019, 2025].
struct BankFailureTable {
    static constexpr int kFirstYear = 2019;
    static constexpr int kLastYear = 2025;

    std::map<int, long> failures;     // year -> failed banks
    std::map<int, long> total_banks;  // year -> institutions
    long skipped_out_of_window = 0;

    long total_failures() const;
    long total_institutions() const;
};

enum class FillPolicy { None, ForwardFill };

// A dense daily panel: one row per calendar day in [start, end], one Eigen
// column per named series. Missing entries are NaN.
class AlignedPanel {
public:
    AlignedPanel() = default;
    AlignedPanel(Date start, Date end);

    Date start() const { return start_; }
    Date end() const { return start_ + static_cast<int>(n_days_) - 1; }
    Eigen::Index n_days() const { return n_days_; }
    Date date_at(Eigen::Index row) const { return start_ + static_cast<int>(row); }

    // Row index of `date`, or -1 when outside the window.
    Eigen::Index row_of(Date date) const;

    void add_column(const std::string& name, Eigen::VectorXd values,
                    FillPolicy policy = FillPolicy::None);
    bool has_column(const std::string& name) const;
    const Eigen::VectorXd& column(const std::string& name) const;  // throws InputError
    FillPolicy fill_policy(const std::string& name) const;
    const std::vector<std::string>& column_names() const { return names_; }

    // Canonical panel CSV: ISO date column first, then columns in insertion
    // order, doubles in shortest round-trip form, NaN as empty field.
    void write_csv(std::ostream& out) const;
    static AlignedPanel read_csv(std::istream& in, const std::string& origin);

private:
    Date start_;
    Eigen::Index n_days_ = 0;
    std::vector<std::string> names_;
    std::vector<Eigen::VectorXd> columns_;
    std::vector<FillPolicy> fill_;
};

}  // namespace pegstab
