#pragma once

#include <string>
#include <vector>

#include "pegstab/series.hpp"

namespace pegstab {

// Accepted header spellings per logical column, configuration-driven.
// The first alias that matches the file header wins.
struct HeaderAliases {
    std::vector<std::string> date{"snapped_at", "date", "Date", "DATE"};
    std::vector<std::string> price{"price"};
    std::vector<std::string> market_cap{"market_cap"};
    std::vector<std::string> total_volume{"total_volume"};
};

// CoinGecko-style daily export -> CoinSeries. Rows are sorted by date;
// duplicate dates, negative values, and unparseable numerics are errors.
CoinSeries load_coin_csv(const std::string& path, const std::string& coin_id,
                         const HeaderAliases& aliases = {});

// FRED-style two-column export (DATE,<SERIES_ID>). "." sentinel rows are
// dropped and counted. A monthly series whose observations are not spaced
// like months gets a frequency-mismatch warning, not an error.
MacroSeries load_macro_csv(const std::string& path, const std::string& series_id,
                           Frequency frequency);

struct FailureListOptions {
    std::vector<std::string> date_column{"Closing Date", "closing_date", "date"};
};

// FDIC failed-bank list + per-year institution totals (year,total_banks).
// Records outside [2019, 2025] are skipped and counted.
BankFailureTable load_failures(const std::string& failed_list_path, const std::string& totals_path,
                               const FailureListOptions& options = {});

// One row per calendar day in [start, end]; coin columns named
// "<coin>_price|_market_cap|_total_volume", null on missing days; monthly
// macro columns forward-filled from the most recent prior observation,
// never back-filled.
AlignedPanel align_panel(const std::vector<CoinSeries>& coins,
                         const std::vector<MacroSeries>& macros, Date start, Date end);

}  // namespace pegstab
