#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pegstab/calibration.hpp"
#include "pegstab/ingest.hpp"
#include "pegstab/simulator.hpp"

namespace pegstab {

struct MacroSource {
    std::string path;
    Frequency frequency = Frequency::Monthly;
};

struct MetricsConfig {
    double off_peg_tolerance = 0.001;   // Table-2-style off-peg threshold
    double exact_peg_tolerance = 5e-5;  // "exactly $1" day detection
    std::vector<int> volatility_windows{7, 30};
};

// Everything a run needs, from one JSON file; CLI flags override.
struct RunConfig {
    std::map<std::string, std::string> coin_paths;  // coin_id -> CSV path
    std::map<std::string, MacroSource> macro_sources;
    std::string failed_list_path;
    std::string totals_path;

    std::optional<Date> window_start;
    std::optional<Date> window_end;

    HeaderAliases header_aliases;
    MetricsConfig metrics;
    bool regression_include_macros = false;

    CalibrationOptions calibration;
    std::string svb_coin = "usdc";  // coin calibrated through the SVB route

    SimConfig simulation;
    bool simulation_days_explicit = false;
    std::vector<double> sweep_m_values{50, 100, 200, 500};
    double improvement_epsilon = 0.01;

    std::string output_dir = "out";

    // Window bounds resolved against the loaded data when unset.
    Date resolve_start(const std::vector<CoinSeries>& coins) const;
    Date resolve_end(const std::vector<CoinSeries>& coins) const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text, const std::string& origin);

// Calibration file: the `calibrate` -> `simulate` contract.
void save_calibrations(const std::string& path,
                       const std::map<std::string, ShockCalibration>& coins);
std::map<std::string, ShockCalibration> load_calibrations(const std::string& path);

std::string calibrations_to_json(const std::map<std::string, ShockCalibration>& coins);

}  // namespace pegstab
