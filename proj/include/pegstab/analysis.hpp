#pragma once

#include <span>
#include <string>
#include <vector>

#include "pegstab/simulator.hpp"

namespace pegstab {

struct Improvement {
    double pct_peak = 0.0;      // 100 (peak_c - peak_h) / peak_c
    double pct_off = 0.0;       // 100 (off_c - off_h) / off_c
    bool peak_included = false; // baseline peak >= epsilon
    bool off_included = false;  // baseline had at least one off-peg day
};

// Calm trials (nothing to improve upon) report zero and are excluded from
// the percentage aggregates.
Improvement percent_improvement(const TrialOutcome& current, const TrialOutcome& hybrid,
                                double epsilon);

struct PairedSummary {
    std::string coin_id;
    long trials = 0;
    long included_peak = 0;  // trials entering the %dPeak aggregates
    long included_off = 0;   // trials entering the %dOff aggregates

    double mean_pct_peak = 0.0, sd_pct_peak = 0.0;
    double mean_pct_off = 0.0, sd_pct_off = 0.0;

    double mean_peak_current = 0.0, mean_peak_hybrid = 0.0;
    double p95_peak_current = 0.0, p95_peak_hybrid = 0.0;  // nearest-rank
    double mean_off_current = 0.0, mean_off_hybrid = 0.0;
    double median_off_current = 0.0, median_off_hybrid = 0.0;

    long excluded_peak() const { return trials - included_peak; }
    long excluded_off() const { return trials - included_off; }
};

// Percentage aggregates over included trials (sample SD); regime-level
// peak/off statistics over all trials.
PairedSummary summarize(std::span<const TrialPair> pairs, double epsilon);

struct SweepPoint {
    double fraction = 0.0;
    PairedSummary summary;
};

struct SweepResult {
    std::string parameter;  // "f_beta" | "f_gamma" | "f_delta"
    double extreme_multiplier = 0.0;
    HybridFractions fixed;  // values of the two non-swept fractions
    std::vector<SweepPoint> points;
};

inline const std::vector<double>& default_sweep_grid() {
    static const std::vector<double> grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                          0.6, 0.7, 0.8, 0.9, 1.0};
    return grid;
}

// One full paired simulation per (grid value, M), all under the same seed,
// so results are CRN-paired across grid points too.
std::vector<SweepResult> sweep(const ShockCalibration& cal, const SimConfig& cfg,
                               const std::string& parameter, const std::vector<double>& grid,
                               const HybridFractions& fixed, const std::vector<double>& m_values,
                               double epsilon, int workers = 1);

// Nearest-rank percentile (no interpolation) of an unsorted sample.
double percentile_nearest_rank(std::vector<double> values, double q);
double median(std::vector<double> values);

// Paired t statistic for mean(differences) = 0.
double paired_t_statistic(std::span<const double> differences);

enum class RunOutcome { NoRun, Run };

struct RunEquilibrium {
    double hold_value = 0.0;       // USD per $1 claim if everyone waits
    double fire_sale_value = 0.0;  // USD per $1 claim under early liquidation
    bool insured = false;
    std::vector<RunOutcome> equilibria;

    bool has(RunOutcome outcome) const;
};

// No-run is an equilibrium when waiting returns the full claim; a run is
// self-fulfilling only for uninsured depositors facing a fire-sale value
// below the claim. Insurance removes the run equilibrium.
RunEquilibrium dybvig_equilibria(double hold_value, double fire_sale_value, bool insured);

}  // namespace pegstab
