#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pegstab/calibration.hpp"

namespace pegstab {

enum class Regime { Current, Hybrid };
enum class MktCapMode { Mean, Historical };

struct SimConfig {
    int days = 1998;       // T; price path runs P_0..P_T
    int trials = 20000;    // N
    std::uint64_t seed = 42;
    double extreme_multiplier = 100.0;  // M
    double off_peg_tolerance = 0.01;
    HybridFractions fractions;
    bool volume_enabled = true;
    bool reserve_enabled = true;
    bool redemption_enabled = true;
    bool noise_enabled = true;
    double price_floor = 0.0;
    MktCapMode mktcap_mode = MktCapMode::Mean;

    void validate() const;
};

// One day's shock realizations, shared verbatim by both regimes.
struct DailyShocks {
    double volume = 0.0;            // V_t, USD; always drawn
    bool failure_occurred = false;
    double frozen_fraction = 0.0;   // L_t in [0, 1] after clamping
    bool redemption_occurred = false;
    double redemption_usd = 0.0;    // R_t
    double noise = 0.0;             // eps_t
};

struct TrialOutcome {
    Regime regime = Regime::Current;
    double peak_dev = 0.0;  // max |P_t - 1| over t = 0..T
    int off_peg_days = 0;   // days with |P_t - 1| > tolerance
    int clamped_days = 0;   // steps that hit the price floor
};

struct TrialPair {
    TrialOutcome current;
    TrialOutcome hybrid;
};

struct EffectiveParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

// Shock-channel substream indices; the per-day draw order is fixed.
enum Channel : std::uint64_t {
    kChannelVolume = 0,
    kChannelFailureFlag = 1,
    kChannelFrozenFraction = 2,
    kChannelRedemptionFlag = 3,
    kChannelRedemptionSize = 4,
    kChannelNoise = 5,
};

// Pure function of (seed, trial, day): every channel draws from its own
// substream, so skipping a disabled channel never shifts another's numbers.
DailyShocks draw_daily_shocks(const ShockCalibration& cal, const SimConfig& cfg,
                              std::uint64_t trial, std::uint64_t day);

// P_{t+1} = P_t + alpha (1 - P_t) + beta V_t/V-bar + gamma L_t
//           - delta R_t/MktCap_t + eps_t, clamped at the price floor.
// gamma is calibrated negative and delta's positive magnitude enters with a
// negative sign, so both shocks depress the peg. `clamped` increments when
// the floor binds.
double step_price(double price, const DailyShocks& shocks, const EffectiveParams& params,
                  double mktcap, double volume_mean, double price_floor, int& clamped);

// Peak deviation and off-peg day count over a full path.
TrialOutcome outcome_metrics(const std::vector<double>& path, double tolerance, Regime regime);

// One shock sequence drives both regimes (common random numbers); hybrid
// runs with (f_beta beta, f_gamma gamma, f_delta delta).
TrialPair run_trial_pair(const ShockCalibration& cal, const SimConfig& cfg, int trial_index);

// All trials, deterministic for a fixed seed regardless of worker count.
std::vector<TrialPair> run_simulation(const ShockCalibration& cal, const SimConfig& cfg,
                                      int workers = 1);

const char* regime_name(Regime regime);

}  // namespace pegstab
