#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pegstab/econometrics.hpp"
#include "pegstab/series.hpp"

namespace pegstab {

// Scaling of the three shock channels under the hybrid regime.
struct HybridFractions {
    double f_beta = 0.5;
    double f_gamma = 0.1;
    double f_delta = 0.2;

    void validate() const;  // each in [0, 1]
};

// Every simulation parameter, with a provenance note per field so a
// calibration file is self-describing.
struct ShockCalibration {
    std::string coin_id;

    double alpha = 0.0;      // per-day mean-reversion rate
    double beta_sim = 0.0;   // price impact per unit of normalized volume (signed)
    double gamma = 0.0;      // price impact per unit frozen-reserve fraction (signed)
    double delta = 1.0;      // redemption impact magnitude (applied price-depressing)

    double mu_ln_volume = 0.0;
    double sigma_ln_volume = 0.0;
    double volume_mean = 0.0;  // V-bar, USD
    double volume_p95 = 0.0;   // V^95, USD (nearest-rank)

    double rho = 0.0;     // multi-year failure share
    double p_base = 0.0;  // daily baseline failure probability
    double p_red = 0.001; // daily mass-redemption probability

    double sigma_eps = 0.0;
    double mktcap_mean = 0.0;
    std::vector<double> mktcap_path;  // optional historical replay

    std::map<std::string, std::string> provenance;

    void validate() const;
    void note(const std::string& field, const std::string& origin);
};

struct VolumeFit {
    double mu_ln = 0.0;
    double sigma_ln = 0.0;
    double mean = 0.0;
    double p95 = 0.0;
    long excluded_nonpositive = 0;
};

// mu/sigma of ln V over strictly positive volumes, arithmetic mean, and the
// nearest-rank 95th percentile. Requires >= 30 positive observations and a
// non-degenerate spread.
VolumeFit fit_volume_lognormal(const CoinSeries& series);

// rho = sum(failures) / sum(total banks); p_base = 1 - (1 - rho)^(1/365).
std::pair<double, double> bank_failure_probability(const BankFailureTable& table);

// gamma = (dP_obs - beta_sim * V_event / v_bar) / (frozen / base).
double calibrate_gamma_usdc(const CoinSeries& series, const ShockCalibration& cal,
                            Date event_date, double frozen_usd, double base_usd);

// gamma = reference_drop / assumed_frozen_fraction.
double calibrate_gamma_generic(double assumed_frozen_fraction, double reference_drop);

// Deepest drop (min price - 1) within [event_date, event_date + window_days].
double event_window_drop(const CoinSeries& series, Date event_date, int window_days = 3);

// alpha = 1 - phi from the lag-1 deviation coefficient; beta_sim re-scales
// the raw-USD volume coefficient onto normalized volume: b_vol * v_bar.
std::pair<double, double> derive_alpha_beta(const OlsResult& ols,
                                            const std::string& lag_dev_name,
                                            const std::string& volume_name, double v_bar);

// Std of one-step residuals r_t = (P_{t+1} - P_t) - alpha * (1 - P_t).
double estimate_noise(const CoinSeries& series, double alpha);

struct SvbEventConfig {
    Date event_date = Date::from_ymd(2023, 3, 10);
    double frozen_usd = 3.3e9;
    double base_usd = 56.41e9;
};

struct CalibrationOptions {
    SvbEventConfig svb;
    double generic_frozen_fraction = 0.01;
    int event_window_days = 3;
    double p_red = 0.001;
    double delta = 1.0;
    std::optional<double> alpha_override;
    std::optional<double> sigma_eps_override;
    bool store_mktcap_path = false;
};

// Full per-coin calibration from data: lognormal volume fit, failure
// probabilities, Table-4-style OLS for (alpha, beta), the reserve gamma
// (SVB route for the coin holding the event, generic otherwise), and the
// residual noise scale.
ShockCalibration calibrate_coin(const CoinSeries& series, const OlsResult& table4_fit,
                                const std::string& lag_dev_name, const std::string& volume_name,
                                const BankFailureTable& failures, bool svb_route,
                                const CalibrationOptions& options);

}  // namespace pegstab
